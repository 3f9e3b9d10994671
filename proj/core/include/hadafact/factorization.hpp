#pragma once

// Constructive Hadamard factorization on a star-convex domain: for smooth
// f and an anchor a, the factors
//
//   g_k(x) = integral_0^1 (d_k f)(a + t(x - a)) dt
//
// satisfy f(x) = f(a) + <g(x), x - a>. Factorizations nest: applying the
// same construction to a factor g_j (differentiating under the integral
// sign) yields second-level factors with g_j(x) = g_j(a) + sum_k (x_k -
// a_k) g_jk(x), and so on. A chain of m refactorings is evaluated as an
// (m+1)-fold product-grid quadrature whose level-l variable carries the
// accumulated weight t_l^(m+1-l) from differentiation under the integral
// sign.

#include <vector>

#include "hadafact/expr.hpp"
#include "hadafact/quadrature.hpp"
#include "hadafact/space.hpp"

namespace hadafact {

class HadamardFactorization {
public:
    /// First-order factor family of f anchored at a. Throws
    /// std::domain_error when a is outside the domain.
    HadamardFactorization(SmoothExpr f, HVector anchor, StarDomain domain,
                          QuadratureSpec quad = {});

    const SmoothExpr& function() const { return f_; }
    const HVector& anchor() const { return anchor_; }
    const StarDomain& domain() const { return domain_; }
    const QuadratureSpec& quadrature() const { return quad_; }
    const std::vector<int>& path() const { return path_; }
    /// Support of the mixed partial this level factorizes.
    const Support& support() const { return support_; }

    /// Value of the k-th factor at x. Exactly 0 when the mixed partial
    /// d_k of this level vanishes identically (in particular for k outside
    /// the support). Throws std::domain_error when x is outside the domain.
    double factor(int k, const HVector& x) const;

    /// All factors assembled as a vector sized to the support.
    HVector factor_vector(const HVector& x) const;

    /// Value at the anchor of the function this level factorizes
    /// (f itself for an empty path). Exact up to quadrature weight sums.
    double value_at_anchor() const;

    /// value_at_anchor() + <factor_vector(x), x - anchor>. For an empty
    /// path this reproduces f(x) up to quadrature error; for a refactored
    /// family it reproduces the parent factor g_path(x).
    double reconstruct(const HVector& x) const;

    /// Factorization of the k-th factor about the same anchor (path
    /// extended by k). Throws std::domain_error when k is outside
    /// support(f).
    HadamardFactorization refactor(int k) const;

private:
    HadamardFactorization(SmoothExpr f, HVector anchor, StarDomain domain, QuadratureSpec quad,
                          std::vector<int> path);

    void check_in_domain(const HVector& x, const char* what) const;

    SmoothExpr f_;
    HVector anchor_;
    StarDomain domain_;
    QuadratureSpec quad_;
    std::vector<int> path_;
    SmoothExpr base_;  // mixed partial d_{path_m} ... d_{path_1} f
    Support support_;  // support of base_
};

/// Theorem-style entry point: the first-order family {g_k} of f at a.
HadamardFactorization decompose(SmoothExpr f, HVector anchor, StarDomain domain = {},
                                QuadratureSpec quad = {});

}  // namespace hadafact
