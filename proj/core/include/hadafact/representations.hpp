#pragma once

// Special factored representations of smooth functions:
//
//  - axes_vanishing_factorization: a function vanishing on every
//    coordinate axis is a sum of x_k*x_j times smooth factors, built from
//    second-level factorization chains at 0.
//
//  - two_point_factorization: a function vanishing at two distinct points
//    y and z is a sum of products g_k*h_k with every g_k(y) = 0 and every
//    h_k(z) = 0, built by pulling the function back through an affine map
//    that sends z to 0 and y to u_1 (a scaled Householder reflection).

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "hadafact/expr.hpp"
#include "hadafact/factorization.hpp"

namespace hadafact {

using RealFunction = std::function<double(const HVector&)>;

class AxesFactorization {
public:
    /// Probes |f| on every coordinate axis of its support before
    /// constructing; throws std::domain_error naming the violating axis
    /// and value if any probe exceeds the tolerance.
    AxesFactorization(SmoothExpr f, QuadratureSpec quad = {}, double probe_tol = 1e-9);

    const SmoothExpr& function() const { return f_; }
    const std::vector<int>& indices() const { return support_; }
    std::vector<std::pair<int, int>> pairs() const;

    /// Second-level factor g_kj(x).
    double factor(int k, int j, const HVector& x) const;
    /// sum_{k,j} x_k x_j g_kj(x); equals f(x) up to quadrature error.
    double reconstruct(const HVector& x) const;

private:
    SmoothExpr f_;
    std::vector<int> support_;
    std::map<int, HadamardFactorization> levels_;  // k -> factorization of g_k
};

AxesFactorization axes_vanishing_factorization(SmoothExpr f, QuadratureSpec quad = {},
                                               double probe_tol = 1e-9);

struct TwoPointFactors {
    HVector y;
    HVector z;
    std::vector<RealFunction> g;  // every g[i](y) = 0
    std::vector<RealFunction> h;  // every h[i](z) = 0

    std::size_t size() const { return g.size(); }
    /// sum_i g[i](x) * h[i](x); equals f(x) up to quadrature error and
    /// the residual |f(z)| admitted by the precondition.
    double reconstruct(const HVector& x) const;
};

/// Requires y != z and |f(y)|, |f(z)| <= value_tol; throws
/// std::domain_error otherwise.
TwoPointFactors two_point_factorization(const SmoothExpr& f, const HVector& y, const HVector& z,
                                        QuadratureSpec quad = {}, double value_tol = 1e-9);

}  // namespace hadafact
