#pragma once

// Taylor expansions with factored remainders. Derivative data at the
// anchor comes from exact symbolic mixed partials; the degree-(n+1)
// remainder is either evaluated directly (f minus the partial sum) or
// reconstructed from nested factorization chains, one evaluator per
// multi-index.

#include <map>
#include <optional>
#include <vector>

#include "hadafact/errors.hpp"
#include "hadafact/expr.hpp"
#include "hadafact/factorization.hpp"

namespace hadafact {

/// Monomial exponent pattern: strictly increasing coordinate indices with
/// exponents >= 1. The empty multi-index has degree 0.
class MultiIndex {
public:
    MultiIndex() = default;
    /// Validates ordering and positivity.
    explicit MultiIndex(std::vector<std::pair<int, int>> entries);
    /// Multiset of coordinate indices, e.g. {1,3,1} -> x1^2*x3.
    static MultiIndex from_tuple(std::vector<int> indices);

    const std::vector<std::pair<int, int>>& entries() const { return entries_; }
    int degree() const;
    /// alpha! = product of exponent factorials.
    double factorial() const;
    /// Number of distinct orderings of the underlying tuple,
    /// degree()! / alpha!.
    double tuple_count() const;
    /// (x - a)^alpha.
    double monomial(const HVector& x, const HVector& a) const;

    /// Monomial rendering, e.g. "x1^2*x3"; "1" for the empty index.
    std::string str() const;

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
        return a.entries_ == b.entries_;
    }
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
        return a.entries_ < b.entries_;
    }

private:
    std::vector<std::pair<int, int>> entries_;  // (index, exponent)
};

/// Derivative data of f at the anchor through the given order. The
/// degree-m terms sum to (1/m!) times the m-th derivative tensor applied
/// to (x - a, ..., x - a); zero coefficients are omitted.
class TaylorExpansion {
public:
    TaylorExpansion(SmoothExpr f, HVector anchor, int order);

    const HVector& anchor() const { return anchor_; }
    int order() const { return order_; }
    const SmoothExpr& function() const { return f_; }
    const std::map<MultiIndex, double>& coefficients() const { return coeff_; }

    /// Sum of all terms of degree <= order at x.
    double term_sum(const HVector& x) const;
    /// f(x) - term_sum(x).
    double remainder(const HVector& x) const;

private:
    SmoothExpr f_;
    HVector anchor_;
    int order_;
    std::map<MultiIndex, double> coeff_;
};

TaylorExpansion taylor(SmoothExpr f, HVector anchor, int order);

/// Factored form of the degree-(n+1) remainder: one evaluator g_alpha per
/// multi-index of degree n+1 over the support, built from (n+1)-fold
/// nested factorization chains; chains sharing a multi-index are merged.
/// sum_alpha (x-a)^alpha g_alpha(x) equals the direct remainder up to
/// quadrature error.
class RemainderFactors {
public:
    RemainderFactors(SmoothExpr f, HVector anchor, int order, QuadratureSpec quad,
                     std::size_t chain_cap = default_chain_cap);

    static constexpr std::size_t default_chain_cap = 4096;

    const HVector& anchor() const { return anchor_; }
    int order() const { return order_; }
    bool empty() const { return chains_.empty(); }
    std::size_t size() const { return chains_.size(); }

    std::vector<MultiIndex> multi_indices() const;
    /// g_alpha(x); throws std::out_of_range for an unknown multi-index.
    double factor(const MultiIndex& alpha, const HVector& x) const;
    /// sum_alpha (x - a)^alpha g_alpha(x).
    double reconstruct(const HVector& x) const;

private:
    struct Chain {
        HadamardFactorization nested;  // path = all but the last tuple entry
        int free_index;                // last tuple entry
        double count;                  // orderings merged into this factor
    };

    HVector anchor_;
    int order_;
    std::map<MultiIndex, Chain> chains_;
};

RemainderFactors remainder_factors(SmoothExpr f, HVector anchor, int order,
                                   QuadratureSpec quad = {},
                                   std::size_t chain_cap = RemainderFactors::default_chain_cap);

}  // namespace hadafact
