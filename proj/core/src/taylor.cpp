#include "hadafact/taylor.hpp"

#include <algorithm>
#include <cmath>

namespace hadafact {

MultiIndex::MultiIndex(std::vector<std::pair<int, int>> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].first < 1)
            throw std::invalid_argument("multi-index coordinate must be >= 1");
        if (entries_[i].second < 1)
            throw std::invalid_argument("multi-index exponent must be >= 1");
        if (i > 0 && entries_[i - 1].first >= entries_[i].first)
            throw std::invalid_argument("multi-index coordinates must be strictly increasing");
    }
}

MultiIndex MultiIndex::from_tuple(std::vector<int> indices) {
    std::sort(indices.begin(), indices.end());
    std::vector<std::pair<int, int>> entries;
    for (int k : indices) {
        if (!entries.empty() && entries.back().first == k)
            ++entries.back().second;
        else
            entries.emplace_back(k, 1);
    }
    return MultiIndex(std::move(entries));
}

int MultiIndex::degree() const {
    int d = 0;
    for (const auto& [k, e] : entries_) d += e;
    return d;
}

namespace {
double factorial_of(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}
}  // namespace

double MultiIndex::factorial() const {
    double f = 1.0;
    for (const auto& [k, e] : entries_) f *= factorial_of(e);
    return f;
}

double MultiIndex::tuple_count() const { return factorial_of(degree()) / factorial(); }

double MultiIndex::monomial(const HVector& x, const HVector& a) const {
    double m = 1.0;
    for (const auto& [k, e] : entries_) {
        double base = x.coord(k) - a.coord(k);
        for (int i = 0; i < e; ++i) m *= base;
    }
    return m;
}

std::string MultiIndex::str() const {
    if (entries_.empty()) return "1";
    std::string out;
    for (const auto& [k, e] : entries_) {
        if (!out.empty()) out += "*";
        out += "x" + std::to_string(k);
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

namespace {

// Walk all exponent assignments of total degree <= order over the support,
// differentiating incrementally, and record d^alpha f(a) / alpha! for each.
void enumerate_coefficients(const SmoothExpr& g, const std::vector<int>& support, std::size_t pos,
                            int remaining, std::vector<std::pair<int, int>>& entries,
                            const HVector& anchor, std::map<MultiIndex, double>& out) {
    if (g.is_constant(0.0)) return;
    if (pos == support.size() || remaining == 0) {
        MultiIndex alpha{entries};
        double value = g.eval(anchor) / alpha.factorial();
        if (value != 0.0) out.emplace(std::move(alpha), value);
        return;
    }
    SmoothExpr d = g;
    int k = support[pos];
    for (int e = 0; e <= remaining; ++e) {
        if (e > 0) {
            d = d.partial(k);
            if (d.is_constant(0.0)) return;  // higher exponents vanish too
            entries.emplace_back(k, e);
        }
        enumerate_coefficients(d, support, pos + 1, remaining - e, entries, anchor, out);
        if (e > 0) entries.pop_back();
    }
}

}  // namespace

TaylorExpansion::TaylorExpansion(SmoothExpr f, HVector anchor, int order)
    : f_(std::move(f)), anchor_(std::move(anchor)), order_(order) {
    if (order < 0) throw std::invalid_argument("expansion order must be >= 0");
    std::vector<int> support = f_.support().indices;
    std::vector<std::pair<int, int>> entries;
    enumerate_coefficients(f_, support, 0, order_, entries, anchor_, coeff_);
}

double TaylorExpansion::term_sum(const HVector& x) const {
    double s = 0.0;
    for (const auto& [alpha, c] : coeff_) s += c * alpha.monomial(x, anchor_);
    return s;
}

double TaylorExpansion::remainder(const HVector& x) const { return f_.eval(x) - term_sum(x); }

TaylorExpansion taylor(SmoothExpr f, HVector anchor, int order) {
    return TaylorExpansion(std::move(f), std::move(anchor), order);
}

namespace {

// Multisets of the given size over the sorted support, as non-decreasing
// tuples.
void enumerate_multisets(const std::vector<int>& support, std::size_t pos, int remaining,
                         std::vector<int>& tuple, const std::function<void()>& emit) {
    if (remaining == 0) {
        emit();
        return;
    }
    if (pos == support.size()) return;
    // exponent of support[pos] from high to low keeps tuples sorted
    for (int e = remaining; e >= 0; --e) {
        for (int i = 0; i < e; ++i) tuple.push_back(support[pos]);
        enumerate_multisets(support, pos + 1, remaining - e, tuple, emit);
        for (int i = 0; i < e; ++i) tuple.pop_back();
    }
}

}  // namespace

RemainderFactors::RemainderFactors(SmoothExpr f, HVector anchor, int order, QuadratureSpec quad,
                                   std::size_t chain_cap)
    : anchor_(anchor), order_(order) {
    if (order < 0) throw std::invalid_argument("expansion order must be >= 0");
    std::vector<int> support = f.support().indices;
    if (!support.empty()) {
        double raw_chains = std::pow(static_cast<double>(support.size()),
                                     static_cast<double>(order + 1));
        if (raw_chains > static_cast<double>(chain_cap))
            throw ResourceLimitError(
                "remainder factorization of order " + std::to_string(order) + " over " +
                std::to_string(support.size()) + " coordinates needs " +
                std::to_string(static_cast<long long>(raw_chains)) +
                " evaluator chains; cap is " + std::to_string(chain_cap));
    }

    std::vector<int> tuple;
    enumerate_multisets(support, 0, order + 1, tuple, [&] {
        MultiIndex alpha = MultiIndex::from_tuple(tuple);
        double count = alpha.tuple_count();
        int free_index = tuple.back();
        HadamardFactorization nested = decompose(f, anchor_, StarDomain{}, quad);
        for (std::size_t i = 0; i + 1 < tuple.size(); ++i) nested = nested.refactor(tuple[i]);
        chains_.emplace(std::move(alpha), Chain{std::move(nested), free_index, count});
    });
}

std::vector<MultiIndex> RemainderFactors::multi_indices() const {
    std::vector<MultiIndex> out;
    out.reserve(chains_.size());
    for (const auto& [alpha, chain] : chains_) out.push_back(alpha);
    return out;
}

double RemainderFactors::factor(const MultiIndex& alpha, const HVector& x) const {
    auto it = chains_.find(alpha);
    if (it == chains_.end())
        throw std::out_of_range("no remainder factor for multi-index " + alpha.str());
    const Chain& c = it->second;
    // Orderings of one multiset share weights and (commuting) mixed
    // partials, so the merged sum is the ordering count times any
    // representative chain.
    return c.count * c.nested.factor(c.free_index, x);
}

double RemainderFactors::reconstruct(const HVector& x) const {
    double s = 0.0;
    for (const auto& [alpha, chain] : chains_) s += alpha.monomial(x, anchor_) * factor(alpha, x);
    return s;
}

RemainderFactors remainder_factors(SmoothExpr f, HVector anchor, int order, QuadratureSpec quad,
                                   std::size_t chain_cap) {
    return RemainderFactors(std::move(f), std::move(anchor), order, quad, chain_cap);
}

}  // namespace hadafact
