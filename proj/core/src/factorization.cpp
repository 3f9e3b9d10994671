#include "hadafact/factorization.hpp"

#include <cmath>

namespace hadafact {

namespace {

SmoothExpr mixed_partial(const SmoothExpr& f, const std::vector<int>& path) {
    SmoothExpr d = f;
    for (int k : path) d = d.partial(k);
    return d;
}

}  // namespace

HadamardFactorization::HadamardFactorization(SmoothExpr f, HVector anchor, StarDomain domain,
                                             QuadratureSpec quad)
    : HadamardFactorization(std::move(f), std::move(anchor), std::move(domain), quad, {}) {}

HadamardFactorization::HadamardFactorization(SmoothExpr f, HVector anchor, StarDomain domain,
                                             QuadratureSpec quad, std::vector<int> path)
    : f_(std::move(f)),
      anchor_(std::move(anchor)),
      domain_(std::move(domain)),
      quad_(quad),
      path_(std::move(path)),
      base_(mixed_partial(f_, path_)),
      support_(base_.support()) {
    if (quad_.nodes < 1) throw std::invalid_argument("quadrature needs at least one node");
    if (!contains(domain_, anchor_))
        throw std::domain_error("anchor lies outside the star-convex domain");
}

void HadamardFactorization::check_in_domain(const HVector& x, const char* what) const {
    if (!contains(domain_, x))
        throw std::domain_error(std::string(what) + " lies outside the star-convex domain");
}

double HadamardFactorization::factor(int k, const HVector& x) const {
    if (k < 1) throw std::invalid_argument("factor index must be >= 1");
    check_in_domain(x, "evaluation point");
    SmoothExpr integrand = base_.partial(k);
    if (integrand.is_constant(0.0)) return 0.0;

    const QuadratureRule& rule = gauss_legendre_01(quad_.nodes);
    const int levels = static_cast<int>(path_.size()) + 1;
    const HVector delta = x - anchor_;

    // Nested product-grid quadrature. Level l in [1, levels] integrates
    // t_l; levels before the last carry the extra factor t_l^(levels - l)
    // accumulated by differentiation under the integral sign, and the
    // integrand is evaluated at a + (t_1 ... t_levels)(x - a).
    double total = 0.0;
    std::vector<int> idx(static_cast<std::size_t>(levels), 0);
    std::vector<double> tprod(static_cast<std::size_t>(levels));   // running node products
    std::vector<double> wprod(static_cast<std::size_t>(levels));   // running weights
    int l = 0;
    while (l >= 0) {
        if (idx[static_cast<std::size_t>(l)] == quad_.nodes) {
            idx[static_cast<std::size_t>(l)] = 0;
            --l;
            if (l >= 0) ++idx[static_cast<std::size_t>(l)];
            continue;
        }
        int i = idx[static_cast<std::size_t>(l)];
        double t = rule.points[static_cast<std::size_t>(i)];
        double w = rule.weights[static_cast<std::size_t>(i)];
        int exponent = levels - 1 - l;  // t-factor from differentiation steps
        for (int e = 0; e < exponent; ++e) w *= t;
        double prev_t = l == 0 ? 1.0 : tprod[static_cast<std::size_t>(l - 1)];
        double prev_w = l == 0 ? 1.0 : wprod[static_cast<std::size_t>(l - 1)];
        tprod[static_cast<std::size_t>(l)] = prev_t * t;
        wprod[static_cast<std::size_t>(l)] = prev_w * w;
        if (l == levels - 1) {
            double tau = tprod[static_cast<std::size_t>(l)];
            total += wprod[static_cast<std::size_t>(l)] *
                     integrand.eval(anchor_ + tau * delta);
            ++idx[static_cast<std::size_t>(l)];
        } else {
            ++l;
        }
    }
    return total;
}

HVector HadamardFactorization::factor_vector(const HVector& x) const {
    check_in_domain(x, "evaluation point");
    std::vector<double> g(static_cast<std::size_t>(support_.max_index()), 0.0);
    for (int k : support_.indices) g[static_cast<std::size_t>(k - 1)] = factor(k, x);
    return HVector(std::move(g));
}

double HadamardFactorization::value_at_anchor() const {
    // g_{p_1...p_m}(a) = (d^m f)(a) / m!
    double v = base_.eval(anchor_);
    for (std::size_t m = 2; m <= path_.size(); ++m) v /= static_cast<double>(m);
    return v;
}

double HadamardFactorization::reconstruct(const HVector& x) const {
    return value_at_anchor() + inner(factor_vector(x), x - anchor_);
}

HadamardFactorization HadamardFactorization::refactor(int k) const {
    if (!f_.support().contains(k))
        throw std::domain_error("refactor index " + std::to_string(k) +
                                " is outside the support of f");
    std::vector<int> path = path_;
    path.push_back(k);
    return HadamardFactorization(f_, anchor_, domain_, quad_, std::move(path));
}

HadamardFactorization decompose(SmoothExpr f, HVector anchor, StarDomain domain,
                                QuadratureSpec quad) {
    return HadamardFactorization(std::move(f), std::move(anchor), std::move(domain), quad);
}

}  // namespace hadafact
