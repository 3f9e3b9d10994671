#include "hadafact/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace hadafact {

namespace {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 1; k < n; ++k)
        std::tie(p0, p1) = std::pair(p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1));
    double deriv = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, deriv};
}

QuadratureRule compute_rule(int n) {
    QuadratureRule rule;
    rule.points.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    // Newton iteration from the Chebyshev-like initial guesses; roots come
    // in +/- pairs, so solve the lower half and mirror.
    int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = -std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double p, dp;
        for (int it = 0; it < 100; ++it) {
            std::tie(p, dp) = legendre(n, x);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        if (n % 2 == 1 && i == half - 1) x = 0.0;  // middle root is exact
        std::tie(p, dp) = legendre(n, x);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map [-1, 1] -> [0, 1]
        rule.points[static_cast<std::size_t>(i)] = 0.5 * (1.0 + x);
        rule.points[static_cast<std::size_t>(n - 1 - i)] = 0.5 * (1.0 - x);
        rule.weights[static_cast<std::size_t>(i)] = 0.5 * w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = 0.5 * w;
    }
    return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre_01(int n) {
    if (n < 1) throw std::invalid_argument("quadrature needs at least one node");
    static std::mutex mu;
    static std::map<int, QuadratureRule> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

}  // namespace hadafact
