#include "hadafact/space.hpp"

#include <atomic>
#include <cmath>

namespace hadafact {

namespace {
std::atomic<int> g_dim_cap{64};

void check_finite(const std::vector<double>& coeffs) {
    for (double c : coeffs) {
        if (!std::isfinite(c))
            throw std::invalid_argument("HVector coefficients must be finite");
    }
}
}  // namespace

int dim_cap() { return g_dim_cap.load(); }

void set_dim_cap(int cap) {
    if (cap < 1) throw std::invalid_argument("dim cap must be >= 1");
    g_dim_cap.store(cap);
}

HVector::HVector(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (dim() > dim_cap())
        throw std::length_error("HVector dimension " + std::to_string(dim()) +
                                " exceeds the global cap " + std::to_string(dim_cap()));
    check_finite(coeffs_);
}

HVector::HVector(std::initializer_list<double> coeffs)
    : HVector(std::vector<double>(coeffs)) {}

HVector HVector::zeros(int dim) {
    if (dim < 0) throw std::invalid_argument("dimension must be >= 0");
    return HVector(std::vector<double>(static_cast<std::size_t>(dim), 0.0));
}

HVector HVector::unit(int k) {
    if (k < 1) throw std::invalid_argument("basis index must be >= 1");
    std::vector<double> c(static_cast<std::size_t>(k), 0.0);
    c.back() = 1.0;
    return HVector(std::move(c));
}

double HVector::coord(int k) const {
    if (k < 1) throw std::invalid_argument("coordinate index must be >= 1");
    if (k > dim()) return 0.0;
    return coeffs_[static_cast<std::size_t>(k - 1)];
}

bool operator==(const HVector& a, const HVector& b) {
    int n = std::max(a.dim(), b.dim());
    for (int k = 1; k <= n; ++k)
        if (a.coord(k) != b.coord(k)) return false;
    return true;
}

HVector operator+(const HVector& a, const HVector& b) {
    int n = std::max(a.dim(), b.dim());
    std::vector<double> c(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) c[static_cast<std::size_t>(k - 1)] = a.coord(k) + b.coord(k);
    return HVector(std::move(c));
}

HVector operator-(const HVector& a, const HVector& b) {
    int n = std::max(a.dim(), b.dim());
    std::vector<double> c(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) c[static_cast<std::size_t>(k - 1)] = a.coord(k) - b.coord(k);
    return HVector(std::move(c));
}

HVector operator*(double c, const HVector& v) {
    std::vector<double> out(v.coeffs());
    for (double& x : out) x *= c;
    return HVector(std::move(out));
}

HVector HVector::operator-() const { return -1.0 * *this; }

double inner(const HVector& u, const HVector& v) {
    int n = std::min(u.dim(), v.dim());
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s += u.coord(k) * v.coord(k);
    return s;
}

double norm(const HVector& v) { return std::sqrt(inner(v, v)); }

HVector segment_point(const HVector& a, const HVector& x, double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("segment parameter t must lie in [0, 1]");
    int n = std::max(a.dim(), x.dim());
    std::vector<double> c(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        double ak = a.coord(k);
        c[static_cast<std::size_t>(k - 1)] = ak + t * (x.coord(k) - ak);
    }
    return HVector(std::move(c));
}

StarDomain::StarDomain(Ball b) : kind_(std::move(b)) {
    const Ball& ball = std::get<Ball>(kind_);
    if (!(ball.radius > 0.0))
        throw std::invalid_argument("ball radius must be positive");
}

StarDomain StarDomain::ball(HVector center, double radius) {
    return StarDomain(Ball{std::move(center), radius});
}

bool contains(const StarDomain& domain, const HVector& x) {
    if (domain.is_whole_space()) return true;
    const Ball* b = domain.as_ball();
    return norm(x - b->center) < b->radius;
}

}  // namespace hadafact
