#pragma once

// Dual-number arithmetic: R[eps] and H[eps] with eps != 0 and eps^2 = 0.
// Multiplication drops the eps^2 term identically, so evaluating a smooth
// expression at x + eps*y produces f(x) + eps*<grad f(x), y> in one pass
// (first-order forward mode).

#include <cmath>

#include "hadafact/expr.hpp"
#include "hadafact/space.hpp"

namespace hadafact {

/// Element a + eps*b of R[eps].
struct DualScalar {
    double re = 0.0;   // standard part a
    double eps = 0.0;  // infinitesimal coefficient b

    constexpr DualScalar() = default;
    constexpr DualScalar(double a, double b) : re(a), eps(b) {}
    constexpr explicit DualScalar(double a) : re(a), eps(0.0) {}

    friend constexpr bool operator==(const DualScalar& p, const DualScalar& q) {
        return p.re == q.re && p.eps == q.eps;
    }

    friend constexpr DualScalar operator+(const DualScalar& p, const DualScalar& q) {
        return {p.re + q.re, p.eps + q.eps};
    }
    friend constexpr DualScalar operator-(const DualScalar& p, const DualScalar& q) {
        return {p.re - q.re, p.eps - q.eps};
    }
    constexpr DualScalar operator-() const { return {-re, -eps}; }

    // (a + eps b)(c + eps d) = ac + eps(ad + bc); the eps^2 term vanishes.
    friend constexpr DualScalar operator*(const DualScalar& p, const DualScalar& q) {
        return {p.re * q.re, p.re * q.eps + p.eps * q.re};
    }
    friend constexpr DualScalar operator*(double c, const DualScalar& p) {
        return {c * p.re, c * p.eps};
    }

    /// (a + eps b)^{-1} = a^{-1} - eps b a^{-2}. Elements with zero
    /// standard part are not invertible in R[eps].
    DualScalar inverse() const {
        if (re == 0.0)
            throw std::domain_error("dual scalar with zero standard part is not invertible");
        double inv = 1.0 / re;
        return {inv, -eps * inv * inv};
    }

    friend DualScalar operator/(const DualScalar& p, const DualScalar& q) {
        return p * q.inverse();
    }
};

/// prim(a + eps b) = prim(a) + eps * b * prim'(a).
inline DualScalar apply_prim(Prim p, const DualScalar& d) {
    switch (p) {
        case Prim::Sin: return {std::sin(d.re), d.eps * std::cos(d.re)};
        case Prim::Cos: return {std::cos(d.re), -d.eps * std::sin(d.re)};
        case Prim::Exp: {
            double e = std::exp(d.re);
            return {e, d.eps * e};
        }
    }
    throw std::logic_error("unreachable");
}

/// Element x + eps*y of H[eps].
struct DualVector {
    HVector point;    // x
    HVector tangent;  // y

    DualScalar coord(int k) const { return {point.coord(k), tangent.coord(k)}; }
};

/// Evaluate f at x + eps*y under dual arithmetic. The standard part
/// reproduces eval(f, x) bit for bit (same operations on the re channel);
/// the eps part carries the directional derivative along y.
DualScalar eval(const SmoothExpr& f, const DualVector& arg);

}  // namespace hadafact
