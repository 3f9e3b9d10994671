#pragma once

// Truncated model of a real separable Hilbert space: vectors are finite
// coefficient lists against the orthonormal basis (u_k), and interoperate
// by implicit zero-padding. Coordinates are 1-based throughout the public
// API, matching the x_k notation of the DSL.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace hadafact {

/// Global cap on vector dimension. Bounds the cost of nested
/// factorizations; raise it before building in higher dimensions.
int dim_cap();
void set_dim_cap(int cap);

class HVector {
public:
    HVector() = default;
    explicit HVector(std::vector<double> coeffs);
    HVector(std::initializer_list<double> coeffs);

    /// Zero vector of the given dimension.
    static HVector zeros(int dim);
    /// The basis vector u_k (1-based).
    static HVector unit(int k);

    int dim() const { return static_cast<int>(coeffs_.size()); }
    const std::vector<double>& coeffs() const { return coeffs_; }

    /// Coefficient <x, u_k> for 1-based k; 0 beyond dim.
    double coord(int k) const;

    /// Mathematical (zero-padded) equality.
    friend bool operator==(const HVector& a, const HVector& b);

    friend HVector operator+(const HVector& a, const HVector& b);
    friend HVector operator-(const HVector& a, const HVector& b);
    friend HVector operator*(double c, const HVector& v);
    HVector operator-() const;

private:
    std::vector<double> coeffs_;
};

/// <u, v> over the zero-padded common dimension.
double inner(const HVector& u, const HVector& v);

/// Canonical norm sqrt(<v, v>).
double norm(const HVector& v);

/// a + t*(x - a). Throws std::domain_error unless 0 <= t <= 1.
HVector segment_point(const HVector& a, const HVector& x, double t);

struct WholeSpace {};

struct Ball {
    HVector center;
    double radius = 1.0;  // must be > 0
};

/// Star-convex domain: the whole space or an open ball. Both are convex,
/// hence star-convex about any of their points.
class StarDomain {
public:
    StarDomain() : kind_(WholeSpace{}) {}
    StarDomain(WholeSpace w) : kind_(w) {}
    StarDomain(Ball b);

    static StarDomain whole_space() { return StarDomain(WholeSpace{}); }
    static StarDomain ball(HVector center, double radius);

    bool is_whole_space() const { return std::holds_alternative<WholeSpace>(kind_); }
    const Ball* as_ball() const { return std::get_if<Ball>(&kind_); }

private:
    std::variant<WholeSpace, Ball> kind_;
};

/// Open membership test: balls exclude their boundary.
bool contains(const StarDomain& domain, const HVector& x);

}  // namespace hadafact
