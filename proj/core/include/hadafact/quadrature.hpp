#pragma once

// Fixed-node Gauss-Legendre quadrature on [0, 1]. Nodes are deterministic
// for a given count, integrate polynomials of degree <= 2n-1 exactly, and
// are cached process-wide.

#include <vector>

#include "hadafact/errors.hpp"

namespace hadafact {

struct QuadratureSpec {
    int nodes = 32;
};

struct QuadratureRule {
    std::vector<double> points;   // in (0, 1), ascending
    std::vector<double> weights;  // positive, summing to 1
};

/// Gauss-Legendre rule with n nodes mapped to [0, 1]. Throws
/// std::invalid_argument for n < 1. Thread-safe; rules are cached.
const QuadratureRule& gauss_legendre_01(int n);

}  // namespace hadafact
