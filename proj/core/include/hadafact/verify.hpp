#pragma once

// Seeded property-check harness. Each check samples a configured number
// of points, measures the worst residual of one identity, and reports it
// in a machine-readable record. Runs are deterministic functions of the
// configuration, including the worst-case fields.

#include <cstdint>
#include <string>
#include <vector>

#include "hadafact/expr.hpp"
#include "hadafact/quadrature.hpp"
#include "hadafact/space.hpp"

namespace hadafact {

struct CheckConfig {
    std::uint64_t seed = 42;
    int samples = 200;
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    double fd_step = 1e-5;
    int dims = 8;
    QuadratureSpec quad{32};
};

struct WorstCase {
    std::string input;  // re-evaluable description of the worst sample
    double residual = 0.0;
};

struct CheckReport {
    std::string name;
    bool passed = false;
    WorstCase worst_case;
    long long samples_run = 0;

    /// One JSON object, no trailing newline.
    std::string to_json() const;
    static CheckReport from_json(std::string_view line);
};

bool all_passed(const std::vector<CheckReport>& reports);
std::string to_json_lines(const std::vector<CheckReport>& reports);

/// Deterministic sample stream. Wraps a fixed 64-bit generator with
/// explicit float construction so identical seeds give identical samples
/// everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    double uniform01();  // [0, 1)
    double uniform(double lo, double hi);
    double normal();
    /// Uniform in the ball via direction-radius parameterization
    /// (gaussian direction, radius = R * u^(1/dims)); rejection-free.
    HVector in_ball(const HVector& center, double radius, int dims);
    /// Uniform on the unit sphere of the given coordinates.
    HVector unit_direction(const std::vector<int>& coords, int fallback_dims);

private:
    std::uint64_t state_;
};

std::uint64_t fnv1a(std::string_view text);

struct FamilyMember {
    std::string name;  // DSL text
    SmoothExpr f;
    bool polynomial = false;
    HVector anchor;  // default anchor used by the suite
};

/// The built-in sample family: constants, coordinates, linear and
/// quadratic forms, mixed monomials, sin/cos/exp compositions and
/// products, all over at most 8 coordinates.
const std::vector<FamilyMember>& standard_family();

// --- checks -------------------------------------------------------------

/// Max |f(a) + <g(x), x-a> - f(x)| over sampled x; per-point tolerance
/// abs_tol + rel_tol*|f(x)|. Samples uniformly in U when U is a ball,
/// else in a radius-4 ball about the anchor.
CheckReport check_hadamard_identity(const SmoothExpr& f, const HVector& anchor,
                                    const StarDomain& domain, const CheckConfig& cfg,
                                    std::string name = "hadamard-identity");

/// Directional derivatives against central finite differences with step
/// cfg.fd_step. The pass threshold is the central-difference accuracy
/// floor (1e-6 relative), not cfg.rel_tol.
CheckReport check_gateaux_frechet(const SmoothExpr& f, const CheckConfig& cfg,
                                  std::string name = "gateaux-frechet");

/// Constant, scalar-multiple, sum, and product rules, restated on the
/// eps-parts of dual evaluations at sampled x + eps*y.
CheckReport check_rules(const SmoothExpr& f, const SmoothExpr& g, const CheckConfig& cfg,
                        std::string name = "derivative-rules");

/// Dual evaluation is multiplicative: eval(f*g, w) equals
/// eval(f, w)*eval(g, w); the unit maps to 1 + eps*0 exactly.
CheckReport check_psi_homomorphism(const SmoothExpr& f, const SmoothExpr& g,
                                   const CheckConfig& cfg,
                                   std::string name = "psi-homomorphism");

/// Fits the decay exponent of the order-n Taylor remainder along halving
/// steps; passes when the exponent is at least n+1-0.1, or when the
/// remainder is below the 1e-13 rounding floor throughout (exact case).
CheckReport check_taylor_order(const SmoothExpr& f, const HVector& anchor, int order,
                               const CheckConfig& cfg, std::string name = "taylor-order");

/// Stage 1 probes the derivative tensors of order <= k on the
/// corresponding spans of basis vectors (and f itself on every axis);
/// stage 2 reconstructs f from degree-(k+1) remainder factors at 0.
CheckReport check_subspace_vanishing(const SmoothExpr& f, int k, const CheckConfig& cfg,
                                     std::string name = "subspace-vanishing");

/// Every check over the built-in family, in a fixed order, with per-check
/// seeds derived from cfg.seed and the check name.
std::vector<CheckReport> run_suite(const CheckConfig& cfg);

}  // namespace hadafact
