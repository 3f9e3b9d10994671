// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance is pinned in code next to the check it gates.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "hadafact/dual.hpp"
#include "hadafact/factorization.hpp"
#include "hadafact/parser.hpp"
#include "hadafact/representations.hpp"
#include "hadafact/taylor.hpp"
#include "hadafact/verify.hpp"

using namespace hadafact;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;

    void fail(const std::string& why) {
        passed = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// --- 1. Hadamard identity -----------------------------------------------

Outcome criterion_hadamard_identity() {
    Outcome out;
    double worst = 0.0, worst_poly = 0.0;
    int fn_count = 0, poly_count = 0;
    for (const auto& m : standard_family()) {
        ++fn_count;
        if (m.polynomial) ++poly_count;
        HadamardFactorization fact(m.f, m.anchor, StarDomain::whole_space(), QuadratureSpec{32});
        Rng rng(fnv1a("criterion1/" + m.name) ^ 42);
        for (int s = 0; s < 200; ++s) {
            HVector x = rng.in_ball(m.anchor, 4.0, 8);
            double fx = m.f.eval(x);
            double residual = std::abs(fact.reconstruct(x) - fx);
            if (m.polynomial) {
                worst_poly = std::max(worst_poly, residual);
                if (residual > 1e-13)
                    out.fail(m.name + ": polynomial residual " + fmt(residual) + " > 1e-13");
            } else {
                worst = std::max(worst, residual);
                if (residual > 1e-9 + 1e-9 * std::abs(fx))
                    out.fail(m.name + ": residual " + fmt(residual) + " > 1e-9");
            }
        }
    }
    if (fn_count < 12) out.fail("family has fewer than 12 functions");
    if (out.detail.empty())
        out.detail = std::to_string(fn_count) + " functions (" + std::to_string(poly_count) +
                     " polynomial), 200 pts each; max residual " + fmt(worst) +
                     ", polynomial max " + fmt(worst_poly);
    return out;
}

// --- 2. anchor identities ------------------------------------------------

Outcome criterion_anchor_identities() {
    Outcome out;
    double worst_grad = 0.0, worst_hess = 0.0;
    for (const auto& m : standard_family()) {
        auto support = m.f.support().indices;
        HadamardFactorization first = decompose(m.f, m.anchor);
        for (int k : support) {
            double gk = first.factor(k, m.anchor);
            double dk = m.f.partial(k).eval(m.anchor);
            double r = std::abs(gk - dk);
            worst_grad = std::max(worst_grad, r);
            if (r > 1e-12)
                out.fail(m.name + ": |g_" + std::to_string(k) + "(a) - d_k f(a)| = " + fmt(r));
            HadamardFactorization nested = first.refactor(k);
            for (int j : support) {
                double gkj = nested.factor(j, m.anchor);
                double hess = m.f.partial(k).partial(j).eval(m.anchor);
                double rh = std::abs(2.0 * gkj - hess);
                worst_hess = std::max(worst_hess, rh);
                if (rh > 1e-10)
                    out.fail(m.name + ": |2 g_" + std::to_string(k) + std::to_string(j) +
                             "(a) - hess| = " + fmt(rh));
            }
        }
    }
    if (out.detail.empty())
        out.detail = "max |g_k(a) - grad_k| " + fmt(worst_grad) + " (tol 1e-12), max |2g_kj(a) - hess_kj| " +
                     fmt(worst_hess) + " (tol 1e-10)";
    return out;
}

// --- 3. dual-number contract ---------------------------------------------

Outcome criterion_dual_contract() {
    Outcome out;
    DualScalar eps{0.0, 1.0};
    DualScalar sq = eps * eps;
    if (!(sq.re == 0.0 && sq.eps == 0.0)) out.fail("(0+eps)^2 is not exactly 0+eps*0");

    double worst_sym = 0.0, worst_fd = 0.0;
    const double fd_step = 1e-5;
    for (const auto& m : standard_family()) {
        Rng rng(fnv1a("criterion3/" + m.name) ^ 42);
        for (int s = 0; s < 200 / 16; ++s) {
            HVector x = rng.in_ball(HVector{}, 4.0, 8);
            HVector y = rng.in_ball(HVector{}, 4.0, 8);
            DualScalar value = eval(m.f, DualVector{x, y});
            double symbolic = directional_derivative(m.f, x, y);
            double r = std::abs(value.eps - symbolic) /
                       std::max({1.0, std::abs(value.eps), std::abs(symbolic)});
            worst_sym = std::max(worst_sym, r);
            if (r > 1e-12) out.fail(m.name + ": eps vs symbolic " + fmt(r));
            double fd = (m.f.eval(x + fd_step * y) - m.f.eval(x - fd_step * y)) / (2 * fd_step);
            double rf = std::abs(value.eps - fd) /
                        std::max({1.0, std::abs(value.eps), std::abs(fd)});
            worst_fd = std::max(worst_fd, rf);
            if (rf > 1e-6) out.fail(m.name + ": eps vs central difference " + fmt(rf));
            if (value.re != m.f.eval(x)) out.fail(m.name + ": re channel deviates from eval");
        }
    }
    if (out.detail.empty())
        out.detail = "eps^2 = 0 exact; eps vs symbolic max " + fmt(worst_sym) +
                     " (tol 1e-12), vs central fd max " + fmt(worst_fd) + " (tol 1e-6)";
    return out;
}

// --- 4. derivative rules and multiplicativity ----------------------------

Outcome criterion_rules() {
    Outcome out;
    const auto& family = standard_family();
    DualScalar unit = eval(SmoothExpr::constant(1.0), DualVector{HVector{}, HVector{}});
    if (!(unit == DualScalar{1.0, 0.0})) out.fail("psi(1) != 1");

    double worst = 0.0;
    int samples_total = 0;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const SmoothExpr& f = family[i].f;
        const SmoothExpr& g = family[(i + 3) % family.size()].f;
        SmoothExpr sum = f + g, product = f * g;
        Rng rng(fnv1a("criterion4/" + family[i].name) ^ 42);
        for (int s = 0; s < 12; ++s) {
            ++samples_total;
            HVector x = rng.in_ball(HVector{}, 4.0, 8);
            HVector y = rng.in_ball(HVector{}, 4.0, 8);
            double c = rng.uniform(-2.0, 2.0);
            DualVector w{x, y};
            DualScalar pf = eval(f, w), pg = eval(g, w);

            auto rel = [](double a, double b) {
                return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
            };
            double r = std::abs(eval(SmoothExpr::constant(c), w).eps);
            r = std::max(r, rel(eval(SmoothExpr::scale(c, f), w).eps, c * pf.eps));
            r = std::max(r, rel(eval(sum, w).eps, pf.eps + pg.eps));
            r = std::max(r, rel(eval(product, w).eps, pf.eps * g.eval(x) + f.eval(x) * pg.eps));
            DualScalar lhs = eval(product, w);
            DualScalar rhs = pf * pg;
            r = std::max({r, rel(lhs.re, rhs.re), rel(lhs.eps, rhs.eps)});
            worst = std::max(worst, r);
            if (r > 1e-12)
                out.fail(family[i].name + " rules residual " + fmt(r) + " > 1e-12");
        }
    }
    if (out.detail.empty())
        out.detail = "psi(1)=1 exact; " + std::to_string(samples_total) +
                     " (f,g,x,y) samples, worst relative residual " + fmt(worst) + " (tol 1e-12)";
    return out;
}

// --- 5. Taylor remainder order -------------------------------------------

double fitted_exponent(const TaylorExpansion& expansion, const HVector& anchor, const HVector& v,
                       bool& exact) {
    std::vector<double> mags;
    for (int m = 3; m <= 9; ++m)
        mags.push_back(std::abs(expansion.remainder(anchor + std::pow(0.5, m) * v)));
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i + 1 < mags.size(); ++i) {
        if (mags[i] <= 1e-13 || mags[i + 1] <= 1e-13) continue;
        sum += std::log2(mags[i] / mags[i + 1]);
        ++count;
    }
    exact = count == 0 && *std::max_element(mags.begin(), mags.end()) <= 1e-13;
    return count ? sum / count : 0.0;
}

Outcome criterion_taylor() {
    Outcome out;

    // decay exponents on sin / exp / polynomial cases
    const std::vector<std::string> fit_cases = {"sin(x1)", "exp(0.25*x1 + 0.125*x2)",
                                                "0.005*x1^2*x2^3"};
    double worst_margin = 1e9;
    for (const auto& dsl : fit_cases) {
        SmoothExpr f = parse(dsl);
        for (int n : {1, 2, 3}) {
            TaylorExpansion expansion = taylor(f, HVector{}, n);
            Rng rng(fnv1a("criterion5/" + dsl) ^ static_cast<std::uint64_t>(n));
            for (int d = 0; d < 4; ++d) {
                HVector v = rng.unit_direction(f.support().indices, 8);
                bool exact = false;
                double exponent = fitted_exponent(expansion, HVector{}, v, exact);
                if (exact) continue;
                worst_margin = std::min(worst_margin, exponent - (n + 1));
                if (exponent < n + 1 - 0.1)
                    out.fail(dsl + " n=" + std::to_string(n) + ": exponent " + fmt(exponent));
            }
        }
    }

    // exact expansions for polynomials of degree <= n
    for (const auto& [dsl, n] : std::vector<std::pair<std::string, int>>{
             {"x1*x2", 2}, {"0.25*x1*(x1 - 1)", 2}, {"0.5*x1 + 0.25*x2 - 0.125*x7 + x8", 1}}) {
        SmoothExpr f = parse(dsl);
        TaylorExpansion expansion = taylor(f, HVector{}, n);
        Rng rng(fnv1a("criterion5-exact/" + dsl) ^ 42);
        for (int s = 0; s < 50; ++s) {
            double r = std::abs(expansion.remainder(rng.in_ball(HVector{}, 4.0, 8)));
            if (r > 1e-13)
                out.fail(dsl + ": degree <= n remainder " + fmt(r) + " > 1e-13");
        }
    }

    // factored remainder against the direct remainder, |support| <= 4, n <= 2
    double worst_factored = 0.0;
    for (const auto& [dsl, n] : std::vector<std::pair<std::string, int>>{
             {"x1*x2", 1},
             {"sin(x1)*x2", 2},
             {"exp(0.25*x1 + 0.125*x2)", 2},
             {"x1^2 - x2^2 + 0.5*x1*x3*x4", 2}}) {
        SmoothExpr f = parse(dsl);
        TaylorExpansion expansion = taylor(f, HVector{}, n);
        RemainderFactors factors = remainder_factors(f, HVector{}, n);
        Rng rng(fnv1a("criterion5-factored/" + dsl) ^ 42);
        for (int s = 0; s < 8; ++s) {
            HVector x = rng.in_ball(HVector{}, 3.0, f.support().max_index());
            double r = std::abs(expansion.remainder(x) - factors.reconstruct(x));
            worst_factored = std::max(worst_factored, r);
            if (r > 1e-8)
                out.fail(dsl + " n=" + std::to_string(n) + ": factored remainder off by " +
                         fmt(r));
        }
    }

    if (out.detail.empty())
        out.detail = "fit margin above n+1: " + fmt(worst_margin) +
                     "; factored-vs-direct max " + fmt(worst_factored) + " (tol 1e-8)";
    return out;
}

// --- 6. axes-vanishing corollary -----------------------------------------

Outcome criterion_axes() {
    Outcome out;
    SmoothExpr f = parse("x1*x2*(1 + x3^2)");
    double worst = 0.0;
    try {
        AxesFactorization fact = axes_vanishing_factorization(f);
        Rng rng(fnv1a("criterion6") ^ 42);
        for (int s = 0; s < 100; ++s) {
            HVector x = rng.in_ball(HVector{}, 4.0, 3);
            double r = std::abs(fact.reconstruct(x) - f.eval(x));
            worst = std::max(worst, r);
            if (r > 1e-8) out.fail("reconstruction residual " + fmt(r) + " > 1e-8");
        }
    } catch (const std::exception& e) {
        out.fail(std::string("unexpected rejection: ") + e.what());
    }

    bool rejected = false;
    try {
        axes_vanishing_factorization(parse("x1^2"));
    } catch (const std::domain_error&) {
        rejected = true;
    }
    if (!rejected) out.fail("x1^2 was not rejected");

    if (out.detail.empty())
        out.detail = "x1*x2*(1+x3^2) reconstructed at 100 pts, max residual " + fmt(worst) +
                     " (tol 1e-8); x1^2 rejected";
    return out;
}

// --- 7. two-point representation -----------------------------------------

Outcome criterion_two_point() {
    Outcome out;
    struct Case {
        std::string dsl;
        HVector y;
        HVector z;
    };
    const std::vector<Case> cases = {
        {"x1*(x1 - 1)", HVector::unit(1), HVector{0}},
        {"(x1 - 0.6)*(x1 - 0.5) + (x2 - 0.8)*(x2 + 0.25)", HVector{0.6, 0.8},
         HVector{0.5, -0.25}},
        {"sin(x1)*sin(x2)", HVector{0, 1}, HVector{2, 0}},
        {"x1*x2", HVector{0, 1}, HVector{0, 0}},
    };
    double worst_resid = 0.0, worst_endpoint = 0.0;
    for (const auto& c : cases) {
        SmoothExpr f = parse(c.dsl);
        TwoPointFactors fact = two_point_factorization(f, c.y, c.z);
        for (std::size_t i = 0; i < fact.size(); ++i) {
            double end = std::max(std::abs(fact.g[i](c.y)), std::abs(fact.h[i](c.z)));
            worst_endpoint = std::max(worst_endpoint, end);
            if (end > 1e-10) out.fail(c.dsl + ": endpoint residual " + fmt(end) + " > 1e-10");
        }
        Rng rng(fnv1a("criterion7/" + c.dsl) ^ 42);
        int dims = std::max({f.support().max_index(), c.y.dim(), c.z.dim()});
        for (int s = 0; s < 100; ++s) {
            HVector x = rng.in_ball(HVector{}, 3.0, dims);
            double r = std::abs(fact.reconstruct(x) - f.eval(x));
            worst_resid = std::max(worst_resid, r);
            if (r > 1e-8) out.fail(c.dsl + ": residual " + fmt(r) + " > 1e-8");
        }
    }
    if (out.detail.empty())
        out.detail = std::to_string(cases.size()) + " functions, 100 pts each; max residual " +
                     fmt(worst_resid) + " (tol 1e-8), max endpoint " + fmt(worst_endpoint) +
                     " (tol 1e-10)";
    return out;
}

// --- 8 & 9 use the installed CLI -----------------------------------------

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string out_path = "/tmp/hadafact_acc_out_" + std::to_string(counter);
    std::string err_path = "/tmp/hadafact_acc_err_" + std::to_string(counter);
    ++counter;
    std::string cmd =
        std::string(HADAFACT_CLI_PATH) + " " + args + " >" + out_path + " 2>" + err_path;
    int rc = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    result.out = slurp_file(out_path);
    result.err = slurp_file(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return result;
}

Outcome criterion_determinism() {
    Outcome out;
    RunResult a = run_cli("verify --seed 42");
    RunResult b = run_cli("verify --seed 42");
    if (a.exit_code != 0) out.fail("verify exited " + std::to_string(a.exit_code));
    if (a.out != b.out) out.fail("two identically-seeded runs differ");
    if (a.out.empty()) out.fail("verify produced no output");
    if (out.detail.empty()) {
        int lines = static_cast<int>(std::count(a.out.begin(), a.out.end(), '\n'));
        out.detail = "two runs byte-identical (" + std::to_string(lines) +
                     " report lines), exit 0";
    }
    return out;
}

Outcome criterion_parser() {
    Outcome out;
    int round_trips = 0;
    Rng rng(fnv1a("criterion9") ^ 42);
    for (const auto& text : corpus::well_formed()) {
        SmoothExpr before = parse(text);
        SmoothExpr after = parse(before.str());
        int dims = std::max(1, before.support().max_index());
        bool same = true;
        for (int s = 0; s < 25; ++s) {
            HVector x = rng.in_ball(HVector{}, 2.0, dims);
            double va = before.eval(x), vb = after.eval(x);
            if (std::abs(va - vb) > 1e-14 * std::max(1.0, std::abs(va))) same = false;
        }
        if (!same)
            out.fail("'" + text + "' -> '" + before.str() + "' changed the function");
        else
            ++round_trips;
    }
    if (round_trips < 20) out.fail("fewer than 20 round-trip cases");

    int rejected = 0;
    const std::regex position("[0-9]+:[0-9]+");
    for (const auto& [text, needle] : corpus::malformed()) {
        RunResult r = run_cli("eval -f \"" + text + "\" --point 1");
        if (r.exit_code != 2) {
            out.fail("'" + text + "' exited " + std::to_string(r.exit_code) + ", wanted 2");
            continue;
        }
        if (!std::regex_search(r.err, position)) {
            out.fail("'" + text + "' diagnostic lacks a line:column position");
            continue;
        }
        ++rejected;
    }
    if (rejected < 5) out.fail("fewer than 5 malformed cases rejected");

    if (out.detail.empty())
        out.detail = std::to_string(round_trips) + " round-trips evaluation-identical; " +
                     std::to_string(rejected) + " malformed inputs exit 2 with positions";
    return out;
}

}  // namespace

int main() {
    struct Entry {
        std::string label;
        Outcome (*fn)();
    };
    const std::vector<Entry> criteria = {
        {"hadamard identity (32 nodes; 1e-9 general, 1e-13 polynomial)", criterion_hadamard_identity},
        {"anchor identities g_k(a), 2g_kj(a)", criterion_anchor_identities},
        {"dual-number contract (eps parts, eps^2=0)", criterion_dual_contract},
        {"derivative rules and psi multiplicativity", criterion_rules},
        {"taylor remainder order and factored remainder", criterion_taylor},
        {"axes-vanishing factorization", criterion_axes},
        {"two-point product representation", criterion_two_point},
        {"verify determinism and all-pass", criterion_determinism},
        {"parser corpus round-trips and diagnostics", criterion_parser},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome = criteria[i].fn();
        if (!outcome.passed) ++failures;
        std::printf("%s  %zu. %s — %s\n", outcome.passed ? "PASS" : "FAIL", i + 1,
                    criteria[i].label.c_str(), outcome.detail.c_str());
        std::fflush(stdout);
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
