#include "hadafact/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "hadafact/dual.hpp"
#include "hadafact/factorization.hpp"
#include "hadafact/json_io.hpp"
#include "hadafact/parser.hpp"
#include "hadafact/taylor.hpp"

namespace hadafact {

// --- rng ----------------------------------------------------------------

std::uint64_t Rng::next() {
    // splitmix64: portable and stateless across standard libraries.
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

double Rng::normal() {
    double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

HVector Rng::in_ball(const HVector& center, double radius, int dims) {
    std::vector<double> dir(static_cast<std::size_t>(dims));
    double nsq = 0.0;
    do {
        nsq = 0.0;
        for (double& d : dir) {
            d = normal();
            nsq += d * d;
        }
    } while (nsq == 0.0);
    double r = radius * std::pow(uniform01(), 1.0 / dims) / std::sqrt(nsq);
    for (double& d : dir) d *= r;
    return center + HVector(std::move(dir));
}

HVector Rng::unit_direction(const std::vector<int>& coords, int fallback_dims) {
    std::vector<int> idx = coords;
    if (idx.empty()) {
        idx.resize(static_cast<std::size_t>(fallback_dims));
        for (int i = 0; i < fallback_dims; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
    }
    std::vector<double> comps(idx.size());
    double nsq = 0.0;
    do {
        nsq = 0.0;
        for (double& c : comps) {
            c = normal();
            nsq += c * c;
        }
    } while (nsq == 0.0);
    double inv = 1.0 / std::sqrt(nsq);
    std::vector<double> out(static_cast<std::size_t>(*std::max_element(idx.begin(), idx.end())),
                            0.0);
    for (std::size_t i = 0; i < idx.size(); ++i)
        out[static_cast<std::size_t>(idx[i] - 1)] = comps[i] * inv;
    return HVector(std::move(out));
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

// --- reports --------------------------------------------------------------

std::string CheckReport::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("name").value(name);
    w.key("passed").value(passed);
    w.key("samples_run").value(samples_run);
    w.key("worst_case").begin_object();
    w.key("input").value(worst_case.input);
    w.key("residual").value(worst_case.residual);
    w.end_object();
    w.end_object();
    return w.str();
}

CheckReport CheckReport::from_json(std::string_view line) {
    nlohmann::json j = nlohmann::json::parse(line);
    CheckReport r;
    r.name = j.at("name").get<std::string>();
    r.passed = j.at("passed").get<bool>();
    r.samples_run = j.at("samples_run").get<long long>();
    r.worst_case.input = j.at("worst_case").at("input").get<std::string>();
    r.worst_case.residual = j.at("worst_case").at("residual").get<double>();
    return r;
}

bool all_passed(const std::vector<CheckReport>& reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [](const CheckReport& r) { return r.passed; });
}

std::string to_json_lines(const std::vector<CheckReport>& reports) {
    std::string out;
    for (const auto& r : reports) {
        out += r.to_json();
        out += '\n';
    }
    return out;
}

// --- helpers --------------------------------------------------------------

namespace {

void validate(const CheckConfig& cfg) {
    if (cfg.samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (!(cfg.abs_tol > 0) || !(cfg.rel_tol >= 0))
        throw std::invalid_argument("tolerances must be positive");
    if (!(cfg.fd_step > 0)) throw std::invalid_argument("fd_step must be positive");
    if (cfg.dims < 1) throw std::invalid_argument("dims must be >= 1");
}

struct Worst {
    double residual = -1.0;
    std::string input;

    template <typename Describe>
    void update(double r, Describe&& describe) {
        if (r > residual) {
            residual = r;
            input = describe();
        }
    }
};

double rel_scale(double a, double b) { return std::max({1.0, std::abs(a), std::abs(b)}); }

std::string describe_point(const SmoothExpr& f, const HVector& x) {
    return "f=" + f.str() + "; x=" + to_json(x);
}

int sampling_dims(const SmoothExpr& f, const CheckConfig& cfg) {
    return std::max(cfg.dims, f.support().max_index());
}

constexpr double kSamplingRadius = 4.0;
constexpr double kRoundingFloor = 1e-13;
constexpr double kFdRelTol = 1e-6;

}  // namespace

// --- checks -----------------------------------------------------------

CheckReport check_hadamard_identity(const SmoothExpr& f, const HVector& anchor,
                                    const StarDomain& domain, const CheckConfig& cfg,
                                    std::string name) {
    validate(cfg);
    HadamardFactorization fact(f, anchor, domain, cfg.quad);
    Rng rng(cfg.seed);
    int dims = sampling_dims(f, cfg);

    HVector center = anchor;
    double radius = kSamplingRadius;
    if (const Ball* b = domain.as_ball()) {
        center = b->center;
        radius = b->radius;
        dims = std::max(dims, center.dim());
    }

    CheckReport report;
    report.name = std::move(name);
    report.passed = true;
    Worst worst;
    for (int s = 0; s < cfg.samples; ++s) {
        HVector x = rng.in_ball(center, radius, dims);
        double fx = f.eval(x);
        double rec = fact.reconstruct(x);
        double r = std::abs(rec - fx);
        if (r > cfg.abs_tol + cfg.rel_tol * std::abs(fx)) report.passed = false;
        worst.update(r, [&] {
            return describe_point(f, x) + "; anchor=" + to_json(anchor) +
                   "; f(x)=" + format_double17(fx) + "; reconstructed=" + format_double17(rec);
        });
    }
    report.samples_run = cfg.samples;
    report.worst_case = {worst.input, worst.residual};
    return report;
}

CheckReport check_gateaux_frechet(const SmoothExpr& f, const CheckConfig& cfg, std::string name) {
    validate(cfg);
    Rng rng(cfg.seed);
    int dims = sampling_dims(f, cfg);

    CheckReport report;
    report.name = std::move(name);
    report.passed = true;
    Worst worst;
    for (int s = 0; s < cfg.samples; ++s) {
        HVector x = rng.in_ball(HVector{}, kSamplingRadius, dims);
        HVector v = rng.unit_direction({}, dims);
        double dd = directional_derivative(f, x, v);
        double fd =
            (f.eval(x + cfg.fd_step * v) - f.eval(x - cfg.fd_step * v)) / (2.0 * cfg.fd_step);
        double r = std::abs(dd - fd) / rel_scale(dd, fd);
        if (r > kFdRelTol) report.passed = false;
        worst.update(r, [&] {
            return describe_point(f, x) + "; v=" + to_json(v) + "; symbolic=" +
                   format_double17(dd) + "; central_fd=" + format_double17(fd);
        });
    }
    report.samples_run = cfg.samples;
    report.worst_case = {worst.input, worst.residual};
    return report;
}

CheckReport check_rules(const SmoothExpr& f, const SmoothExpr& g, const CheckConfig& cfg,
                        std::string name) {
    validate(cfg);
    Rng rng(cfg.seed);
    int dims = std::max(sampling_dims(f, cfg), g.support().max_index());
    SmoothExpr sum = f + g;
    SmoothExpr product = f * g;

    CheckReport report;
    report.name = std::move(name);
    report.passed = true;
    Worst worst;
    for (int s = 0; s < cfg.samples; ++s) {
        HVector x = rng.in_ball(HVector{}, kSamplingRadius, dims);
        HVector y = rng.in_ball(HVector{}, kSamplingRadius, dims);
        double c = rng.uniform(-2.0, 2.0);
        DualVector w{x, y};
        DualScalar pf = eval(f, w);
        DualScalar pg = eval(g, w);

        double r_const = std::abs(eval(SmoothExpr::constant(c), w).eps);
        double lhs_scale = eval(SmoothExpr::scale(c, f), w).eps;
        double rhs_scale = c * pf.eps;
        double r_scale = std::abs(lhs_scale - rhs_scale) / rel_scale(lhs_scale, rhs_scale);
        double lhs_sum = eval(sum, w).eps;
        double rhs_sum = pf.eps + pg.eps;
        double r_sum = std::abs(lhs_sum - rhs_sum) / rel_scale(lhs_sum, rhs_sum);
        double lhs_prod = eval(product, w).eps;
        double rhs_prod = pf.eps * g.eval(x) + f.eval(x) * pg.eps;
        double r_prod = std::abs(lhs_prod - rhs_prod) / rel_scale(lhs_prod, rhs_prod);

        double r = std::max({r_const, r_scale, r_sum, r_prod});
        if (r > cfg.rel_tol) report.passed = false;
        worst.update(r, [&] {
            return "f=" + f.str() + "; g=" + g.str() + "; x=" + to_json(x) + "; y=" + to_json(y) +
                   "; c=" + format_double17(c) + "; residuals[const,scale,sum,product]=[" +
                   format_double17(r_const) + "," + format_double17(r_scale) + "," +
                   format_double17(r_sum) + "," + format_double17(r_prod) + "]";
        });
    }
    report.samples_run = cfg.samples;
    report.worst_case = {worst.input, worst.residual};
    return report;
}

CheckReport check_psi_homomorphism(const SmoothExpr& f, const SmoothExpr& g,
                                   const CheckConfig& cfg, std::string name) {
    validate(cfg);
    Rng rng(cfg.seed);
    int dims = std::max(sampling_dims(f, cfg), g.support().max_index());
    SmoothExpr product = f * g;

    CheckReport report;
    report.name = std::move(name);
    report.passed = true;
    Worst worst;

    DualScalar unit = eval(SmoothExpr::constant(1.0), DualVector{HVector{}, HVector{}});
    if (!(unit == DualScalar(1.0, 0.0))) {
        report.passed = false;
        worst.update(1.0, [] { return std::string("psi(1) != 1 + eps*0"); });
    }

    for (int s = 0; s < cfg.samples; ++s) {
        HVector x = rng.in_ball(HVector{}, kSamplingRadius, dims);
        HVector y = rng.in_ball(HVector{}, kSamplingRadius, dims);
        DualVector w{x, y};
        DualScalar lhs = eval(product, w);
        DualScalar rhs = eval(f, w) * eval(g, w);
        double r = std::max(std::abs(lhs.re - rhs.re) / rel_scale(lhs.re, rhs.re),
                            std::abs(lhs.eps - rhs.eps) / rel_scale(lhs.eps, rhs.eps));
        if (r > cfg.rel_tol) report.passed = false;
        worst.update(r, [&] {
            return "f=" + f.str() + "; g=" + g.str() + "; x=" + to_json(x) + "; y=" + to_json(y) +
                   "; psi(f*g)=" + to_json(lhs) + "; psi(f)*psi(g)=" + to_json(rhs);
        });
    }
    report.samples_run = cfg.samples;
    report.worst_case = {worst.input, worst.residual};
    return report;
}

CheckReport check_taylor_order(const SmoothExpr& f, const HVector& anchor, int order,
                               const CheckConfig& cfg, std::string name) {
    validate(cfg);
    if (order < 0) throw std::invalid_argument("expansion order must be >= 0");
    TaylorExpansion expansion = taylor(f, anchor, order);
    Rng rng(cfg.seed);
    std::vector<int> support = f.support().indices;
    double required = order + 1 - 0.1;

    CheckReport report;
    report.name = std::move(name);
    report.passed = true;
    Worst worst;
    int dirs = std::min(cfg.samples, 8);
    for (int d = 0; d < dirs; ++d) {
        HVector v = rng.unit_direction(support, cfg.dims);
        // remainders along halving steps 2^-m * v
        constexpr int m_lo = 3, m_hi = 9;
        std::vector<double> magnitude;
        for (int m = m_lo; m <= m_hi; ++m)
            magnitude.push_back(std::abs(expansion.remainder(anchor + std::pow(0.5, m) * v)));

        // least squares on the log2 ratios of adjacent usable steps
        // reduces to their mean
        double ratio_sum = 0.0;
        int ratio_count = 0;
        for (std::size_t i = 0; i + 1 < magnitude.size(); ++i) {
            if (magnitude[i] <= kRoundingFloor || magnitude[i + 1] <= kRoundingFloor) continue;
            ratio_sum += std::log2(magnitude[i] / magnitude[i + 1]);
            ++ratio_count;
        }

        if (ratio_count == 0) {
            double peak = *std::max_element(magnitude.begin(), magnitude.end());
            bool ok = peak <= kRoundingFloor;
            if (!ok) report.passed = false;
            worst.update(ok ? 0.0 : required, [&] {
                return describe_point(f, anchor) + "; dir=" + to_json(v) +
                       "; remainder magnitudes below fit floor, peak=" + format_double17(peak);
            });
            continue;
        }

        double exponent = ratio_sum / ratio_count;
        if (exponent < required) report.passed = false;
        // store the shortfall so that larger residual = worse, 0 = clean
        double shortfall = std::max(0.0, required - exponent);
        worst.update(shortfall, [&] {
            return describe_point(f, anchor) + "; dir=" + to_json(v) + "; fitted_exponent=" +
                   format_double17(exponent) + "; required=" + format_double17(required);
        });
    }
    report.samples_run = dirs;
    report.worst_case = {worst.input, worst.residual};
    return report;
}

namespace {

void for_each_subset(const std::vector<int>& items, int size,
                     const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> subset;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (static_cast<int>(subset.size()) == size) {
            fn(subset);
            return;
        }
        for (std::size_t i = start; i < items.size(); ++i) {
            subset.push_back(items[i]);
            rec(i + 1);
            subset.pop_back();
        }
    };
    rec(0);
}

}  // namespace

CheckReport check_subspace_vanishing(const SmoothExpr& f, int k, const CheckConfig& cfg,
                                     std::string name) {
    validate(cfg);
    if (k < 1) throw std::invalid_argument("subspace order k must be >= 1");
    Rng rng(cfg.seed);
    std::vector<int> support = f.support().indices;
    int dims = sampling_dims(f, cfg);

    CheckReport report;
    report.name = std::move(name);
    report.passed = true;
    Worst worst;
    long long probes = 0;

    // stage 1a: f itself vanishes on every supported axis (and at 0)
    double f0 = std::abs(f.eval(HVector{}));
    ++probes;
    if (f0 > cfg.abs_tol) report.passed = false;
    worst.update(f0, [&] { return "stage1: f=" + f.str() + "; |f(0)|"; });
    for (int n : support) {
        for (int p = 0; p <= 8; ++p) {
            for (double sign : {1.0, -1.0}) {
                double delta = sign * kSamplingRadius * std::pow(0.5, p);
                double value = std::abs(f.eval(delta * HVector::unit(n)));
                ++probes;
                if (value > cfg.abs_tol) report.passed = false;
                worst.update(value, [&] {
                    return "stage1: f=" + f.str() + "; |f(" + format_double17(delta) + "*u" +
                           std::to_string(n) + ")|";
                });
            }
        }
    }

    // stage 1b: the order-j tensors vanish on every span of j supported
    // basis vectors, probed with random points and directions
    int points_per_span = std::clamp(cfg.samples / 8, 1, 8);
    for (int j = 1; j <= k && report.passed; ++j) {
        for_each_subset(support, j, [&](const std::vector<int>& span) {
            for (int s = 0; s < points_per_span; ++s) {
                std::vector<double> coords(static_cast<std::size_t>(span.back()), 0.0);
                for (int idx : span)
                    coords[static_cast<std::size_t>(idx - 1)] =
                        rng.uniform(-kSamplingRadius, kSamplingRadius);
                HVector x(std::move(coords));
                std::vector<HVector> dirs;
                dirs.reserve(static_cast<std::size_t>(j));
                for (int d = 0; d < j; ++d) dirs.push_back(rng.unit_direction({}, dims));
                double value = std::abs(nth_directional(f, x, dirs));
                ++probes;
                if (value > cfg.abs_tol) report.passed = false;
                worst.update(value, [&] {
                    std::string span_txt;
                    for (int idx : span)
                        span_txt += (span_txt.empty() ? "u" : ",u") + std::to_string(idx);
                    return "stage1: f=" + f.str() + "; |grad^" + std::to_string(j) +
                           " f| probe on span{" + span_txt + "}; x=" + to_json(x);
                });
            }
        });
    }

    // stage 2: reconstruct f from the degree-(k+1) remainder factors at 0
    if (report.passed) {
        RemainderFactors factors = remainder_factors(f, HVector{}, k, cfg.quad);
        int points = std::min(cfg.samples, 25);
        for (int s = 0; s < points; ++s) {
            HVector x = rng.in_ball(HVector{}, kSamplingRadius, dims);
            double fx = f.eval(x);
            double rec = factors.reconstruct(x);
            double r = std::abs(rec - fx);
            ++probes;
            if (r > cfg.abs_tol + cfg.rel_tol * std::abs(fx)) report.passed = false;
            worst.update(r, [&] {
                return "stage2: " + describe_point(f, x) + "; f(x)=" + format_double17(fx) +
                       "; reconstructed=" + format_double17(rec);
            });
        }
    }

    report.samples_run = probes;
    report.worst_case = {worst.input, worst.residual};
    return report;
}

// --- the standard family and suite -------------------------------------

namespace {

FamilyMember make_member(const std::string& dsl, HVector anchor) {
    SmoothExpr f = parse(dsl);
    bool poly = f.is_polynomial();
    return FamilyMember{dsl, std::move(f), poly, std::move(anchor)};
}

}  // namespace

const std::vector<FamilyMember>& standard_family() {
    static const std::vector<FamilyMember> family = [] {
        HVector zero{};
        HVector shifted{0.5, -0.25, 0.125};
        std::vector<FamilyMember> out;
        out.push_back(make_member("2.5", zero));
        out.push_back(make_member("x1", shifted));
        out.push_back(make_member("0.5*x1 + 0.25*x2 - 0.125*x7 + x8", zero));
        out.push_back(make_member("0.125*(x1^2 + x2^2 + x3^2 + x4^2)", shifted));
        out.push_back(make_member("0.25*x1*x2", zero));
        out.push_back(make_member("0.0625*x1*x2*x3", shifted));
        out.push_back(make_member("0.005*x1^2*x2^3", zero));
        out.push_back(make_member("0.01*x1^2*x2^2", zero));
        out.push_back(make_member("0.25*x1*(x1 - 1)", shifted));
        out.push_back(make_member("0.0005*(x1 + x2)^3*x3^2", zero));
        out.push_back(make_member("0.0001*x1^6", shifted));
        out.push_back(make_member("0.05*x1*x2*(1 + x3^2)", zero));
        out.push_back(make_member("sin(x1)", zero));
        out.push_back(make_member("x1*cos(x2)", shifted));
        out.push_back(make_member("exp(0.25*x1 + 0.125*x2)", zero));
        out.push_back(make_member("sin(0.5*x1*x2) + cos(x3)", shifted));
        out.push_back(make_member("exp(0.2*x1)*sin(x2)", zero));
        out.push_back(make_member("cos(x1)*cos(x2) + 0.5*sin(x3)*x4", shifted));
        return out;
    }();
    return family;
}

namespace {

CheckConfig derive(const CheckConfig& base, const std::string& name) {
    CheckConfig cfg = base;
    cfg.seed = base.seed ^ fnv1a(name);
    return cfg;
}

}  // namespace

std::vector<CheckReport> run_suite(const CheckConfig& cfg) {
    validate(cfg);
    const auto& family = standard_family();
    std::vector<CheckReport> reports;

    // Hadamard identity: quadrature-exact tolerance for polynomials.
    for (const auto& m : family) {
        std::string name = "hadamard-identity/" + m.name;
        CheckConfig c = derive(cfg, name);
        if (m.polynomial) {
            c.abs_tol = 1e-13;
            c.rel_tol = 0.0;
        }
        reports.push_back(
            check_hadamard_identity(m.f, m.anchor, StarDomain::whole_space(), c, name));
    }

    for (const auto& m : family) {
        std::string name = "gateaux-frechet/" + m.name;
        reports.push_back(check_gateaux_frechet(m.f, derive(cfg, name), name));
    }

    // Pair up neighbours for the two-function checks.
    for (std::size_t i = 0; i + 1 < family.size(); i += 2) {
        const auto& f = family[i];
        const auto& g = family[i + 1];
        {
            std::string name = "derivative-rules/" + f.name + " | " + g.name;
            CheckConfig c = derive(cfg, name);
            c.rel_tol = 1e-12;
            reports.push_back(check_rules(f.f, g.f, c, name));
        }
        {
            std::string name = "psi-homomorphism/" + f.name + " | " + g.name;
            CheckConfig c = derive(cfg, name);
            c.rel_tol = 1e-12;
            reports.push_back(check_psi_homomorphism(f.f, g.f, c, name));
        }
    }

    const std::vector<std::pair<std::string, int>> taylor_cases = {
        {"sin(x1)", 1},
        {"sin(x1)", 2},
        {"exp(0.25*x1 + 0.125*x2)", 2},
        {"x1*cos(x2)", 2},
        {"0.25*x1*(x1 - 1)", 2},
        {"0.0001*x1^6", 3},
        {"0.005*x1^2*x2^3", 3},
    };
    for (const auto& [dsl, order] : taylor_cases) {
        auto it = std::find_if(family.begin(), family.end(),
                               [&](const FamilyMember& m) { return m.name == dsl; });
        std::string name = "taylor-order/" + dsl + "/n=" + std::to_string(order);
        reports.push_back(check_taylor_order(it->f, it->anchor, order, derive(cfg, name), name));
    }

    // These need the full derivative tensors, not just f, to vanish on
    // the axes; plain products like x1*x2 do not qualify.
    const std::vector<std::string> vanishing_cases = {
        "0.005*x1^2*x2^3",
        "0.01*x1^2*x2^2",
        "0.0005*(x1 + x2)^3*x3^2",
    };
    for (const auto& dsl : vanishing_cases) {
        auto it = std::find_if(family.begin(), family.end(),
                               [&](const FamilyMember& m) { return m.name == dsl; });
        std::string name = "subspace-vanishing/" + dsl + "/k=1";
        CheckConfig c = derive(cfg, name);
        c.abs_tol = 1e-8;
        reports.push_back(check_subspace_vanishing(it->f, 1, c, name));
    }

    return reports;
}

}  // namespace hadafact
