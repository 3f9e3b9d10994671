// hadafact command line: parse DSL functions, run factorizations,
// expansions, dual evaluations, and the verification suite, and emit
// deterministic JSON reports.
//
// Exit codes: 0 success / all checks passed, 1 computation or check
// failure, 2 usage or parse error.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hadafact/dual.hpp"
#include "hadafact/errors.hpp"
#include "hadafact/factorization.hpp"
#include "hadafact/json_io.hpp"
#include "hadafact/parser.hpp"
#include "hadafact/representations.hpp"
#include "hadafact/taylor.hpp"
#include "hadafact/verify.hpp"

namespace hf = hadafact;

namespace {

struct CommonOpts {
    std::string function;
    std::string anchor;
    std::string point;
    std::string tangent;
    std::string y;
    std::string z;
    int order = 0;
    int nodes = 32;
    int dims = 8;
    std::uint64_t seed = 42;
    int samples = 200;
    double tol = 1e-9;
    std::string output;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open function file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

hf::SmoothExpr load_function(const std::string& spec) {
    if (!spec.empty() && spec.front() == '@') return hf::parse(slurp(spec.substr(1)));
    return hf::parse(spec);
}

/// Comma-separated decimals; the shorthand "0" expands to the zero vector
/// of the function's support dimension.
hf::HVector parse_vector(const std::string& text, int support_dim, const char* flag) {
    std::string trimmed;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.empty())
        throw std::invalid_argument(std::string("empty vector for ") + flag);
    if (trimmed == "0") return hf::HVector::zeros(std::max(support_dim, 1));
    std::vector<double> coeffs;
    std::size_t pos = 0;
    while (pos <= trimmed.size()) {
        std::size_t comma = trimmed.find(',', pos);
        std::string part = trimmed.substr(pos, comma == std::string::npos ? std::string::npos
                                                                          : comma - pos);
        double v = 0.0;
        auto res = std::from_chars(part.data(), part.data() + part.size(), v);
        if (res.ec != std::errc{} || res.ptr != part.data() + part.size())
            throw std::invalid_argument(std::string("malformed number '") + part + "' in " + flag);
        coeffs.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return hf::HVector(std::move(coeffs));
}

void emit(const CommonOpts& opts, const std::string& text) {
    if (opts.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + opts.output + "'");
    out << text;
}

void add_common_flags(CLI::App* cmd, CommonOpts& opts, bool with_function = true) {
    if (with_function)
        cmd->add_option("-f,--function", opts.function, "DSL expression or @file")->required();
    cmd->add_option("--nodes", opts.nodes, "Gauss-Legendre nodes")->default_val(32);
    cmd->add_option("--dims", opts.dims, "sampling dimensions")->default_val(8);
    cmd->add_option("--seed", opts.seed, "sample seed")->default_val(42);
    cmd->add_option("--samples", opts.samples, "sample count")->default_val(200);
    cmd->add_option("--tol", opts.tol, "residual tolerance")->default_val(1e-9);
    cmd->add_option("--output", opts.output, "write the report to a file instead of stdout");
}

int run_eval(const CommonOpts& opts) {
    hf::SmoothExpr f = load_function(opts.function);
    hf::HVector x = parse_vector(opts.point, f.support().max_index(), "--point");
    hf::JsonWriter w;
    w.begin_object();
    w.key("function").value(f.str());
    w.key("point").value(x);
    w.key("value").value(f.eval(x));
    w.end_object();
    emit(opts, w.str() + "\n");
    return 0;
}

int run_grad(const CommonOpts& opts) {
    hf::SmoothExpr f = load_function(opts.function);
    hf::HVector x = parse_vector(opts.point, f.support().max_index(), "--point");
    hf::JsonWriter w;
    w.begin_object();
    w.key("function").value(f.str());
    w.key("point").value(x);
    w.key("gradient").value(hf::gradient(f, x));
    w.end_object();
    emit(opts, w.str() + "\n");
    return 0;
}

int run_dual(const CommonOpts& opts) {
    hf::SmoothExpr f = load_function(opts.function);
    int dim = f.support().max_index();
    hf::DualVector arg{parse_vector(opts.point, dim, "--point"),
                       parse_vector(opts.tangent, dim, "--tangent")};
    hf::DualScalar out = hf::eval(f, arg);
    hf::JsonWriter w;
    w.begin_object();
    w.key("function").value(f.str());
    w.key("point").value(arg.point);
    w.key("tangent").value(arg.tangent);
    w.key("re").value(out.re);
    w.key("eps").value(out.eps);
    w.end_object();
    emit(opts, w.str() + "\n");
    return 0;
}

int run_hadamard(const CommonOpts& opts) {
    hf::SmoothExpr f = load_function(opts.function);
    int support_dim = f.support().max_index();
    hf::HVector anchor = parse_vector(opts.anchor, support_dim, "--anchor");
    hf::HadamardFactorization fact(f, anchor, hf::StarDomain::whole_space(),
                                   hf::QuadratureSpec{opts.nodes});

    std::vector<hf::HVector> points;
    if (!opts.point.empty()) {
        points.push_back(parse_vector(opts.point, support_dim, "--point"));
    } else {
        hf::Rng rng(opts.seed);
        int dims = std::max(opts.dims, support_dim);
        for (int i = 0; i < opts.samples; ++i) points.push_back(rng.in_ball(anchor, 4.0, dims));
    }

    hf::JsonWriter w;
    w.begin_object();
    w.key("function").value(f.str());
    w.key("anchor").value(anchor);
    w.key("nodes").value(opts.nodes);
    double max_residual = 0.0;
    std::string body;
    {
        hf::JsonWriter rows;
        rows.begin_array();
        for (const auto& x : points) {
            double fx = f.eval(x);
            hf::HVector g = fact.factor_vector(x);
            double rec = fact.reconstruct(x);
            max_residual = std::max(max_residual, std::abs(rec - fx));
            rows.begin_object();
            rows.key("x").value(x);
            rows.key("f").value(fx);
            rows.key("g").value(g);
            rows.key("reconstructed").value(rec);
            rows.end_object();
        }
        rows.end_array();
        body = rows.str();
    }
    w.key("max_residual").value(max_residual);
    w.key("per_point").raw(body);
    w.end_object();
    emit(opts, w.str() + "\n");
    return 0;
}

int run_taylor(const CommonOpts& opts) {
    hf::SmoothExpr f = load_function(opts.function);
    int support_dim = f.support().max_index();
    hf::HVector anchor = parse_vector(opts.anchor, support_dim, "--anchor");
    hf::TaylorExpansion expansion = hf::taylor(f, anchor, opts.order);

    hf::JsonWriter w;
    w.begin_object();
    w.key("function").value(f.str());
    w.key("anchor").value(anchor);
    w.key("order").value(opts.order);
    w.key("terms").begin_array();
    for (const auto& [alpha, coeff] : expansion.coefficients()) {
        w.begin_object();
        w.key("alpha").begin_array();
        for (const auto& [k, e] : alpha.entries()) {
            w.begin_array();
            w.value(k);
            w.value(e);
            w.end_array();
        }
        w.end_array();
        w.key("monomial").value(alpha.str());
        w.key("coeff").value(coeff);
        w.end_object();
    }
    w.end_array();
    if (!opts.point.empty()) {
        hf::HVector x = parse_vector(opts.point, support_dim, "--point");
        w.key("point").value(x);
        w.key("term_sum").value(expansion.term_sum(x));
        w.key("remainder").value(expansion.remainder(x));
    }
    w.end_object();
    emit(opts, w.str() + "\n");
    return 0;
}

int run_factor_axes(const CommonOpts& opts) {
    hf::SmoothExpr f = load_function(opts.function);
    int support_dim = f.support().max_index();
    hf::AxesFactorization fact =
        hf::axes_vanishing_factorization(f, hf::QuadratureSpec{opts.nodes});

    std::vector<hf::HVector> points;
    if (!opts.point.empty()) {
        points.push_back(parse_vector(opts.point, support_dim, "--point"));
    } else {
        hf::Rng rng(opts.seed);
        int dims = std::max(opts.dims, support_dim);
        for (int i = 0; i < std::min(opts.samples, 50); ++i)
            points.push_back(rng.in_ball(hf::HVector{}, 4.0, dims));
    }

    hf::JsonWriter w;
    w.begin_object();
    w.key("function").value(f.str());
    w.key("indices").begin_array();
    for (int k : fact.indices()) w.value(k);
    w.end_array();
    w.key("nodes").value(opts.nodes);
    double max_residual = 0.0;
    std::string body;
    {
        hf::JsonWriter rows;
        rows.begin_array();
        for (const auto& x : points) {
            double fx = f.eval(x);
            double rec = fact.reconstruct(x);
            max_residual = std::max(max_residual, std::abs(rec - fx));
            rows.begin_object();
            rows.key("x").value(x);
            rows.key("f").value(fx);
            rows.key("reconstructed").value(rec);
            rows.end_object();
        }
        rows.end_array();
        body = rows.str();
    }
    w.key("max_residual").value(max_residual);
    w.key("per_point").raw(body);
    if (points.size() == 1) {
        w.key("factors").begin_array();
        for (auto [k, j] : fact.pairs()) {
            w.begin_object();
            w.key("k").value(k);
            w.key("j").value(j);
            w.key("value").value(fact.factor(k, j, points.front()));
            w.end_object();
        }
        w.end_array();
    }
    w.end_object();
    emit(opts, w.str() + "\n");
    return 0;
}

int run_factor_two_point(const CommonOpts& opts) {
    hf::SmoothExpr f = load_function(opts.function);
    int support_dim = f.support().max_index();
    hf::HVector y = parse_vector(opts.y, support_dim, "--y");
    hf::HVector z = parse_vector(opts.z, support_dim, "--z");
    hf::TwoPointFactors fact =
        hf::two_point_factorization(f, y, z, hf::QuadratureSpec{opts.nodes});

    double endpoint = 0.0;
    for (std::size_t i = 0; i < fact.size(); ++i)
        endpoint = std::max({endpoint, std::abs(fact.g[i](y)), std::abs(fact.h[i](z))});

    std::vector<hf::HVector> points;
    if (!opts.point.empty()) {
        points.push_back(parse_vector(opts.point, support_dim, "--point"));
    } else {
        hf::Rng rng(opts.seed);
        int dims = std::max({opts.dims, support_dim, y.dim(), z.dim()});
        for (int i = 0; i < std::min(opts.samples, 100); ++i)
            points.push_back(rng.in_ball(hf::HVector{}, 4.0, dims));
    }

    hf::JsonWriter w;
    w.begin_object();
    w.key("function").value(f.str());
    w.key("y").value(y);
    w.key("z").value(z);
    w.key("nodes").value(opts.nodes);
    w.key("num_factors").value(static_cast<long long>(fact.size()));
    w.key("endpoint_residual").value(endpoint);
    double max_residual = 0.0;
    std::string body;
    {
        hf::JsonWriter rows;
        rows.begin_array();
        for (const auto& x : points) {
            double fx = f.eval(x);
            double rec = fact.reconstruct(x);
            max_residual = std::max(max_residual, std::abs(rec - fx));
            rows.begin_object();
            rows.key("x").value(x);
            rows.key("f").value(fx);
            rows.key("reconstructed").value(rec);
            rows.end_object();
        }
        rows.end_array();
        body = rows.str();
    }
    w.key("max_residual").value(max_residual);
    w.key("per_point").raw(body);
    w.end_object();
    emit(opts, w.str() + "\n");
    return 0;
}

int run_verify(const CommonOpts& opts) {
    hf::CheckConfig cfg;
    cfg.seed = opts.seed;
    cfg.samples = opts.samples;
    cfg.abs_tol = opts.tol;
    cfg.rel_tol = opts.tol;
    cfg.dims = opts.dims;
    cfg.quad = hf::QuadratureSpec{opts.nodes};
    std::vector<hf::CheckReport> reports = hf::run_suite(cfg);
    emit(opts, hf::to_json_lines(reports));
    return hf::all_passed(reports) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hadamard factorizations, Taylor remainders, and dual-number "
                 "evaluation for smooth functions of finitely many coordinates"};
    app.require_subcommand(1);

    CommonOpts opts;

    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a function at a point");
    add_common_flags(eval_cmd, opts);
    eval_cmd->add_option("--point", opts.point, "evaluation point (csv)")->required();

    CLI::App* grad_cmd = app.add_subcommand("grad", "symbolic gradient at a point");
    add_common_flags(grad_cmd, opts);
    grad_cmd->add_option("--point", opts.point, "evaluation point (csv)")->required();

    CLI::App* dual_cmd = app.add_subcommand("dual", "evaluate at point + eps*tangent");
    add_common_flags(dual_cmd, opts);
    dual_cmd->add_option("--point", opts.point, "standard part (csv)")->required();
    dual_cmd->add_option("--tangent", opts.tangent, "eps coefficient (csv)")->required();

    CLI::App* hadamard_cmd =
        app.add_subcommand("hadamard", "first-order factorization about an anchor");
    add_common_flags(hadamard_cmd, opts);
    hadamard_cmd->add_option("--anchor", opts.anchor, "anchor point (csv or 0)")->required();
    hadamard_cmd->add_option("--point", opts.point, "single evaluation point (csv)");

    CLI::App* taylor_cmd = app.add_subcommand("taylor", "expansion with factored remainder");
    add_common_flags(taylor_cmd, opts);
    taylor_cmd->add_option("--anchor", opts.anchor, "anchor point (csv or 0)")->required();
    taylor_cmd->add_option("--order", opts.order, "expansion order")->required();
    taylor_cmd->add_option("--point", opts.point, "optional evaluation point (csv)");

    CLI::App* axes_cmd =
        app.add_subcommand("factor-axes", "x_k x_j factorization of an axes-vanishing function");
    add_common_flags(axes_cmd, opts);
    axes_cmd->add_option("--point", opts.point, "single evaluation point (csv)");

    CLI::App* two_point_cmd = app.add_subcommand(
        "factor-two-point", "product factorization with prescribed zeros at y and z");
    add_common_flags(two_point_cmd, opts);
    two_point_cmd->add_option("--y", opts.y, "first zero (csv)")->required();
    two_point_cmd->add_option("--z", opts.z, "second zero (csv)")->required();
    two_point_cmd->add_option("--point", opts.point, "single evaluation point (csv)");

    CLI::App* verify_cmd = app.add_subcommand("verify", "run the verification suite");
    add_common_flags(verify_cmd, opts, /*with_function=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "hadafact: " << e.what() << "\n";
        std::cerr << app.help() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(eval_cmd)) return run_eval(opts);
        if (app.got_subcommand(grad_cmd)) return run_grad(opts);
        if (app.got_subcommand(dual_cmd)) return run_dual(opts);
        if (app.got_subcommand(hadamard_cmd)) return run_hadamard(opts);
        if (app.got_subcommand(taylor_cmd)) return run_taylor(opts);
        if (app.got_subcommand(axes_cmd)) return run_factor_axes(opts);
        if (app.got_subcommand(two_point_cmd)) return run_factor_two_point(opts);
        if (app.got_subcommand(verify_cmd)) return run_verify(opts);
    } catch (const hf::ParseError& e) {
        std::cerr << "hadafact: parse error at " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "hadafact: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "hadafact: error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
