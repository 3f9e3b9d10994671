#include <doctest.h>

#include <cmath>

#include "hadafact/expr.hpp"
#include "hadafact/parser.hpp"
#include "hadafact/verify.hpp"

using namespace hadafact;

namespace {
const SmoothExpr x1 = SmoothExpr::coord(1);
const SmoothExpr x2 = SmoothExpr::coord(2);
}  // namespace

TEST_CASE("evaluation") {
    CHECK(SmoothExpr::constant(3.5).eval(HVector{1, 2, 3}) == 3.5);
    CHECK(SmoothExpr::coord(2).eval(HVector{7, 9}) == 9.0);
    SmoothExpr f = SmoothExpr::int_pow(x1, 2) + SmoothExpr::prim(Prim::Sin, x2);
    CHECK(f.eval(HVector{2, 0}) == 4.0);
    // coordinates beyond dim(x) read as zero
    CHECK(x2.eval(HVector{5}) == 0.0);
}

TEST_CASE("partial derivatives by structure") {
    CHECK(x1.partial(1).is_constant(1.0));
    CHECK(x1.partial(2).is_constant(0.0));
    // product rule
    CHECK((x1 * x2).partial(1).eval(HVector{5, 3}) == 3.0);
    // chain rule through primitives
    SmoothExpr s = SmoothExpr::prim(Prim::Sin, SmoothExpr::int_pow(x1, 2));
    CHECK(s.partial(1).eval(HVector{0.7}) ==
          doctest::Approx(std::cos(0.49) * 1.4).epsilon(1e-15));
    // power rule
    CHECK(SmoothExpr::int_pow(x1, 5).partial(1).eval(HVector{2}) == 5 * 16.0);
    // derivative outside the support is identically zero
    CHECK(parse("sin(x1)*x2^3").partial(4).is_constant(0.0));
}

TEST_CASE("gradient") {
    CHECK(gradient(SmoothExpr::constant(5), HVector{1}) == HVector{});
    CHECK(gradient(SmoothExpr::int_pow(x1, 2) + SmoothExpr::int_pow(x2, 2), HVector{1, 2}) ==
          HVector{2, 4});
    CHECK(gradient(SmoothExpr::prim(Prim::Sin, x1), HVector{0}) == HVector{1});
}

TEST_CASE("directional derivative") {
    CHECK(directional_derivative(x1 * x2, HVector{1, 2}, HVector{0, 0}) == 0.0);
    CHECK(directional_derivative(x1, HVector{3, 3}, HVector::unit(1)) == 1.0);
    CHECK(directional_derivative(x1 * x2, HVector{1, 2}, HVector{1, 1}) == 3.0);
}

TEST_CASE("nth directional derivatives") {
    HVector u1 = HVector::unit(1), u2 = HVector::unit(2);
    std::vector<HVector> two{u1, u1};
    CHECK(nth_directional(SmoothExpr::int_pow(x1, 2), HVector{3}, two) == 2.0);
    std::vector<HVector> mixed{u1, u2};
    CHECK(nth_directional(x1 * x2, HVector{5, -7}, mixed) == 1.0);
    std::vector<HVector> three{u1, u1, u1};
    CHECK(nth_directional(SmoothExpr::prim(Prim::Exp, x1), HVector{0}, three) ==
          doctest::Approx(1.0).epsilon(1e-15));
    std::vector<HVector> none;
    CHECK_THROWS_AS(nth_directional(x1, HVector{0}, none), std::domain_error);
}

TEST_CASE("nth directional is multilinear in each slot") {
    Rng rng(11);
    SmoothExpr f = parse("x1^2*x2 + sin(x1*x3) - 0.5*exp(0.2*x2)");
    for (int trial = 0; trial < 25; ++trial) {
        HVector x = rng.in_ball(HVector{}, 2.0, 3);
        HVector a = rng.in_ball(HVector{}, 1.0, 3);
        HVector b = rng.in_ball(HVector{}, 1.0, 3);
        HVector c = rng.in_ball(HVector{}, 1.0, 3);
        double lambda = rng.uniform(-2.0, 2.0);

        std::vector<HVector> combined{a + lambda * b, c};
        std::vector<HVector> first{a, c};
        std::vector<HVector> second{b, c};
        double lhs = nth_directional(f, x, combined);
        double rhs = nth_directional(f, x, first) + lambda * nth_directional(f, x, second);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

        // symmetry (Clairaut)
        std::vector<HVector> fwd{a, b};
        std::vector<HVector> rev{b, a};
        CHECK(nth_directional(f, x, fwd) ==
              doctest::Approx(nth_directional(f, x, rev)).epsilon(1e-12));
    }
}

TEST_CASE("mixed partials commute on sampled functions") {
    Rng rng(5);
    for (const auto& m : standard_family()) {
        auto support = m.f.support().indices;
        if (support.size() < 2) continue;
        int j = support[0], k = support[1];
        SmoothExpr djk = m.f.partial(j).partial(k);
        SmoothExpr dkj = m.f.partial(k).partial(j);
        for (int trial = 0; trial < 10; ++trial) {
            HVector x = rng.in_ball(HVector{}, 3.0, 8);
            double a = djk.eval(x), b = dkj.eval(x);
            CHECK(a == doctest::Approx(b).epsilon(1e-12));
        }
    }
}

TEST_CASE("evaluation depends only on the support, bit for bit") {
    SmoothExpr f = parse("x1^2 + sin(x3)");
    auto support = f.support();
    CHECK(support.indices == std::vector<int>{1, 3});
    CHECK(support.contains(3));
    CHECK_FALSE(support.contains(2));
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        HVector x = rng.in_ball(HVector{}, 4.0, 6);
        std::vector<double> perturbed = x.coeffs();
        perturbed[1] += rng.uniform(-10.0, 10.0);  // x2: not in the support
        perturbed[3] = -99.0;                      // x4
        perturbed[5] = rng.normal();               // x6
        CHECK(f.eval(x) == f.eval(HVector(perturbed)));
    }
}

TEST_CASE("finite differences agree with the symbolic gradient") {
    Rng rng(17);
    SmoothExpr f = parse("exp(0.25*x1)*cos(x2) + 0.5*x1^3*x2");
    const double step = 1e-5;
    for (int trial = 0; trial < 50; ++trial) {
        HVector x = rng.in_ball(HVector{}, 3.0, 2);
        HVector v = rng.unit_direction({}, 2);
        double dd = directional_derivative(f, x, v);
        double fd = (f.eval(x + step * v) - f.eval(x - step * v)) / (2 * step);
        CHECK(std::abs(dd - fd) <= 1e-6 * std::max({1.0, std::abs(dd), std::abs(fd)}));
    }
}

TEST_CASE("substitute replaces coordinates") {
    // f(x1, x2) = x1 * x2 with x1 -> 2*x3 + 1, x2 -> x3
    SmoothExpr f = x1 * x2;
    SmoothExpr g = f.substitute([](int k) {
        if (k == 1) return 2.0 * SmoothExpr::coord(3) + SmoothExpr::constant(1.0);
        return SmoothExpr::coord(3);
    });
    CHECK(g.support().indices == std::vector<int>{3});
    for (double t : {0.0, 0.5, -2.0})
        CHECK(g.eval(HVector{0, 0, t}) == (2 * t + 1) * t);
}

TEST_CASE("light simplification keeps trees small") {
    CHECK((SmoothExpr::constant(2) + SmoothExpr::constant(3)).is_constant(5.0));
    CHECK((SmoothExpr::constant(0) * x1).is_constant(0.0));
    CHECK(SmoothExpr::int_pow(x1, 0).is_constant(1.0));
    CHECK(SmoothExpr::int_pow(SmoothExpr::constant(2), 10).is_constant(1024.0));
    CHECK(SmoothExpr::scale(1.0, x1).str() == "x1");
    CHECK((SmoothExpr::constant(0) + x1).str() == "x1");
}

TEST_CASE("is_polynomial flags sin/cos/exp") {
    CHECK(parse("x1^6 + 2*x2*x3").is_polynomial());
    CHECK_FALSE(parse("x1 + sin(x2)").is_polynomial());
}
