#include <benchmark/benchmark.h>

#include "hadafact/dual.hpp"
#include "hadafact/factorization.hpp"
#include "hadafact/parser.hpp"
#include "hadafact/taylor.hpp"

namespace hf = hadafact;

namespace {

const hf::SmoothExpr& sample_function() {
    static const hf::SmoothExpr f =
        hf::parse("0.05*x1*x2*(1 + x3^2) + sin(0.5*x1*x2) + exp(0.2*x4)");
    return f;
}

const hf::HVector& sample_point() {
    static const hf::HVector x{0.7, -1.3, 0.4, 1.1};
    return x;
}

void BM_Parse(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(hf::parse("x1^2 + sin(x2)*x3 - 0.5*exp(0.2*x1*x4)"));
}
BENCHMARK(BM_Parse);

void BM_Eval(benchmark::State& state) {
    const auto& f = sample_function();
    const auto& x = sample_point();
    for (auto _ : state) benchmark::DoNotOptimize(f.eval(x));
}
BENCHMARK(BM_Eval);

void BM_Gradient(benchmark::State& state) {
    const auto& f = sample_function();
    const auto& x = sample_point();
    for (auto _ : state) benchmark::DoNotOptimize(hf::gradient(f, x));
}
BENCHMARK(BM_Gradient);

void BM_DualEval(benchmark::State& state) {
    const auto& f = sample_function();
    hf::DualVector w{sample_point(), hf::HVector{1.0, 0.5, -0.25, 2.0}};
    for (auto _ : state) benchmark::DoNotOptimize(hf::eval(f, w));
}
BENCHMARK(BM_DualEval);

void BM_Reconstruct(benchmark::State& state) {
    hf::HadamardFactorization fact(sample_function(), hf::HVector{}, hf::StarDomain{},
                                   hf::QuadratureSpec{static_cast<int>(state.range(0))});
    const auto& x = sample_point();
    for (auto _ : state) benchmark::DoNotOptimize(fact.reconstruct(x));
}
BENCHMARK(BM_Reconstruct)->Arg(8)->Arg(32);

void BM_NestedFactor(benchmark::State& state) {
    hf::HadamardFactorization fact =
        hf::decompose(sample_function(), hf::HVector{}).refactor(1).refactor(2);
    const auto& x = sample_point();
    for (auto _ : state) benchmark::DoNotOptimize(fact.factor(1, x));
}
BENCHMARK(BM_NestedFactor);

void BM_TaylorBuild(benchmark::State& state) {
    const auto& f = sample_function();
    for (auto _ : state) benchmark::DoNotOptimize(hf::taylor(f, hf::HVector{}, 2));
}
BENCHMARK(BM_TaylorBuild);

}  // namespace

BENCHMARK_MAIN();
