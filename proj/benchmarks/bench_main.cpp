#include <benchmark/benchmark.h>

#include <random>

#include "pschur/extension.hpp"
#include "pschur/inertia.hpp"
#include "pschur/interpolation.hpp"
#include "pschur/toeplitz.hpp"

namespace {

using namespace pschur;
using GR = GaussianRational;

std::vector<GR> random_coeffs(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-2, 2);
    std::uniform_int_distribution<int> den(1, 3);
    std::vector<GR> a(n);
    for (auto& v : a) v = GR(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    return a;
}

void BM_exact_inertia(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const auto a = random_coeffs(n, 1);
    const auto h = schur_gram(a, n, GramSide::Left);
    for (auto _ : state) benchmark::DoNotOptimize(inertia(h));
}
BENCHMARK(BM_exact_inertia)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_verify_identities(benchmark::State& state) {
    const auto a = random_coeffs(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(verify_identities(a));
}
BENCHMARK(BM_verify_identities)->Arg(4)->Arg(8);

void BM_extend_to_class(benchmark::State& state) {
    const std::vector<GR> c{GR(1), GR(2)};
    for (auto _ : state)
        benchmark::DoNotOptimize(extend_to_class(c, 1, 1, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_extend_to_class)->Arg(4)->Arg(8)->Arg(16);

void BM_solve_rectangular(benchmark::State& state) {
    InterpolationInstance inst;
    inst.points = {cdouble(0.0, 0.0), cdouble(0.4, 0.1), cdouble(-0.3, 0.2), cdouble(0.1, -0.5)};
    inst.A_values.assign(4, cdouble(1.0, 0.0));
    for (const auto& z : inst.points) inst.B_values.push_back(0.3 * z); // S(z) = 0.3 z data
    inst.base_index = 0;
    for (auto _ : state) benchmark::DoNotOptimize(solve_rectangular(inst));
}
BENCHMARK(BM_solve_rectangular);

} // namespace

BENCHMARK_MAIN();
