// Serial reference kernels against the OpenMP kernels on the same 2D field.

#include <benchmark/benchmark.h>

#include <random>

#include "nlg/energy.hpp"

using namespace nlg;

namespace {

struct Setup {
    BoxDomain box{2, Vec3{}, Vec3{1.0, 1.0}};
    double eps = 0.1;
    DirectionRule rule = build_direction_rule(2, QuadParams::defaults(2));
    SampledField u;

    explicit Setup(double h) {
        Mat3 A;
        A(0, 0) = 0.5;
        A(0, 1) = 0.3;
        A(1, 1) = -0.2;
        const AnalyticField f = AnalyticField::sum(
            {AnalyticField::affine(A), AnalyticField::plane_jump(Vec3{0.6, 0.8}, 0.7, Vec3{}, Vec3{1.5, -2.0})});
        u = sample(f, Grid(box, h));
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> d(-0.01, 0.01);
        for (auto& v : u.values) {
            v[0] += d(rng);
            v[1] += d(rng);
        }
    }
};

double grid_h(const benchmark::State& state) { return 1.0 / static_cast<double>(state.range(0)); }

void BM_averaged_parallel(benchmark::State& state) {
    const Setup s(grid_h(state));
    for (auto _ : state) benchmark::DoNotOptimize(averaged_energy(s.u, s.box, s.eps, s.rule).total);
}

void BM_averaged_serial(benchmark::State& state) {
    const Setup s(grid_h(state));
    for (auto _ : state) benchmark::DoNotOptimize(reference::averaged_energy(s.u, s.box, s.eps, s.rule));
}

void BM_gradient_parallel(benchmark::State& state) {
    const Setup s(grid_h(state));
    for (auto _ : state) benchmark::DoNotOptimize(energy_gradient(s.u, s.eps, s.rule).energy);
}

void BM_gradient_serial(benchmark::State& state) {
    const Setup s(grid_h(state));
    for (auto _ : state) benchmark::DoNotOptimize(reference::energy_gradient(s.u, s.eps, s.rule).energy);
}

void BM_pair_parallel(benchmark::State& state) {
    const Setup s(grid_h(state));
    for (auto _ : state) benchmark::DoNotOptimize(pair_energy(s.u, s.box, s.eps));
}

void BM_pair_serial(benchmark::State& state) {
    const Setup s(grid_h(state));
    for (auto _ : state) benchmark::DoNotOptimize(reference::pair_energy(s.u, s.box, s.eps));
}

}  // namespace

BENCHMARK(BM_averaged_parallel)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_averaged_serial)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gradient_parallel)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gradient_serial)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pair_parallel)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pair_serial)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
