#include <benchmark/benchmark.h>

#include <semistab/semistab.hpp>

#include <cmath>
#include <numbers>

using namespace semistab;

namespace {

void BM_CantorTransformFactorized(benchmark::State& state) {
    const auto mu = DiscreteMeasure::cantor(static_cast<unsigned>(state.range(0)));
    double t = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fourier_transform(mu, t));
        t += 0.37;
    }
}
BENCHMARK(BM_CantorTransformFactorized)->Arg(12)->Arg(20);

void BM_CantorTransformDirect(benchmark::State& state) {
    const auto mu = DiscreteMeasure::cantor(static_cast<unsigned>(state.range(0)));
    double t = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fourier_transform_direct(mu, t));
        t += 0.37;
    }
}
BENCHMARK(BM_CantorTransformDirect)->Arg(12)->Arg(16);

void BM_MatrixWeakOrbit(benchmark::State& state) {
    instances::Rng rng(1);
    const auto n = state.range(0);
    const auto p = instances::random_stable_generator(n, rng);
    const MatrixSemigroup sg{MatrixGenerator(p.a)};
    const ComplexVector x = instances::random_vector(n, rng);
    const auto grid = TimeGrid::from_horizon(100.0, 0.01);
    for (auto _ : state) {
        benchmark::DoNotOptimize(weak_orbit(sg, x, x, grid));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(BM_MatrixWeakOrbit)->Arg(5)->Arg(32);

void BM_AbelSquareIntegral(benchmark::State& state) {
    instances::Rng rng(2);
    const auto p = instances::random_stable_generator(5, rng, -0.1, true);
    const MatrixSemigroup sg{MatrixGenerator(p.a)};
    const ResolventProbe probe(sg);
    const ComplexVector x = instances::random_vector(5, rng);
    const double a = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(abel_square_integral(probe, x, x, a));
    }
}
BENCHMARK(BM_AbelSquareIntegral)->DenseRange(1, 4);

void BM_PlancherelCheck(benchmark::State& state) {
    instances::Rng rng(3);
    const auto p = instances::random_stable_generator(5, rng);
    const MatrixSemigroup sg{MatrixGenerator(p.a)};
    const ResolventProbe probe(sg);
    const ComplexVector x = instances::random_vector(5, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(plancherel_check(probe, x, x, 0.1, 150.0));
    }
}
BENCHMARK(BM_PlancherelCheck)->Unit(benchmark::kMillisecond);

void BM_InverseLaplace(benchmark::State& state) {
    instances::Rng rng(4);
    const auto p = instances::random_stable_generator(5, rng);
    const MatrixSemigroup sg{MatrixGenerator(p.a)};
    const ResolventProbe probe(sg);
    const ComplexVector x = instances::random_vector(5, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(inverse_laplace_orbit(probe, x, x, 2.0));
    }
}
BENCHMARK(BM_InverseLaplace)->Unit(benchmark::kMillisecond);

void BM_HomoclinicTrajectory(benchmark::State& state) {
    const Flow flow = Flow::homoclinic();
    FlowPoint x0(2);
    x0 << 0.5, 0.0;
    const auto grid = TimeGrid::from_horizon(static_cast<double>(state.range(0)), 0.01);
    for (auto _ : state) {
        benchmark::DoNotOptimize(flow.trajectory(x0, grid));
    }
}
BENCHMARK(BM_HomoclinicTrajectory)->Arg(100)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_DensityExtract(benchmark::State& state) {
    const auto grid = TimeGrid::from_horizon(1e4, 0.01);
    std::vector<Complex> v(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        v[k] = std::abs(std::cos(grid.time(k))) / std::sqrt(1.0 + grid.time(k));
    }
    const Signal s(grid, std::move(v));
    for (auto _ : state) {
        benchmark::DoNotOptimize(density_one_extract(s));
    }
}
BENCHMARK(BM_DensityExtract)->Unit(benchmark::kMillisecond);

void BM_ClassifyCantor(benchmark::State& state) {
    const MultiplicationSemigroup backend(DiscreteMeasure::cantor(20));
    ClassifyConfig cfg;
    cfg.horizon = 1e3;
    for (int n = 1; n <= 6; ++n) {
        cfg.adversarial_probes.push_back(2.0 * std::numbers::pi * std::pow(3.0, n));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify(backend, {{backend.ones(), backend.ones()}}, cfg));
    }
}
BENCHMARK(BM_ClassifyCantor)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
