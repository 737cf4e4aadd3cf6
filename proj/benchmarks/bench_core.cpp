#include <benchmark/benchmark.h>

#include "entanglecert/certify.hpp"
#include "entanglecert/metrics.hpp"
#include "entanglecert/monitor.hpp"
#include "entanglecert/protocol.hpp"

using namespace entanglecert;

static void BM_HermitianEigensystem(benchmark::State& state) {
    const DensityMatrix rho = mixed_state(0.3);
    for (auto _ : state) {
        auto sys = hermitian_eigensystem(rho.m);
        benchmark::DoNotOptimize(sys);
    }
}
BENCHMARK(BM_HermitianEigensystem);

static void BM_Concurrence(benchmark::State& state) {
    const DensityMatrix rho = mixed_state(0.3);
    for (auto _ : state) {
        double c = concurrence(rho);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_Concurrence);

static void BM_WitnessExact(benchmark::State& state) {
    const DensityMatrix rho = DensityMatrix::from_pure(PureState::bell_phi_plus());
    for (auto _ : state) {
        auto result = witness_weak(rho, 0.7, 0.7);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_WitnessExact);

static void BM_RunTrial(benchmark::State& state) {
    const DensityMatrix rho = DensityMatrix::from_pure(PureState::bell_phi_plus());
    RngStream rng(1, 0);
    for (auto _ : state) {
        auto trial = run_trial(rho, 0.6, 0.8, BlochVector::z_axis(), BlochVector::z_axis(),
                               ReversalPolicy::all_branches, rng);
        benchmark::DoNotOptimize(trial);
    }
}
BENCHMARK(BM_RunTrial);

static void BM_CertifySampled(benchmark::State& state) {
    const DensityMatrix rho = DensityMatrix::from_pure(PureState::bell_phi_plus());
    const long shots = state.range(0);
    std::uint64_t run = 0;
    for (auto _ : state) {
        auto result = certify_sampled(rho, Test::chsh, 1.0, 1.0, shots, RngStream(7, run++));
        benchmark::DoNotOptimize(result);
    }
    state.SetItemsProcessed(state.iterations() * shots * 4);
}
BENCHMARK(BM_CertifySampled)->Arg(1000)->Arg(10000);

static void BM_AveragedEof(benchmark::State& state) {
    const DensityMatrix rho = DensityMatrix::from_pure(PureState::bell_phi_plus());
    const AveragingPlan plan = AveragingPlan::witness_plan();
    for (auto _ : state) {
        double e = averaged_quantity(rho, plan, 0.5, 0.5, [](const DensityMatrix& m) {
            return entanglement_of_formation(std::min(1.0, concurrence(m)));
        });
        benchmark::DoNotOptimize(e);
    }
}
BENCHMARK(BM_AveragedEof);

static void BM_OuPath(benchmark::State& state) {
    for (auto _ : state) {
        OUProcess process;
        RngStream rng(3, 0);
        double last = 0.0;
        for (int i = 0; i < 1000; ++i) last = process.step(rng);
        benchmark::DoNotOptimize(last);
    }
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_OuPath);

BENCHMARK_MAIN();
