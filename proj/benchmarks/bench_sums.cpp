#include <benchmark/benchmark.h>

#include "weylscope/budget.hpp"
#include "weylscope/gauss_sums.hpp"
#include "weylscope/moments.hpp"
#include "weylscope/phase.hpp"
#include "weylscope/phase_vector.hpp"
#include "weylscope/sequence_sums.hpp"
#include "weylscope/structure_detect.hpp"
#include "weylscope/weyl_sums.hpp"

using namespace weylscope;

static void BM_weyl_sum(benchmark::State& state) {
    PhaseVector x({0.137, 0.294, 0.512});
    auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        ComplexSum s = eval_weyl_sum(x, 0, n, Budget(1ull << 40));
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(BM_weyl_sum)->RangeMultiplier(4)->Range(1 << 10, 1 << 20);

static void BM_gauss_rational(benchmark::State& state) {
    // mod-p circle table path
    for (auto _ : state) {
        ComplexSum s = eval_complete_gauss(3, 5, 9973);
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 9973);
}
BENCHMARK(BM_gauss_rational);

static void BM_unit_circle(benchmark::State& state) {
    phase64 v = 0x9e3779b97f4a7c15ull;
    for (auto _ : state) {
        v += 0x9e3779b97f4a7c15ull;
        benchmark::DoNotOptimize(unit_circle(v));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_unit_circle);

static void BM_grid_scan_row(benchmark::State& state) {
    // one 2^10 grid row: the inner loop of the structure sweep
    auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        std::vector<phase64> turns{0x0123456789abcdefull, 0};
        CompensatedSum total;
        for (std::uint64_t col = 0; col < 1024; ++col) {
            turns[1] = col << 54;
            PolyPhaseStepper step(turns, 1);
            CompensatedSum acc;
            for (std::uint64_t t = 0; t < n; ++t) {
                acc.add(unit_circle(step.current()));
                step.advance();
            }
            total.add(acc.value());
        }
        benchmark::DoNotOptimize(total);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 1024 *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(BM_grid_scan_row)->Arg(1024)->Arg(4096);

static void BM_completion_sum(benchmark::State& state) {
    SequenceSpec f = SequenceSpec::monomial(2);
    auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        double w = eval_completion_sum(f, ScalarPhase::of(0.31), n, Budget(1ull << 40));
        benchmark::DoNotOptimize(w);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>((2 * n + 1) * n));
}
BENCHMARK(BM_completion_sum)->Arg(128)->Arg(512);

static void BM_exact_moment_join(benchmark::State& state) {
    SequenceSpec f = SequenceSpec::monomial(2);
    auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        MomentResult m = exact_even_moment(f, 4, n, Budget(1ull << 40));
        benchmark::DoNotOptimize(m);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_exact_moment_join)->Arg(256)->Arg(1024)->Arg(4096);

static void BM_detect_gauss(benchmark::State& state) {
    PhaseVector x({3.0 / 7.0 + 1e-9, 2.0 / 7.0 + 1e-10});
    double a = eval_weyl_sum(x, 0, 4096, Budget(1ull << 40)).abs();
    for (auto _ : state) {
        auto det = detect_gauss_structure(x, 4096, a);
        benchmark::DoNotOptimize(det);
    }
}
BENCHMARK(BM_detect_gauss);

BENCHMARK_MAIN();
