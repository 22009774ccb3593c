#include <benchmark/benchmark.h>

#include "pda/caching.hpp"
#include "pda/constructions.hpp"
#include "pda/search.hpp"
#include "pda/verify.hpp"

namespace {

void BM_Verify(benchmark::State& state) {
    const auto s = static_cast<std::size_t>(state.range(0));
    const pda::Grid g = pda::optimal_fz2(7, s).grid;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pda::verify(g, 5));
    }
    state.counters["cells"] = static_cast<double>(g.rows() * g.cols());
}
BENCHMARK(BM_Verify)->Arg(10)->Arg(31)->Arg(100);

void BM_OptimalFz2(benchmark::State& state) {
    const auto f = static_cast<std::size_t>(state.range(0));
    const auto s = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pda::optimal_fz2(f, s));
    }
}
BENCHMARK(BM_OptimalFz2)->Args({6, 20})->Args({7, 31})->Args({13, 89});

void BM_MaxK(benchmark::State& state) {
    pda::SearchConfig cfg;
    cfg.prune_with_bounds = state.range(1) != 0;
    const auto s = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        const auto out = pda::max_k(4, 2, s, cfg);
        benchmark::DoNotOptimize(out.optimum);
        state.counters["nodes"] = static_cast<double>(out.nodes_visited);
    }
}
BENCHMARK(BM_MaxK)->Args({6, 0})->Args({7, 0})->Args({7, 1})->Unit(benchmark::kMillisecond);

void BM_Simulate(benchmark::State& state) {
    const pda::Grid g = pda::optimal_fz2(5, static_cast<std::size_t>(state.range(0))).grid;
    pda::caching::Instance inst;
    inst.n_files = 4;
    inst.k_users = g.cols();
    inst.f_subfiles = g.rows();
    inst.subfile_size = 256;
    inst.demands.resize(g.cols());
    for (std::size_t k = 0; k < g.cols(); ++k) {
        inst.demands[k] = k % inst.n_files;
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(pda::caching::simulate(g, inst));
    }
    state.counters["users"] = static_cast<double>(g.cols());
}
BENCHMARK(BM_Simulate)->Arg(8)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
