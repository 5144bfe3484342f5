#include <cmath>

#include <benchmark/benchmark.h>

#include "pf/dist.hpp"
#include "pf/oracle.hpp"
#include "pf/solver.hpp"

namespace {

pf::PfInstance bench_instance(double r_fraction, std::size_t n = 4) {
    pf::Prior prior = pf::validate_prior({1.0 / 3, 1.0 / 3, 1.0 / 3});
    pf::Channel channel = pf::validate_channel({{0.9, 0.08, 0.4},
                                                {0.025, 0.82, 0.05},
                                                {0.075, 0.1, 0.55}});
    const double r = r_fraction * pf::entropy(prior);
    return pf::make_instance(std::move(prior), std::move(channel), n, r);
}

void BM_solve_mid(benchmark::State& state) {
    const pf::PfInstance inst = bench_instance(0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pf::solve(inst, pf::SolveConfig{}));
    }
}
BENCHMARK(BM_solve_mid);

void BM_single_step(benchmark::State& state) {
    const pf::PfInstance inst = bench_instance(0.5);
    const pf::SolveConfig config;
    pf::SolverState s = pf::init_state(inst, config);
    pf::step(s, inst, config);  // warm up past the first iterate
    for (auto _ : state) {
        pf::SolverState copy = s;
        benchmark::DoNotOptimize(pf::step(copy, inst, config));
    }
}
BENCHMARK(BM_single_step);

void BM_grid_search(benchmark::State& state) {
    pf::Prior prior = pf::validate_prior({0.4, 0.6});
    pf::Channel channel = pf::validate_channel({{0.8, 0.3}, {0.2, 0.7}});
    const double r = 0.5 * pf::entropy(prior);
    const pf::PfInstance inst =
        pf::make_instance(std::move(prior), std::move(channel), 2, r);
    pf::GridSpec spec;
    spec.step = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pf::grid_search(inst, spec));
    }
}
BENCHMARK(BM_grid_search);

}  // namespace

BENCHMARK_MAIN();
