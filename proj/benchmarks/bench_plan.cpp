#include <benchmark/benchmark.h>

#include <random>

#include "ppt/connectivity.hpp"
#include "ppt/generate.hpp"
#include "ppt/heegaard.hpp"

namespace {

std::vector<ppt::Presentation> trees(int max_events) {
    std::mt19937_64 rng(2);
    ppt::RandomOptions opt;
    opt.max_events = max_events;
    std::vector<ppt::Presentation> out;
    while (out.size() < 32) {
        auto p = ppt::random_presentation(rng, opt);
        if (ppt::fox_decision(ppt::build_connectivity(ppt::simulate(p))).yes) out.push_back(std::move(p));
    }
    return out;
}

void BM_Plan(benchmark::State& state) {
    auto ps = trees(static_cast<int>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(ppt::plan_reimbedding(ps[i++ % ps.size()]));
}
BENCHMARK(BM_Plan)->Arg(12)->Arg(24)->Arg(40);

void BM_PlanAndVerify(benchmark::State& state) {
    auto ps = trees(static_cast<int>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& p = ps[i++ % ps.size()];
        benchmark::DoNotOptimize(ppt::verify_plan(p, ppt::plan_reimbedding(p)));
    }
}
BENCHMARK(BM_PlanAndVerify)->Arg(24);

}  // namespace
