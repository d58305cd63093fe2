#include <benchmark/benchmark.h>

#include <random>

#include "ppt/connectivity.hpp"
#include "ppt/generate.hpp"
#include "ppt/sweep.hpp"

namespace {

std::vector<ppt::Presentation> words(int max_events) {
    std::mt19937_64 rng(1);
    ppt::RandomOptions opt;
    opt.max_events = max_events;
    std::vector<ppt::Presentation> out;
    for (int i = 0; i < 64; ++i) out.push_back(ppt::random_presentation(rng, opt));
    return out;
}

void BM_Simulate(benchmark::State& state) {
    auto ws = words(static_cast<int>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(ppt::simulate(ws[i++ % ws.size()]));
}
BENCHMARK(BM_Simulate)->Arg(10)->Arg(30)->Arg(100);

void BM_ConnectivityAndOracle(benchmark::State& state) {
    auto ws = words(static_cast<int>(state.range(0)));
    std::vector<ppt::Trace> traces;
    for (const auto& w : ws) traces.push_back(ppt::simulate(w));
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& t = traces[i++ % traces.size()];
        auto g = ppt::build_connectivity(t);
        benchmark::DoNotOptimize(ppt::oracle_check(t, g));
    }
}
BENCHMARK(BM_ConnectivityAndOracle)->Arg(30)->Arg(100);

}  // namespace
