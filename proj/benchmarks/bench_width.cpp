#include <benchmark/benchmark.h>

#include "ppt/knot_width.hpp"

namespace {

void BM_EnumerateWidths(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        std::int64_t total = 0;
        ppt::enumerate_words(n, [&](const ppt::KnotWord& w) { total += ppt::width(w); });
        benchmark::DoNotOptimize(total);
    }
}
BENCHMARK(BM_EnumerateWidths)->Arg(12)->Arg(16)->Arg(20);

void BM_WidthFormula(benchmark::State& state) {
    auto w = ppt::KnotWord::parse("mmmmmMMMmmMMmmMMMM");
    for (auto _ : state) benchmark::DoNotOptimize(ppt::width_formula(ppt::thick_thin(w)));
}
BENCHMARK(BM_WidthFormula);

}  // namespace
