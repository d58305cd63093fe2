#include <benchmark/benchmark.h>

#include "ppt/bipartite.hpp"

namespace {

ppt::BipartiteGraph complete(int n) {
    ppt::BipartiteGraph g;
    g.a_count = g.b_count = n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) g.edges.emplace_back(i, j);
    }
    return g;
}

void BM_EmbedFlatten(benchmark::State& state) {
    auto g = complete(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto emb = ppt::embed_bipartite(g);
        benchmark::DoNotOptimize(ppt::flatten(emb));
    }
}
BENCHMARK(BM_EmbedFlatten)->Arg(3)->Arg(6)->Arg(10);

void BM_Replay(benchmark::State& state) {
    auto emb = ppt::embed_bipartite(complete(static_cast<int>(state.range(0))));
    auto schedule = ppt::flatten(emb);
    for (auto _ : state) benchmark::DoNotOptimize(ppt::replay(emb, schedule));
}
BENCHMARK(BM_Replay)->Arg(3)->Arg(6)->Arg(10);

}  // namespace
