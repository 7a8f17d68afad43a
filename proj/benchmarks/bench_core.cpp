#include "succweave/canonical.hpp"
#include "succweave/layering.hpp"
#include "succweave/logic.hpp"
#include "succweave/weave.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace succweave;

Structure tri(std::size_t copies) {
    std::vector<SuccPair> edges;
    for (std::size_t i = 0; i < copies; ++i) {
        Element a = static_cast<Element>(3 * i);
        edges.emplace_back(a, a + 1);
        edges.emplace_back(a + 1, a + 2);
        edges.emplace_back(a + 2, a);
    }
    return Structure::graph(3 * copies, std::move(edges));
}

Structure rotate(const Structure& s, Element shift) {
    std::vector<SuccPair> edges;
    for (const auto& t : s.table(0))
        edges.emplace_back((t[0] + shift) % s.size(), (t[1] + shift) % s.size());
    return Structure::graph(s.size(), std::move(edges));
}

void BM_type_census(benchmark::State& state) {
    const Structure s = tri(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(type_census(s, 1, false));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_type_census)->Range(8, 128)->Complexity();

void BM_canonical_type(benchmark::State& state) {
    const Structure s = tri(16);
    const PointedStructure nb = neighborhood(s, 0, 1, false);
    for (auto _ : state) benchmark::DoNotOptimize(canonical_type(nb, 1));
}
BENCHMARK(BM_canonical_type);

void BM_weave_pair(benchmark::State& state) {
    const Structure g1 = tri(static_cast<std::size_t>(state.range(0)));
    const Structure g2 = rotate(g1, 5);
    for (auto _ : state) {
        ParamsBundle params = ParamsBundle::forced(1, 2, 2);
        benchmark::DoNotOptimize(weave_pair(g1, g2, params));
    }
}
BENCHMARK(BM_weave_pair)->Arg(30)->Arg(60);

void BM_short_cycle(benchmark::State& state) {
    const Structure g1 = tri(30);
    const Structure g2 = rotate(g1, 5);
    WeaveResult result = weave_pair(g1, g2, ParamsBundle::forced(1, 2, 2));
    const Structure enriched = g1.with_succ(result.succ_pairs(1));
    for (auto _ : state) benchmark::DoNotOptimize(short_cycle_through_s(enriched, 1));
}
BENCHMARK(BM_short_cycle);

void BM_ef_game(benchmark::State& state) {
    const Structure a = Structure::graph(3, {{0, 1}, {1, 2}, {2, 0}});
    const Structure b = Structure::graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    for (auto _ : state) benchmark::DoNotOptimize(ef_equivalent(a, b, 3));
}
BENCHMARK(BM_ef_game);

} // namespace

BENCHMARK_MAIN();
