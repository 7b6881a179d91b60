#include <benchmark/benchmark.h>

#include <random>
#include <set>

#include "temporeach/reach.hpp"
#include "temporeach/solvers.hpp"
#include "temporeach/testkit.hpp"
#include "temporeach/treedp.hpp"
#include "temporeach/twdp.hpp"

using namespace temporeach;

namespace {

TemporalGraph random_connected(std::uint64_t seed, int n, int m, int labels, Time lifetime) {
    std::mt19937_64 rng(seed);
    std::set<std::pair<int, int>> pairs;
    for (int v = 1; v < n; ++v) pairs.insert({static_cast<int>(rng() % v), v});
    while (static_cast<int>(pairs.size()) < m) {
        int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
        if (a != b) pairs.insert({std::min(a, b), std::max(a, b)});
    }
    std::vector<EdgeSpec> edges;
    for (auto [a, b] : pairs) {
        std::set<Time> ls;
        while (static_cast<int>(ls.size()) < labels) ls.insert(1 + static_cast<Time>(rng() % lifetime));
        edges.push_back({a, b, {ls.begin(), ls.end()}});
    }
    return TemporalGraph(n, std::move(edges));
}

TemporalGraph random_tree(std::uint64_t seed, int n, Time lifetime) {
    std::mt19937_64 rng(seed);
    std::vector<EdgeSpec> edges;
    for (int v = 1; v < n; ++v) edges.push_back({static_cast<int>(rng() % v), v, {1 + static_cast<Time>(rng() % lifetime)}});
    return TemporalGraph(n, std::move(edges));
}

void BM_ForemostTree(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    TemporalGraph g = random_connected(1, n, 3 * n, 2, n / 10 + 5);
    for (auto _ : state) benchmark::DoNotOptimize(foremost_tree(g, 0).reach_count());
    state.SetComplexityN(n);
}
BENCHMARK(BM_ForemostTree)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_Trp(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    TemporalGraph g = random_connected(2, n, 3 * n, 2, n / 10 + 5);
    for (auto _ : state) benchmark::DoNotOptimize(solve_trp(g, 5, n).reach_count);
    state.SetComplexityN(n);
}
BENCHMARK(BM_Trp)->RangeMultiplier(2)->Range(256, 2048)->Unit(benchmark::kMillisecond)->Complexity();

void BM_XpSingleMove(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    TrlpInstance inst;
    // one isolated vertex keeps h out of reach, so every subset is explored
    inst.graph = TemporalGraph(n, random_connected(3, n - 1, 2 * n, 2, 40).specs());
    inst.delta = 1;
    inst.zeta = 1;
    inst.h = n;
    for (auto _ : state) benchmark::DoNotOptimize(solve_trlp_xp(inst).answer);
    state.SetComplexityN(n);
}
BENCHMARK(BM_XpSingleMove)->RangeMultiplier(2)->Range(25, 100)->Unit(benchmark::kMillisecond)->Complexity();

void BM_XpTwoMoves(benchmark::State& state) {
    TrlpInstance inst;
    inst.graph = TemporalGraph(30, random_connected(4, 29, 45, 2, 20).specs());
    inst.delta = 1;
    inst.zeta = 2;
    inst.h = 30;
    for (auto _ : state) benchmark::DoNotOptimize(solve_trlp_xp(inst).answer);
}
BENCHMARK(BM_XpTwoMoves)->Unit(benchmark::kMillisecond);

void BM_TreeDp(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    TrlpInstance inst;
    inst.graph = random_tree(5, n, 8);
    inst.delta = 1;
    inst.zeta = static_cast<int>(state.range(1));
    inst.h = n;
    for (auto _ : state) benchmark::DoNotOptimize(solve_trlp_tree(inst, 0).reach_count);
    state.SetComplexityN(n);
}
BENCHMARK(BM_TreeDp)->ArgsProduct({{50, 100, 200, 400}, {1, 3}})->Unit(benchmark::kMillisecond);

void BM_TreewidthDp(benchmark::State& state) {
    RandomSpec spec;
    spec.n_min = spec.n_max = static_cast<int>(state.range(0));
    spec.max_edges = 2 * spec.n_max;
    spec.max_time = 2;
    spec.max_delta = 1;
    spec.max_zeta = 2;
    TrlpInstance inst = random_instance(6, Profile::Treewidth2, spec);
    inst.zeta = 2;
    inst.h = std::min(4, inst.graph.vertex_count());
    TreeDecomposition d = decompose_exact_small(inst.graph);
    for (auto _ : state) benchmark::DoNotOptimize(solve_trlp_treewidth_source(inst, d, 0).answer);
}
BENCHMARK(BM_TreewidthDp)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_OracleMicro(benchmark::State& state) {
    RandomSpec spec;
    spec.n_max = 5;
    spec.max_edges = 5;
    spec.max_time = 3;
    TrlpInstance inst = random_instance(7, Profile::Sparse, spec);
    inst.zeta = 3;
    for (auto _ : state) benchmark::DoNotOptimize(oracle_max_reach(inst.graph, inst.delta, inst.zeta).best);
}
BENCHMARK(BM_OracleMicro)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
