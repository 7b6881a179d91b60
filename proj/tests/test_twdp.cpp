#include <gtest/gtest.h>

#include <algorithm>
#include <functional>

#include "support.hpp"
#include "temporeach/errors.hpp"
#include "temporeach/treedp.hpp"
#include "temporeach/twdp.hpp"
#include "temporeach/verify.hpp"

using namespace temporeach;

namespace {

TrlpInstance make(TemporalGraph g, int delta, int zeta, int h) {
    TrlpInstance inst;
    inst.graph = std::move(g);
    inst.delta = delta;
    inst.zeta = zeta;
    inst.h = h;
    return inst;
}

TemporalGraph cycle4() { return support::graph(4, {{0, 1, {1}}, {1, 2, {1}}, {2, 3, {1}}, {0, 3, {1}}}); }

TemporalGraph k4() {
    return support::graph(4, {{0, 1, {1}}, {0, 2, {1}}, {0, 3, {1}}, {1, 2, {1}}, {1, 3, {1}}, {2, 3, {1}}});
}

// Treewidth by trying every elimination order.
int width_by_orders(const TemporalGraph& g) {
    const int n = g.vertex_count();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    int best = n;
    do {
        std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
        for (const auto& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;
        std::vector<char> gone(n, 0);
        int w = 0;
        for (int v : order) {
            std::vector<int> nb;
            for (int u = 0; u < n; ++u)
                if (!gone[u] && adj[v][u]) nb.push_back(u);
            w = std::max<int>(w, static_cast<int>(nb.size()));
            for (int a : nb)
                for (int b : nb)
                    if (a != b) adj[a][b] = 1;
            gone[v] = 1;
        }
        best = std::min(best, w);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

RandomSpec tw_spec() {
    RandomSpec s;
    s.n_min = 3;
    s.n_max = 6;
    s.max_edges = 8;
    s.max_time = 2;
    s.max_delta = 1;
    s.max_zeta = 2;
    return s;
}

}  // namespace

TEST(Decomposition, ExactWidths) {
    EXPECT_EQ(decompose_exact_small(support::graph(4, {{0, 1, {1}}, {1, 2, {1}}, {1, 3, {1}}})).width(), 1);
    EXPECT_EQ(decompose_exact_small(cycle4()).width(), 2);
    EXPECT_EQ(decompose_exact_small(k4()).width(), 3);
    EXPECT_EQ(width_by_orders(cycle4()), 2);
}

TEST(Decomposition, MatchesEliminationOrders) {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        TemporalGraph g = random_instance(seed, Profile::Sparse).graph;
        TreeDecomposition d = decompose_exact_small(g);
        EXPECT_NO_THROW(d.validate(g));
        EXPECT_EQ(d.width(), std::max(0, width_by_orders(g))) << "seed " << seed;
    }
}

TEST(Decomposition, SizeGuard) {
    std::vector<EdgeSpec> edges;
    for (int v = 1; v < 21; ++v) edges.push_back({v - 1, v, {1}});
    EXPECT_THROW(decompose_exact_small(TemporalGraph(21, edges)), Refusal);
}

TEST(Decomposition, ValidateRejectsBrokenAxioms) {
    TemporalGraph path = support::graph(3, {{0, 1, {1}}, {1, 2, {1}}});
    TreeDecomposition missing_edge{{{0}, {1, 2}}, {{0, 1}}};
    EXPECT_THROW(missing_edge.validate(path), InvalidInput);
    TreeDecomposition disconnected{{{0, 1}, {2}, {1, 2}}, {{0, 1}, {1, 2}}};
    EXPECT_THROW(disconnected.validate(path), InvalidInput);
    TreeDecomposition fine{{{0, 1}, {1, 2}}, {{0, 1}}};
    EXPECT_NO_THROW(fine.validate(path));
}

TEST(Decomposition, TextRoundTrip) {
    TreeDecomposition d = decompose_exact_small(cycle4());
    std::string text = serialize_decomposition(d);
    TreeDecomposition back = parse_decomposition_string(text);
    EXPECT_EQ(back.bags, d.bags);
    EXPECT_EQ(serialize_decomposition(back), text);
    EXPECT_THROW(parse_decomposition_string("b 0 1\nt 0 9\n"), ParseError);
}

TEST(Nice, PathChain) {
    TemporalGraph path = support::graph(3, {{0, 1, {1}}, {1, 2, {1}}});
    TreeDecomposition d{{{0, 1}, {1, 2}}, {{0, 1}}};
    NiceDecomposition nd = make_nice(path, d, 0);
    EXPECT_NO_THROW(nd.validate(path, 0));
    EXPECT_EQ(nd.nodes[nd.root].bag, std::vector<Vertex>{0});
    EXPECT_EQ(nd.width(), 1);
}

TEST(Nice, SingleVertex) {
    TemporalGraph g(1, {});
    TreeDecomposition d{{{0}}, {}};
    NiceDecomposition nd = make_nice(g, d, 0);
    EXPECT_NO_THROW(nd.validate(g, 0));
    EXPECT_EQ(nd.nodes[nd.root].bag, std::vector<Vertex>{0});
}

TEST(Nice, ValidForEverySource) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        TemporalGraph g = random_instance(seed, Profile::Treewidth2, tw_spec()).graph;
        TreeDecomposition d = decompose_exact_small(g);
        for (Vertex s = 0; s < g.vertex_count(); ++s) {
            NiceDecomposition nd = make_nice(g, d, s);
            EXPECT_NO_THROW(nd.validate(g, s));
            EXPECT_EQ(nd.width(), d.width());
            for (const auto& node : nd.nodes) {
                if (node.kind == NiceKind::Join) EXPECT_EQ(node.children.size(), 2u);
                if (node.kind == NiceKind::Leaf) EXPECT_TRUE(node.bag.empty());
            }
        }
    }
}

TEST(TwDp, CycleExample) {
    TrlpInstance inst = make(cycle4(), 1, 2, 4);
    SolveResult r = solve_trlp_treewidth(inst, decompose_exact_small(inst.graph));
    EXPECT_EQ(r.answer, support::brute_best_reach(inst.graph, 1, 2) >= 4);
    if (r.answer) EXPECT_TRUE(verify_reach(inst.graph, r.certificate, r.source, 4).valid);
}

TEST(TwDp, TrivialTarget) {
    TrlpInstance inst = make(cycle4(), 1, 0, 1);
    EXPECT_TRUE(solve_trlp_treewidth(inst, decompose_exact_small(inst.graph)).answer);
}

TEST(TwDp, MatchesOracleWithJoinFixpoint) {
    TwOptions opt;
    opt.check_join_fixpoint = true;
    std::int64_t violations = 0;
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        TrlpInstance inst = random_instance(500 + seed, Profile::Treewidth2, tw_spec());
        TreeDecomposition d = decompose_exact_small(inst.graph);
        auto best = support::brute_reach_per_source(inst.graph, inst.delta, inst.zeta);
        for (int h = 1; h <= std::min(4, inst.graph.vertex_count()); ++h) {
            inst.h = h;
            for (Vertex s = 0; s < inst.graph.vertex_count(); ++s) {
                TwStats stats;
                SolveResult r = solve_trlp_treewidth_source(inst, d, s, opt, &stats);
                violations += stats.join_fixpoint_violations;
                ASSERT_EQ(r.answer, best[s] >= h) << "seed " << seed << " h " << h << " source " << s;
                if (r.answer) {
                    VerifyReport v = verify_reach(inst.graph, r.certificate, s, h);
                    EXPECT_TRUE(v.valid) << v.reason;
                }
            }
        }
    }
    EXPECT_EQ(violations, 0);
}

TEST(TwDp, AgreesWithTreeDp) {
    RandomSpec spec = tw_spec();
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        TrlpInstance inst = random_instance(seed, Profile::Tree, spec);
        TreeDecomposition d = decompose_exact_small(inst.graph);
        for (int h = 1; h <= inst.graph.vertex_count(); ++h) {
            inst.h = h;
            EXPECT_EQ(solve_trlp_treewidth(inst, d).answer, solve_trlp_tree_all_sources(inst).answer);
        }
    }
}

TEST(TwDp, StateCapRefuses) {
    TrlpInstance inst = make(k4(), 1, 2, 4);
    TwOptions opt;
    opt.state_cap = 1;
    try {
        solve_trlp_treewidth(inst, decompose_exact_small(inst.graph), opt);
        FAIL() << "expected refusal";
    } catch (const Refusal& r) {
        EXPECT_EQ(r.reason(), "state-cap");
    }
}
