#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "temporeach/solvers.hpp"
#include "temporeach/treedp.hpp"
#include "temporeach/verify.hpp"

using namespace temporeach;

namespace {

// Best profit per capacity by trying every combination (one item per class).
std::vector<std::optional<int>> mckp_exhaustive(const MckpInstance& inst) {
    std::vector<std::optional<int>> best(inst.capacity + 1);
    std::vector<int> idx(inst.classes.size(), 0);
    while (true) {
        int w = 0, p = 0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            w += inst.classes[i][idx[i]].weight;
            p += inst.classes[i][idx[i]].profit;
        }
        for (int c = w; c <= inst.capacity; ++c)
            if (!best[c] || p > *best[c]) best[c] = p;
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == static_cast<int>(inst.classes[i].size())) idx[i++] = 0;
        if (i == idx.size()) break;
    }
    return best;
}

TrlpInstance make(TemporalGraph g, int delta, int zeta, int h) {
    TrlpInstance inst;
    inst.graph = std::move(g);
    inst.delta = delta;
    inst.zeta = zeta;
    inst.h = h;
    return inst;
}

RandomSpec tree_spec() {
    RandomSpec s;
    s.n_min = 2;
    s.n_max = 7;
    s.max_time = 3;
    s.max_delta = 2;
    s.max_zeta = 3;
    return s;
}

}  // namespace

TEST(Mckp, TwoClassExample) {
    MckpInstance inst{2, {{{0, 0}, {1, 3}}, {{0, 0}, {2, 4}}}};
    MckpSolution sol = mckp_solve(inst);
    EXPECT_EQ(sol.best[2], 4);
    EXPECT_EQ(sol.best[2], mckp_exhaustive(inst)[2]);
}

TEST(Mckp, WeightlessItems) {
    MckpInstance inst{3, {{{0, 1}, {0, 5}}, {{0, 2}, {0, 7}, {0, 3}}}};
    MckpSolution sol = mckp_solve(inst);
    for (int w = 0; w <= 3; ++w) EXPECT_EQ(sol.best[w], 12);
}

TEST(Mckp, ForcedSingleItem) {
    MckpInstance inst{3, {{{0, 0}}}};
    MckpSolution sol = mckp_solve(inst);
    for (int w = 0; w <= 3; ++w) EXPECT_EQ(sol.best[w], 0);
}

TEST(Mckp, MatchesExhaustive) {
    std::mt19937 rng(5);
    for (int iter = 0; iter < 2000; ++iter) {
        MckpInstance inst;
        inst.capacity = static_cast<int>(rng() % 6);
        int classes = 1 + static_cast<int>(rng() % 4);
        for (int c = 0; c < classes; ++c) {
            int items = 1 + static_cast<int>(rng() % 4);
            std::vector<MckpItem> cls;
            for (int i = 0; i < items; ++i)
                cls.push_back({static_cast<int>(rng() % 4), static_cast<int>(rng() % 6)});
            inst.classes.push_back(cls);
        }
        MckpSolution sol = mckp_solve(inst);
        auto expect = mckp_exhaustive(inst);
        ASSERT_EQ(sol.best, expect);
        for (int w = 0; w <= inst.capacity; ++w) {
            if (!sol.best[w]) continue;
            auto pick = sol.pick(w, inst);
            ASSERT_EQ(pick.size(), inst.classes.size());
            int tw = 0, tp = 0;
            for (std::size_t i = 0; i < pick.size(); ++i) {
                tw += inst.classes[i][pick[i]].weight;
                tp += inst.classes[i][pick[i]].profit;
            }
            EXPECT_LE(tw, w);
            EXPECT_EQ(tp, *sol.best[w]);
        }
    }
}

TEST(TreeDp, PathExample) {
    TrlpInstance inst = make(support::graph(3, {{0, 1, {2}}, {1, 2, {1}}}), 1, 1, 3);
    // from a a single move cannot order 2 before 1; b and c need none
    auto best = support::brute_reach_per_source(inst.graph, 1, 1);
    EXPECT_EQ(best, (std::vector<int>{2, 3, 3}));
    for (Vertex s = 0; s < 3; ++s) EXPECT_EQ(solve_trlp_tree(inst, s).answer, best[s] >= 3);
    SolveResult any = solve_trlp_tree_all_sources(inst);
    ASSERT_TRUE(any.answer);
    EXPECT_EQ(any.source, 1);
    inst.zeta = 2;
    SolveResult two = solve_trlp_tree(inst, 0);
    ASSERT_TRUE(two.answer);
    EXPECT_TRUE(verify_reach(inst.graph, two.certificate, 0, 3).valid);
}

TEST(TreeDp, StarNeedsNoMoves) {
    TrlpInstance inst = make(support::graph(4, {{0, 1, {1}}, {0, 2, {1}}, {0, 3, {1}}}), 1, 0, 4);
    EXPECT_TRUE(solve_trlp_tree(inst, 0).answer);
}

TEST(TreeDp, StrictnessBlocksWithoutShift) {
    TrlpInstance inst = make(support::graph(4, {{0, 1, {1}}, {1, 2, {1}}, {2, 3, {1}}}), 0, 3, 4);
    EXPECT_FALSE(solve_trlp_tree_all_sources(inst).answer);
    EXPECT_EQ(support::brute_best_reach(inst.graph, 0, 3), 3);
}

TEST(TreeDp, SingleTargetIsSourceZero) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        TrlpInstance inst = random_instance(seed, Profile::Tree, tree_spec());
        inst.h = 1;
        SolveResult r = solve_trlp_tree_all_sources(inst);
        EXPECT_TRUE(r.answer);
        EXPECT_EQ(r.source, 0);
    }
}

TEST(TreeDp, TableIsMonotoneAndBounded) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        TrlpInstance inst = random_instance(seed, Profile::Tree, tree_spec());
        for (Vertex root = 0; root < inst.graph.vertex_count(); ++root) {
            TreeDpTable tab = tree_dp_table(inst, root);
            for (Vertex v = 0; v < inst.graph.vertex_count(); ++v)
                for (int z = 0; z <= inst.zeta; ++z)
                    for (Time t = 0; t <= tab.horizon; ++t) {
                        int val = tab.best[v][z][t];
                        EXPECT_GE(val, 1);
                        EXPECT_LE(val, inst.h);
                        if (t > 0) EXPECT_LE(val, tab.best[v][z][t - 1]);  // later departure never helps
                        if (z > 0) EXPECT_GE(val, tab.best[v][z - 1][t]);  // more budget never hurts
                    }
        }
    }
}

TEST(TreeDp, RootValueIsExactPerSource) {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        TrlpInstance inst = random_instance(seed, Profile::Tree, tree_spec());
        const int n = inst.graph.vertex_count();
        inst.h = n;
        auto best = support::brute_reach_per_source(inst.graph, inst.delta, inst.zeta);
        for (Vertex s = 0; s < n; ++s) {
            TreeDpTable tab = tree_dp_table(inst, s);
            EXPECT_EQ(tab.best[s][inst.zeta][0], best[s]) << "seed " << seed << " source " << s;
        }
    }
}

TEST(TreeDp, CertificatesWitnessAnswer) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        TrlpInstance inst = random_instance(seed, Profile::Tree, tree_spec());
        for (Vertex s = 0; s < inst.graph.vertex_count(); ++s) {
            SolveResult r = solve_trlp_tree(inst, s);
            if (!r.answer) continue;
            VerifyReport v = verify_reach(inst.graph, r.certificate, s, inst.h);
            EXPECT_TRUE(v.valid) << v.reason;
        }
    }
}

TEST(TreeDp, ParallelSourcesMatchSerial) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        TrlpInstance inst = random_instance(seed, Profile::Tree, tree_spec());
        SolveResult a = solve_trlp_tree_all_sources(inst, 1), b = solve_trlp_tree_all_sources(inst, 3);
        EXPECT_EQ(a.answer, b.answer);
        EXPECT_EQ(a.source, b.source);
        EXPECT_EQ(a.certificate.records, b.certificate.records);
    }
}
