#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "support.hpp"
#include "temporeach/errors.hpp"

using namespace temporeach;

namespace {

// Smallest number of moved labels over every injection old -> new within +-delta.
std::optional<int> exhaustive_cost(std::vector<Time> old_labels, const std::vector<Time>& new_labels, int delta) {
    std::vector<int> perm(new_labels.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<int> best;
    do {
        int cost = 0;
        bool ok = true;
        for (std::size_t i = 0; i < old_labels.size() && ok; ++i) {
            Time to = new_labels[perm[i]];
            if (std::abs(to - old_labels[i]) > delta) ok = false;
            cost += to != old_labels[i];
        }
        if (ok && (!best || cost < *best)) best = cost;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<Time> random_labels(std::mt19937& rng, int count, Time top) {
    std::vector<Time> pool(top);
    std::iota(pool.begin(), pool.end(), 1);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<Time> out(pool.begin(), pool.begin() + count);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(GraphParse, SimplePath) {
    TemporalGraph g = parse_graph_string("n 3\ne 0 1 2\ne 1 2 1\n");
    EXPECT_EQ(g.vertex_count(), 3);
    EXPECT_EQ(g.edge_count(), 2);
    EXPECT_EQ(g.lifetime(), 2);
    EXPECT_EQ(g.temporality(), 1);
}

TEST(GraphParse, MultiLabelEdge) {
    TemporalGraph g = parse_graph_string("n 2\ne 0 1 1 3 7");
    ASSERT_EQ(g.edge_count(), 1);
    auto ls = g.labels(0);
    EXPECT_EQ(std::vector<Time>(ls.begin(), ls.end()), (std::vector<Time>{1, 3, 7}));
    EXPECT_EQ(g.temporality(), 3);
    EXPECT_EQ(g.lifetime(), 7);
}

TEST(GraphParse, Rejections) {
    EXPECT_THROW(parse_graph_string("n 2\ne 0 1 3 3"), ParseError);
    EXPECT_THROW(parse_graph_string("n 2\ne 0 1 3 2"), ParseError);
    EXPECT_THROW(parse_graph_string("n 2\ne 1 0 3"), ParseError);
    EXPECT_THROW(parse_graph_string("n 2\ne 0 1"), ParseError);
    EXPECT_THROW(parse_graph_string("n 2\ne 0 1 0"), ParseError);
    EXPECT_THROW(parse_graph_string("n 2\ne 0 2 1"), ParseError);
    EXPECT_THROW(parse_graph_string("n 3\ne 0 1 1\ne 0 1 2"), ParseError);
    EXPECT_THROW(parse_graph_string("e 0 1 1"), ParseError);
}

TEST(GraphParse, ErrorCarriesLine) {
    try {
        parse_graph_string("# header\nn 3\ne 0 1 2\ne 1 2 x\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4);
    }
}

TEST(GraphParse, CommentsAndBlankLines) {
    TemporalGraph g = parse_graph_string("# c\n\nn 2\n# mid\ne 0 1 4\n");
    EXPECT_EQ(g.edge_count(), 1);
}

TEST(GraphParse, RoundTripIsIdempotent) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        TemporalGraph g = random_instance(seed, Profile::Sparse).graph;
        std::string once = serialize_graph(g);
        TemporalGraph back = parse_graph_string(once);
        EXPECT_EQ(back, g);
        EXPECT_EQ(serialize_graph(back), once);
    }
}

TEST(Perturb, SingleShift) {
    TemporalGraph g = support::graph(2, {{0, 1, {2}}});
    Perturbation p{1, 1, {{0, 1, 2, 3}}};
    TemporalGraph g2 = apply_perturbation(g, p);
    EXPECT_EQ(g2.labels(0)[0], 3);
}

TEST(Perturb, EmptyIsIdentity) {
    TemporalGraph g = support::graph(3, {{0, 1, {2, 4}}, {1, 2, {1}}});
    EXPECT_EQ(apply_perturbation(g, Perturbation{2, 0, {}}), g);
}

TEST(Perturb, CollisionRejected) {
    TemporalGraph g = support::graph(2, {{0, 1, {2, 3}}});
    EXPECT_THROW(apply_perturbation(g, Perturbation{1, 1, {{0, 1, 2, 3}}}), InvalidInput);
}

TEST(Perturb, SwapAllowedAndCountsBoth) {
    TemporalGraph g = support::graph(2, {{0, 1, {2, 3}}});
    Perturbation p{1, 2, {{0, 1, 2, 3}, {0, 1, 3, 2}}};
    EXPECT_EQ(p.perturbed_count(), 2);
    EXPECT_EQ(apply_perturbation(g, p), g);
    p.zeta = 1;
    EXPECT_THROW(apply_perturbation(g, p), InvalidInput);
}

TEST(Perturb, RecordChecks) {
    TemporalGraph g = support::graph(3, {{0, 1, {2}}});
    EXPECT_THROW(apply_perturbation(g, Perturbation{1, 1, {{1, 2, 2, 3}}}), InvalidInput);  // no edge
    EXPECT_THROW(apply_perturbation(g, Perturbation{1, 1, {{0, 1, 5, 4}}}), InvalidInput);  // not a label
    EXPECT_THROW(apply_perturbation(g, Perturbation{1, 1, {{0, 1, 2, 4}}}), InvalidInput);  // beyond delta
    EXPECT_THROW(apply_perturbation(g, Perturbation{2, 2, {{0, 1, 2, 0}}}), InvalidInput);  // below 1
    EXPECT_THROW(apply_perturbation(g, Perturbation{1, 0, {{0, 1, 2, 1}}}), InvalidInput);  // zeta
}

TEST(Relabel, Examples) {
    std::vector<Time> a{2, 5}, b{3, 5};
    EXPECT_EQ(min_relabel_cost(a, b, 1), 1);
    EXPECT_EQ(exhaustive_cost(a, b, 1), 1);
    std::vector<Time> c{2}, d{5};
    EXPECT_EQ(min_relabel_cost(c, d, 1), std::nullopt);
    TemporalGraph g = support::graph(3, {{0, 1, {2, 5}}, {1, 2, {1, 3}}});
    for (int delta = 0; delta < 3; ++delta) EXPECT_EQ(validate_relabelling(g, g, delta), 0);
}

TEST(Relabel, MatchesExhaustiveMatching) {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 3000; ++iter) {
        int count = 1 + static_cast<int>(rng() % 6);
        int delta = static_cast<int>(rng() % 3);
        auto a = random_labels(rng, count, 9);
        auto b = random_labels(rng, count, 9);
        auto expect = exhaustive_cost(a, b, delta);
        ASSERT_EQ(min_relabel_cost(a, b, delta), expect);
        // sorted alignment decides feasibility
        bool aligned = true;
        for (int i = 0; i < count; ++i) aligned &= std::abs(a[i] - b[i]) <= delta;
        ASSERT_EQ(aligned, expect.has_value());
    }
}

TEST(Relabel, StructuralMismatchThrows) {
    TemporalGraph g = support::graph(2, {{0, 1, {2}}});
    TemporalGraph h = support::graph(2, {{0, 1, {2, 3}}});
    EXPECT_THROW(validate_relabelling(g, h, 1), InvalidInput);
}

TEST(Relabel, ApplyThenValidateProperties) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        TrlpInstance inst = random_instance(seed, Profile::Sparse);
        const TemporalGraph& g = inst.graph;
        EnumerationLimits lim;
        int visited = 0;
        for_each_perturbation(g, inst.delta, inst.zeta, lim, [&](const LabelLists&, const Perturbation& p) {
            TemporalGraph g2 = apply_perturbation(g, p);
            for (EdgeId e = 0; e < g.edge_count(); ++e) {
                EXPECT_EQ(g2.labels(e).size(), g.labels(e).size());
                for (Time t : g2.labels(e)) {
                    EXPECT_GE(t, 1);
                    EXPECT_LE(t, g.lifetime() + inst.delta);
                }
            }
            auto cost = validate_relabelling(g, g2, inst.delta);
            EXPECT_TRUE(cost.has_value());
            EXPECT_LE(*cost, p.perturbed_count());
            Perturbation d = diff_as_perturbation(g, g2, inst.delta, inst.zeta);
            EXPECT_EQ(apply_perturbation(g, d), g2);
            EXPECT_EQ(d.perturbed_count(), *cost);
            return ++visited < 400;
        });
    }
}

TEST(Relabel, EnumeratedCostsAreMinimal) {
    std::mt19937 rng(11);
    for (int iter = 0; iter < 300; ++iter) {
        int count = 1 + static_cast<int>(rng() % 3);
        int delta = static_cast<int>(rng() % 3);
        auto a = random_labels(rng, count, 5);
        Time horizon = a.back() + delta;
        auto sets = enumerate_relabellings(a, delta, horizon, count);
        std::set<std::vector<Time>> distinct;
        for (const auto& [labels, cost] : sets) {
            EXPECT_TRUE(distinct.insert(labels).second);
            EXPECT_EQ(min_relabel_cost(a, labels, delta), cost);
        }
        // every feasible target set appears
        std::vector<Time> pool(horizon);
        std::iota(pool.begin(), pool.end(), 1);
        for (unsigned mask = 0; mask < (1u << horizon); ++mask) {
            if (std::popcount(mask) != count) continue;
            std::vector<Time> target;
            for (Time t = 1; t <= horizon; ++t)
                if (mask >> (t - 1) & 1u) target.push_back(t);
            EXPECT_EQ(min_relabel_cost(a, target, delta).has_value(), distinct.count(target) == 1);
        }
    }
}

TEST(PerturbationText, RoundTrip) {
    Perturbation p{2, 3, {{0, 1, 4, 5}, {1, 3, 2, 1}}};
    p.canonicalize();
    std::string text = serialize_perturbation(p);
    Perturbation q = parse_perturbation_string(text);
    EXPECT_EQ(q.delta, 2);
    EXPECT_EQ(q.zeta, 3);
    EXPECT_EQ(q.records, p.records);
    EXPECT_EQ(serialize_perturbation(q), text);
}

TEST(PerturbationText, Rejections) {
    EXPECT_THROW(parse_perturbation_string("p 0 1 2 3\n"), ParseError);
    EXPECT_THROW(parse_perturbation_string("delta 1\nzeta 1\np 0 1 2\n"), ParseError);
    EXPECT_THROW(parse_perturbation_string("delta -1\nzeta 1\n"), ParseError);
}

TEST(GraphQueries, TreeAndConnectivity) {
    TemporalGraph path = support::graph(3, {{0, 1, {1}}, {1, 2, {1}}});
    EXPECT_TRUE(path.is_tree());
    EXPECT_TRUE(path.is_connected());
    TemporalGraph split = support::graph(4, {{0, 1, {1}}, {2, 3, {1}}});
    EXPECT_FALSE(split.is_tree());
    EXPECT_FALSE(split.is_connected());
    TemporalGraph tri = support::graph(3, {{0, 1, {1}}, {1, 2, {1}}, {0, 2, {1}}});
    EXPECT_FALSE(tri.is_tree());
    EXPECT_EQ(tri.max_degree(), 2);
    EXPECT_EQ(tri.time_edge_count(), 3);
    EXPECT_EQ(tri.find_edge(2, 0), tri.find_edge(0, 2));
    EXPECT_FALSE(path.find_edge(0, 2).has_value());
}
