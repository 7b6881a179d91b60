#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "support.hpp"

using namespace temporeach;

namespace {

// Foremost arrivals by walking every simple strict temporal path.
std::vector<std::optional<Time>> path_search(const TemporalGraph& g, Vertex source) {
    const int n = g.vertex_count();
    std::vector<std::optional<Time>> best(n);
    best[source] = 0;
    std::vector<char> on(n, 0);
    std::function<void(Vertex, Time)> walk = [&](Vertex v, Time last) {
        on[v] = 1;
        for (const auto& inc : g.incident(v)) {
            if (on[inc.neighbor]) continue;
            for (Time t : g.labels(inc.edge)) {
                if (t <= last) continue;
                if (!best[inc.neighbor] || t < *best[inc.neighbor]) best[inc.neighbor] = t;
                walk(inc.neighbor, t);
            }
        }
        on[v] = 0;
    };
    walk(source, 0);
    return best;
}

TemporalGraph abc() { return support::graph(3, {{0, 1, {2}}, {1, 2, {1}}}); }

}  // namespace

TEST(Foremost, StarArrivals) {
    TemporalGraph g = support::graph(3, {{0, 1, {5}}, {0, 2, {3}}});
    ForemostTree t = foremost_tree(g, 0);
    EXPECT_EQ(t.arrival[1], 5);
    EXPECT_EQ(t.arrival[2], 3);
    EXPECT_EQ(t.arrival[0], 0);
}

TEST(Foremost, PathBlockedByOrder) {
    ForemostTree t = foremost_tree(abc(), 0);
    EXPECT_EQ(t.arrival[1], 2);
    EXPECT_FALSE(t.arrival[2].has_value());
    EXPECT_EQ(t.parent[2], -1);
    EXPECT_EQ(t.reach_count(), 2);
}

TEST(Foremost, DepartAfter) {
    TemporalGraph g = support::graph(3, {{0, 1, {1, 4}}, {1, 2, {5}}});
    EXPECT_EQ(foremost_tree(g, 0).arrival[1], 1);
    EXPECT_EQ(foremost_tree(g, 0, 1).arrival[1], 4);
    EXPECT_FALSE(foremost_tree(g, 0, 4).arrival[1].has_value());
}

TEST(Foremost, SmallestParentOnTies) {
    // 3 is reached at time 2 via 1 or via 2
    TemporalGraph g = support::graph(4, {{0, 1, {1}}, {0, 2, {1}}, {1, 3, {2}}, {2, 3, {2}}});
    EXPECT_EQ(foremost_tree(g, 0).parent[3], 1);
}

TEST(Foremost, MatchesPathSearch) {
    RandomSpec spec;
    spec.n_max = 6;
    spec.max_edges = 8;
    spec.max_time = 4;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        TemporalGraph g = random_instance(seed, Profile::Sparse, spec).graph;
        LabelLists lists = label_lists(g);
        for (Vertex s = 0; s < g.vertex_count(); ++s) {
            ForemostTree t = foremost_tree(g, s);
            auto expect = path_search(g, s);
            ASSERT_EQ(t.arrival, expect) << "seed " << seed << " source " << s;
            ASSERT_EQ(sweep_arrivals(g, lists, s), expect);
        }
    }
}

TEST(Foremost, TreePathsArePrefixForemost) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        TemporalGraph g = random_instance(seed, Profile::Sparse).graph;
        for (Vertex s = 0; s < g.vertex_count(); ++s) {
            ForemostTree t = foremost_tree(g, s);
            for (Vertex v = 0; v < g.vertex_count(); ++v) {
                if (!t.reaches(v) || v == s) continue;
                Time last = 0;
                for (const auto& step : t.path_to(v)) {
                    EXPECT_GT(step.time, last);
                    EXPECT_EQ(t.arrival[step.to], step.time);
                    auto ls = g.labels(step.edge);
                    EXPECT_TRUE(std::binary_search(ls.begin(), ls.end(), step.time));
                    last = step.time;
                }
            }
        }
    }
}

TEST(ReachSet, Examples) {
    auto r = reach_set(abc(), 1);
    EXPECT_EQ(r, (std::vector<Vertex>{0, 1, 2}));
    TemporalGraph lone = support::graph(3, {{0, 1, {1}}});
    EXPECT_EQ(reach_set(lone, 2), (std::vector<Vertex>{2}));
}

TEST(ReachSet, ContainsClosedNeighbourhood) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        TemporalGraph g = random_instance(seed, Profile::Sparse).graph;
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            auto r = reach_set(g, v);
            EXPECT_TRUE(std::binary_search(r.begin(), r.end(), v));
            for (const auto& inc : g.incident(v)) EXPECT_TRUE(std::binary_search(r.begin(), r.end(), inc.neighbor));
        }
    }
}

TEST(ReachSet, MonotoneUnderAddedTimeEdges) {
    std::mt19937 rng(3);
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        TemporalGraph g1 = random_instance(seed, Profile::Sparse).graph;
        std::vector<std::vector<Time>> lists = label_lists(g1);
        for (auto& l : lists) {
            Time extra = 1 + static_cast<Time>(rng() % 5);
            if (!std::binary_search(l.begin(), l.end(), extra)) {
                l.push_back(extra);
                std::sort(l.begin(), l.end());
            }
        }
        TemporalGraph g2 = g1.with_labels(lists);
        for (Vertex s = 0; s < g1.vertex_count(); ++s) {
            auto a1 = foremost_tree(g1, s).arrival;
            auto a2 = foremost_tree(g2, s).arrival;
            for (Vertex v = 0; v < g1.vertex_count(); ++v)
                if (a1[v]) EXPECT_TRUE(a2[v] && *a2[v] <= *a1[v]);
        }
        EXPECT_LE(max_reachability(g1).count, max_reachability(g2).count);
    }
}

TEST(MaxReach, Examples) {
    TemporalGraph k4 = support::graph(4, {{0, 1, {1}}, {0, 2, {1}}, {0, 3, {1}}, {1, 2, {1}}, {1, 3, {1}}, {2, 3, {1}}});
    EXPECT_EQ(max_reachability(k4).count, 4);
    MaxReach m = max_reachability(abc());
    EXPECT_EQ(m.source, 1);
    EXPECT_EQ(m.count, 3);
    MaxReach single = max_reachability(TemporalGraph(1, {}));
    EXPECT_EQ(single.source, 0);
    EXPECT_EQ(single.count, 1);
}

TEST(Sparsify, KeepsReachAndOneLabel) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        TemporalGraph g = random_instance(seed, Profile::Sparse).graph;
        for (Vertex s = 0; s < g.vertex_count(); ++s) {
            TemporalGraph sp = sparsify_for_source(g, s);
            EXPECT_LE(sp.temporality(), 1);
            EXPECT_EQ(foremost_tree(sp, s).arrival, foremost_tree(g, s).arrival);
        }
    }
}

TEST(Sparsify, KeepsEarliestUsedLabel) {
    TemporalGraph g = support::graph(3, {{0, 1, {3, 5}}, {1, 2, {4}}});
    TemporalGraph sp = sparsify_for_source(g, 0);
    auto e = sp.find_edge(0, 1);
    ASSERT_TRUE(e);
    EXPECT_EQ(std::vector<Time>(sp.labels(*e).begin(), sp.labels(*e).end()), std::vector<Time>{3});
}
