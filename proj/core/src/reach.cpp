#include "temporeach/reach.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <tuple>

#include "temporeach/errors.hpp"

namespace temporeach {

int ForemostTree::reach_count() const {
    return static_cast<int>(std::count_if(arrival.begin(), arrival.end(), [](const auto& a) { return a.has_value(); }));
}

std::vector<TreeStep> ForemostTree::path_to(Vertex v) const {
    std::vector<TreeStep> steps;
    if (!reaches(v)) return steps;
    while (v != source) {
        steps.push_back({parent_edge[v], parent[v], v, edge_time[v]});
        v = parent[v];
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
}

ForemostTree foremost_tree(const TemporalGraph& g, Vertex source, Time depart_after) {
    const int n = g.vertex_count();
    if (source < 0 || source >= n) throw InvalidInput("source out of range");
    ForemostTree tree;
    tree.source = source;
    tree.parent.assign(n, -1);
    tree.parent_edge.assign(n, -1);
    tree.edge_time.assign(n, 0);
    tree.arrival.assign(n, std::nullopt);

    // best[v]: tentative arrival; the source uses depart_after as its clock.
    std::vector<std::optional<Time>> best(n);
    std::vector<char> settled(n, 0);
    using Key = std::tuple<Time, Vertex>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> pq;
    best[source] = depart_after;
    pq.push({depart_after, source});
    while (!pq.empty()) {
        auto [t, x] = pq.top();
        pq.pop();
        if (settled[x] || best[x] != t) continue;
        settled[x] = 1;
        for (const auto& inc : g.incident(x)) {
            Vertex w = inc.neighbor;
            if (settled[w]) continue;
            auto l = g.labels(inc.edge);
            auto it = std::upper_bound(l.begin(), l.end(), t);
            if (it == l.end()) continue;
            Time nt = *it;
            if (!best[w] || nt < *best[w] || (nt == *best[w] && x < tree.parent[w])) {
                bool improved = !best[w] || nt < *best[w];
                best[w] = nt;
                tree.parent[w] = x;
                tree.parent_edge[w] = inc.edge;
                tree.edge_time[w] = nt;
                if (improved) pq.push({nt, w});
            }
        }
    }
    for (Vertex v = 0; v < n; ++v)
        if (settled[v]) tree.arrival[v] = best[v];
    tree.arrival[source] = 0;
    return tree;
}

std::vector<Vertex> reach_set(const TemporalGraph& g, Vertex source) {
    auto tree = foremost_tree(g, source);
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (tree.reaches(v)) out.push_back(v);
    return out;
}

MaxReach max_reachability(const TemporalGraph& g) {
    if (g.vertex_count() < 1) throw InvalidInput("graph has no vertices");
    MaxReach best{0, 0};
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        int c = foremost_tree(g, s).reach_count();
        if (c > best.count) best = {s, c};
    }
    return best;
}

TemporalGraph sparsify_for_source(const TemporalGraph& g, Vertex source) {
    auto tree = foremost_tree(g, source);
    std::vector<EdgeSpec> kept;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (v != source && tree.reaches(v)) kept.push_back({tree.parent[v], v, {tree.edge_time[v]}});
    return TemporalGraph(g.vertex_count(), std::move(kept));
}

}  // namespace temporeach
