#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <queue>
#include <thread>
#include <tuple>

#include "temporeach/errors.hpp"
#include "temporeach/solvers.hpp"

namespace temporeach {

namespace {

// Earliest usable time strictly after t on edge labels, optionally widened by +-delta.
std::optional<Time> next_time(std::span<const Time> l, Time t, bool widened, int delta) {
    if (!widened) {
        auto it = std::upper_bound(l.begin(), l.end(), t);
        if (it == l.end()) return std::nullopt;
        return *it;
    }
    // First label whose window reaches past t; later labels cannot do better.
    auto it = std::lower_bound(l.begin(), l.end(), t + 1 - delta);
    if (it == l.end()) return std::nullopt;
    return std::max({t + 1, *it - delta, 1});
}

}  // namespace

Exploration explore(const TemporalGraph& g, Vertex source, int delta, const std::vector<char>& perturbable) {
    const int n = g.vertex_count();
    if (source < 0 || source >= n) throw InvalidInput("source out of range");
    Exploration ex;
    ForemostTree& tree = ex.tree;
    tree.source = source;
    tree.parent.assign(n, -1);
    tree.parent_edge.assign(n, -1);
    tree.edge_time.assign(n, 0);
    tree.arrival.assign(n, std::nullopt);

    std::vector<char> settled(n, 0);
    // (time, target, from, edge)
    using Entry = std::tuple<Time, Vertex, Vertex, EdgeId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
    std::vector<Time> queued(n, std::numeric_limits<Time>::max());

    auto relax_from = [&](Vertex x, Time t) {
        for (const auto& inc : g.incident(x)) {
            if (settled[inc.neighbor]) continue;
            auto nt = next_time(g.labels(inc.edge), t, perturbable[inc.edge] != 0, delta);
            if (!nt || *nt > queued[inc.neighbor]) continue;
            queued[inc.neighbor] = *nt;
            pq.push({*nt, inc.neighbor, x, inc.edge});
            ++ex.queue_ops;
        }
    };

    settled[source] = 1;
    tree.arrival[source] = 0;
    relax_from(source, 0);
    while (!pq.empty()) {
        auto [t, w, x, e] = pq.top();
        pq.pop();
        ++ex.queue_ops;
        if (settled[w]) continue;
        settled[w] = 1;
        tree.arrival[w] = t;
        tree.parent[w] = x;
        tree.parent_edge[w] = e;
        tree.edge_time[w] = t;
        relax_from(w, t);
    }
    return ex;
}

bool explore_with_perturbable_set(const TemporalGraph& g, Vertex source, int k, int delta,
                                  const std::vector<EdgeId>& eset) {
    std::vector<char> mask(g.edge_count(), 0);
    for (EdgeId e : eset) {
        if (e < 0 || e >= g.edge_count()) throw InvalidInput("edge id out of range in perturbable set");
        mask[e] = 1;
    }
    return explore(g, source, delta, mask).tree.reach_count() >= k;
}

double xp_work_estimate(const TrlpInstance& inst) {
    const double m = inst.graph.edge_count();
    const int s = std::min<int>(inst.zeta, inst.graph.edge_count());
    // log-space binomial to avoid overflow on large m
    double log_c = std::lgamma(m + 1) - std::lgamma(s + 1.0) - std::lgamma(m - s + 1);
    return std::exp(log_c) * inst.graph.vertex_count() * (2 * m + 1);
}

namespace {

struct Cell {
    bool yes = false;
    std::vector<EdgeId> subset;
    int reach = 0;
    Exploration ex;
};

// Lexicographic subsets of {0..m-1} of size s; first one reaching h wins.
Cell scan_source(const TrlpInstance& inst, Vertex source, int s) {
    const TemporalGraph& g = inst.graph;
    const int m = g.edge_count();
    Cell best;
    std::vector<EdgeId> idx(s);
    for (int i = 0; i < s; ++i) idx[i] = i;
    std::vector<char> mask(m, 0);
    while (true) {
        std::fill(mask.begin(), mask.end(), 0);
        for (EdgeId e : idx) mask[e] = 1;
        Exploration ex = explore(g, source, inst.delta, mask);
        int r = ex.tree.reach_count();
        if (r >= inst.h) {
            best.yes = true;
            best.subset = idx;
            best.reach = r;
            best.ex = std::move(ex);
            return best;
        }
        best.reach = std::max(best.reach, r);
        int i = s - 1;
        while (i >= 0 && idx[i] == m - s + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    return best;
}

}  // namespace

SolveResult solve_trlp_xp(const TrlpInstance& inst, const SolverConfig& cfg) {
    inst.validate();
    double est = xp_work_estimate(inst);
    if (est > static_cast<double>(cfg.work_cap))
        throw Refusal("work-cap", "estimated " + std::to_string(static_cast<long long>(est)) + " queue operations > cap " +
                                      std::to_string(cfg.work_cap));
    const TemporalGraph& g = inst.graph;
    const int n = g.vertex_count();
    const int s = std::min(inst.zeta, g.edge_count());

    std::vector<Cell> cells(n);
    std::atomic<int> next{0};
    std::atomic<int> found{n};  // smallest yes source so far
    auto worker = [&]() {
        for (int v; (v = next.fetch_add(1)) < n;) {
            if (v > found.load()) continue;
            cells[v] = scan_source(inst, v, s);
            if (cells[v].yes) {
                int cur = found.load();
                while (v < cur && !found.compare_exchange_weak(cur, v)) {}
            }
        }
    };
    int jobs = std::max(1, std::min(cfg.jobs, n));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    SolveResult res;
    res.strategy = "xp";
    for (Vertex v = 0; v < n; ++v) {
        if (cells[v].yes) {
            res.answer = true;
            res.source = v;
            res.reach_count = cells[v].reach;
            res.certificate = tree_certificate(g, cells[v].ex.tree, inst.delta);
            res.certificate.zeta = inst.zeta;
            return res;
        }
        res.reach_count = std::max(res.reach_count, cells[v].reach);
    }
    res.certificate.delta = inst.delta;
    res.certificate.zeta = inst.zeta;
    return res;
}

}  // namespace temporeach
