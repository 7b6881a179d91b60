#include "temporeach/treedp.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

#include "temporeach/errors.hpp"
#include "temporeach/reach.hpp"

namespace temporeach {

namespace {

enum class ItemKind { Skip, Plain, Moved };

struct ChildItem {
    ItemKind kind;
    int child_budget;  // budget handed to the child subtree
    Time arrive;  // time the child is entered
};

struct Rooted {
    std::vector<Vertex> parent;
    std::vector<EdgeId> parent_edge;
    std::vector<std::vector<Vertex>> children;
    std::vector<Vertex> order;  // preorder
};

Rooted root_tree(const TemporalGraph& g, Vertex root) {
    const int n = g.vertex_count();
    Rooted r;
    r.parent.assign(n, -1);
    r.parent_edge.assign(n, -1);
    r.children.assign(n, {});
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{root};
    seen[root] = 1;
    while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        r.order.push_back(x);
        for (const auto& inc : g.incident(x)) {
            if (seen[inc.neighbor]) continue;
            seen[inc.neighbor] = 1;
            r.parent[inc.neighbor] = x;
            r.parent_edge[inc.neighbor] = inc.edge;
            r.children[x].push_back(inc.neighbor);
            stack.push_back(inc.neighbor);
        }
    }
    for (auto& ch : r.children) std::sort(ch.begin(), ch.end());
    return r;
}

std::optional<Time> next_label(std::span<const Time> l, Time t) {
    auto it = std::upper_bound(l.begin(), l.end(), t);
    if (it == l.end()) return std::nullopt;
    return *it;
}

// Earliest time > t some label can be moved to, within [1, horizon].
std::optional<Time> next_moved(std::span<const Time> l, Time t, int delta, Time horizon) {
    auto it = std::lower_bound(l.begin(), l.end(), t + 1 - delta);
    if (it == l.end()) return std::nullopt;
    Time x = std::max({t + 1, *it - delta, 1});
    if (x > horizon) return std::nullopt;
    return x;
}

struct Dp {
    const TrlpInstance& inst;
    Rooted tree;
    Time horizon;
    int zeta;
    int cap;
    std::vector<std::vector<std::vector<int>>> best;  // [v][z][t]

    Dp(const TrlpInstance& i, Vertex root)
        : inst(i), tree(root_tree(i.graph, root)), horizon(i.graph.lifetime() + i.delta), zeta(i.zeta), cap(i.h) {}

    // The knapsack classes for v departing after t, one per child, with the
    // dominant item per weight and its provenance.
    void classes(Vertex v, Time t, MckpInstance& mk, std::vector<std::vector<ChildItem>>& meta) const {
        mk.capacity = zeta;
        mk.classes.clear();
        meta.clear();
        for (Vertex c : tree.children[v]) {
            auto l = inst.graph.labels(tree.parent_edge[c]);
            auto plain = next_label(l, t);
            auto moved = next_moved(l, t, inst.delta, horizon);
            if (moved && plain && *moved >= *plain) moved.reset();
            std::vector<std::optional<int>> prof(zeta + 1);
            std::vector<ChildItem> who(zeta + 1, {ItemKind::Skip, 0, 0});
            prof[0] = 0;
            auto offer = [&](int w, int p, ChildItem ci) {
                if (!prof[w] || p > *prof[w]) {
                    prof[w] = p;
                    who[w] = ci;
                }
            };
            // ties keep the earlier offer: skip, then plain, then moved
            if (plain)
                for (int zc = 0; zc <= zeta; ++zc) offer(zc, best[c][zc][*plain], {ItemKind::Plain, zc, *plain});
            if (moved)
                for (int zc = 0; zc + 1 <= zeta; ++zc)
                    offer(zc + 1, best[c][zc][*moved], {ItemKind::Moved, zc, *moved});
            std::vector<MckpItem> items;
            std::vector<ChildItem> kinds;
            for (int w = 0; w <= zeta; ++w) {
                if (!prof[w]) continue;
                items.push_back({w, *prof[w]});
                kinds.push_back(who[w]);
            }
            mk.classes.push_back(std::move(items));
            meta.push_back(std::move(kinds));
        }
    }

    void run() {
        const int n = inst.graph.vertex_count();
        best.assign(n, std::vector<std::vector<int>>(zeta + 1, std::vector<int>(horizon + 1, 1)));
        MckpInstance mk;
        std::vector<std::vector<ChildItem>> meta;
        for (auto it = tree.order.rbegin(); it != tree.order.rend(); ++it) {
            Vertex v = *it;
            if (tree.children[v].empty()) continue;
            for (Time t = 0; t <= horizon; ++t) {
                classes(v, t, mk, meta);
                MckpSolution sol = mckp_solve(mk);
                for (int z = 0; z <= zeta; ++z) best[v][z][t] = std::min(cap, 1 + sol.best[z].value_or(0));
            }
        }
    }

    void trace(Vertex v, int z, Time t, Perturbation& out) const {
        if (tree.children[v].empty()) return;
        MckpInstance mk;
        std::vector<std::vector<ChildItem>> meta;
        classes(v, t, mk, meta);
        MckpSolution sol = mckp_solve(mk);
        auto pick = sol.pick(z, mk);
        for (std::size_t i = 0; i < tree.children[v].size(); ++i) {
            Vertex c = tree.children[v][i];
            const ChildItem& ci = meta[i][pick[i]];
            if (ci.kind == ItemKind::Skip) continue;
            if (ci.kind == ItemKind::Moved) {
                EdgeId e = tree.parent_edge[c];
                auto l = inst.graph.labels(e);
                auto lo = std::lower_bound(l.begin(), l.end(), ci.arrive);
                Time src = 0;
                if (lo != l.begin()) src = *(lo - 1);
                if (lo != l.end() && (src == 0 || *lo - ci.arrive < ci.arrive - src)) src = *lo;
                out.records.push_back({inst.graph.edge(e).u, inst.graph.edge(e).v, src, ci.arrive});
            }
            trace(c, ci.child_budget, ci.arrive, out);
        }
    }
};

}  // namespace

TreeDpTable tree_dp_table(const TrlpInstance& inst, Vertex root) {
    inst.validate();
    if (!inst.graph.is_tree()) throw InvalidInput("tree DP needs a tree");
    Dp dp(inst, root);
    dp.run();
    TreeDpTable tab;
    tab.root = root;
    tab.parent = dp.tree.parent;
    tab.best = std::move(dp.best);
    tab.horizon = dp.horizon;
    return tab;
}

SolveResult solve_trlp_tree(const TrlpInstance& inst, Vertex source) {
    inst.validate();
    if (!inst.graph.is_tree()) throw InvalidInput("tree DP needs a tree");
    if (source < 0 || source >= inst.graph.vertex_count()) throw InvalidInput("source out of range");
    Dp dp(inst, source);
    dp.run();
    SolveResult res;
    res.strategy = "tree-dp";
    res.source = source;
    res.reach_count = dp.best[source][inst.zeta][0];
    res.certificate.delta = inst.delta;
    res.certificate.zeta = inst.zeta;
    res.answer = res.reach_count >= inst.h;
    if (res.answer) {
        dp.trace(source, inst.zeta, 0, res.certificate);
        res.certificate.canonicalize();
    }
    return res;
}

SolveResult solve_trlp_tree_all_sources(const TrlpInstance& inst, int jobs) {
    inst.validate();
    const int n = inst.graph.vertex_count();
    std::vector<std::optional<SolveResult>> cells(n);
    std::atomic<int> next{0};
    std::atomic<int> found{n};
    auto worker = [&]() {
        for (int v; (v = next.fetch_add(1)) < n;) {
            if (v > found.load()) continue;
            cells[v] = solve_trlp_tree(inst, v);
            if (cells[v]->answer) {
                int cur = found.load();
                while (v < cur && !found.compare_exchange_weak(cur, v)) {}
            }
        }
    };
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    SolveResult res;
    res.strategy = "tree-dp";
    res.certificate.delta = inst.delta;
    res.certificate.zeta = inst.zeta;
    for (Vertex v = 0; v < n; ++v) {
        if (!cells[v]) continue;
        if (cells[v]->answer) return *cells[v];
        res.reach_count = std::max(res.reach_count, cells[v]->reach_count);
    }
    return res;
}

}  // namespace temporeach
