#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "temporeach/errors.hpp"
#include "temporeach/testkit.hpp"

namespace temporeach {

LabelLists label_lists(const TemporalGraph& g) {
    LabelLists out(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto l = g.labels(e);
        out[e].assign(l.begin(), l.end());
    }
    return out;
}

std::vector<std::optional<Time>> sweep_arrivals(const TemporalGraph& g, const LabelLists& lists, Vertex source) {
    std::vector<std::pair<Time, EdgeId>> events;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        for (Time t : lists[e]) events.emplace_back(t, e);
    std::sort(events.begin(), events.end());
    std::vector<std::optional<Time>> arr(g.vertex_count());
    arr[source] = 0;
    std::vector<Vertex> fresh;
    for (std::size_t i = 0; i < events.size();) {
        Time t = events[i].first;
        fresh.clear();
        // all time-edges at t read arrivals from strictly before t
        for (; i < events.size() && events[i].first == t; ++i) {
            const Edge& e = g.edge(events[i].second);
            if (arr[e.u] && *arr[e.u] < t && !arr[e.v]) fresh.push_back(e.v);
            if (arr[e.v] && *arr[e.v] < t && !arr[e.u]) fresh.push_back(e.u);
        }
        for (Vertex v : fresh) arr[v] = t;
    }
    return arr;
}

int sweep_reach(const TemporalGraph& g, const LabelLists& lists, Vertex source) {
    auto arr = sweep_arrivals(g, lists, source);
    return static_cast<int>(std::count_if(arr.begin(), arr.end(), [](const auto& a) { return a.has_value(); }));
}

namespace {

// Visits simple strict paths. After the first edge, the earliest next label is
// taken since any later choice leaves fewer continuations.
template <class Visit>
void walk_paths(const TemporalGraph& g, const LabelLists& lists, Vertex source, Visit visit) {
    const int n = g.vertex_count();
    std::vector<char> on(n, 0);
    on[source] = 1;
    std::function<void(Vertex, Time, Time, int)> go = [&](Vertex x, Time first, Time last, int hops) {
        for (const auto& inc : g.incident(x)) {
            Vertex y = inc.neighbor;
            if (on[y]) continue;
            const auto& l = lists[inc.edge];
            auto it = std::upper_bound(l.begin(), l.end(), last);
            if (it == l.end()) continue;
            on[y] = 1;
            visit(y, first, *it, hops + 1);
            go(y, first, *it, hops + 1);
            on[y] = 0;
        }
    };
    for (const auto& inc : g.incident(source)) {
        Vertex y = inc.neighbor;
        for (Time t : lists[inc.edge]) {
            on[y] = 1;
            visit(y, t, t, 1);
            go(y, t, t, 1);
            on[y] = 0;
        }
    }
}

}  // namespace

std::optional<int> path_shortest_ecc(const TemporalGraph& g, const LabelLists& lists, Vertex source) {
    std::vector<int> best(g.vertex_count(), -1);
    best[source] = 0;
    walk_paths(g, lists, source, [&](Vertex y, Time, Time, int hops) {
        if (best[y] < 0 || hops < best[y]) best[y] = hops;
    });
    int worst = 0;
    for (int b : best) {
        if (b < 0) return std::nullopt;
        worst = std::max(worst, b);
    }
    return worst;
}

std::optional<int> path_fastest_ecc(const TemporalGraph& g, const LabelLists& lists, Vertex source) {
    std::vector<int> best(g.vertex_count(), -1);
    best[source] = 0;
    walk_paths(g, lists, source, [&](Vertex y, Time first, Time last, int) {
        int d = last - first;
        if (best[y] < 0 || d < best[y]) best[y] = d;
    });
    int worst = 0;
    for (int b : best) {
        if (b < 0) return std::nullopt;
        worst = std::max(worst, b);
    }
    return worst;
}

std::vector<EdgeOption> edge_options(std::span<const Time> labels, int delta, Time horizon, int max_moves) {
    // literal injections: each old label picks a distinct new time in its window
    std::map<std::vector<Time>, EdgeOption> found;
    std::vector<Time> cur;
    std::vector<std::pair<Time, Time>> moves;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == labels.size()) {
            std::vector<Time> s = cur;
            std::sort(s.begin(), s.end());
            auto it = found.find(s);
            if (it == found.end() || moves.size() < it->second.moves.size()) found[s] = {s, moves};
            return;
        }
        Time t = labels[i];
        for (Time nt = std::max(1, t - delta); nt <= std::min(horizon, t + delta); ++nt) {
            if (std::find(cur.begin(), cur.end(), nt) != cur.end()) continue;
            bool moved = nt != t;
            if (moved && static_cast<int>(moves.size()) >= max_moves) continue;
            cur.push_back(nt);
            if (moved) moves.emplace_back(t, nt);
            rec(i + 1);
            if (moved) moves.pop_back();
            cur.pop_back();
        }
    };
    rec(0);
    std::vector<EdgeOption> out;
    for (auto& [s, opt] : found) out.push_back(std::move(opt));
    std::stable_sort(out.begin(), out.end(),
                     [](const EdgeOption& a, const EdgeOption& b) { return a.moves.size() < b.moves.size(); });
    return out;
}

namespace {

std::vector<std::vector<EdgeOption>> all_options(const TemporalGraph& g, int delta, int zeta,
                                                 const EnumerationLimits& lim) {
    const Time horizon = g.lifetime() + delta;
    std::vector<std::vector<EdgeOption>> opts(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        bool allowed = lim.allowed.empty() || lim.allowed[e];
        opts[e] = edge_options(g.labels(e), allowed ? delta : 0, horizon, allowed ? zeta : 0);
    }
    return opts;
}

}  // namespace

std::int64_t count_perturbations(const TemporalGraph& g, int delta, int zeta, const EnumerationLimits& lim) {
    auto opts = all_options(g, delta, zeta, lim);
    const std::int64_t sat = std::int64_t{1} << 62;
    std::vector<std::int64_t> ways(zeta + 1, 0);
    ways[0] = 1;
    for (const auto& o : opts) {
        std::vector<std::int64_t> next(zeta + 1, 0);
        for (int c = 0; c <= zeta; ++c) {
            if (!ways[c]) continue;
            for (const auto& opt : o) {
                int nc = c + static_cast<int>(opt.moves.size());
                if (nc > zeta) continue;
                next[nc] = std::min(sat, next[nc] + ways[c]);
            }
        }
        ways = std::move(next);
    }
    std::int64_t total = 0;
    for (auto w : ways) total = std::min(sat, total + w);
    return total;
}

void for_each_perturbation(const TemporalGraph& g, int delta, int zeta, const EnumerationLimits& lim,
                           const std::function<bool(const LabelLists&, const Perturbation&)>& fn) {
    std::int64_t count = count_perturbations(g, delta, zeta, lim);
    if (count > lim.cap)
        throw Refusal("oracle-cap", std::to_string(count) + " perturbations > cap " + std::to_string(lim.cap));
    auto opts = all_options(g, delta, zeta, lim);
    LabelLists lists = label_lists(g);
    Perturbation cur;
    cur.delta = delta;
    cur.zeta = zeta;
    const int m = g.edge_count();
    bool stop = false;
    std::function<void(int, int)> rec = [&](int e, int left) {
        if (stop) return;
        if (e == m) {
            if (!fn(lists, cur)) stop = true;
            return;
        }
        for (const auto& opt : opts[e]) {
            int c = static_cast<int>(opt.moves.size());
            if (c > left) continue;
            lists[e] = opt.labels;
            for (auto [a, b] : opt.moves) cur.records.push_back({g.edge(e).u, g.edge(e).v, a, b});
            rec(e + 1, left - c);
            cur.records.resize(cur.records.size() - c);
            if (stop) return;
        }
        auto l = g.labels(e);
        lists[e].assign(l.begin(), l.end());
    };
    rec(0, zeta);
}

OracleReach oracle_max_reach(const TemporalGraph& g, int delta, int zeta, const EnumerationLimits& lim) {
    OracleReach best;
    best.witness.delta = delta;
    best.witness.zeta = zeta;
    const int n = g.vertex_count();
    for_each_perturbation(g, delta, zeta, lim, [&](const LabelLists& lists, const Perturbation& p) {
        for (Vertex s = 0; s < n; ++s) {
            int r = sweep_reach(g, lists, s);
            if (r > best.best) {
                best.best = r;
                best.source = s;
                best.witness = p;
            }
        }
        return best.best < n;
    });
    return best;
}

SolveResult oracle_trlp(const TrlpInstance& inst, const SolverConfig& cfg) {
    inst.validate();
    const TemporalGraph& g = inst.graph;
    SolveResult res;
    res.strategy = "oracle";
    res.certificate.delta = inst.delta;
    res.certificate.zeta = inst.zeta;
    EnumerationLimits lim;
    lim.cap = cfg.oracle_cap;
    for_each_perturbation(g, inst.delta, inst.zeta, lim, [&](const LabelLists& lists, const Perturbation& p) {
        for (Vertex s = 0; s < g.vertex_count(); ++s) {
            int r = sweep_reach(g, lists, s);
            if (r >= inst.h) {
                res.answer = true;
                res.source = s;
                res.reach_count = r;
                res.certificate = p;
                return false;
            }
            res.reach_count = std::max(res.reach_count, r);
        }
        return true;
    });
    return res;
}

SolveResult oracle_ecc(const EccInstance& inst, const SolverConfig& cfg) {
    inst.validate();
    const TemporalGraph& g = inst.graph;
    const int m = g.edge_count();
    const Time horizon = g.lifetime() + inst.delta;
    auto evaluate = [&](const LabelLists& lists) {
        return inst.variant == EccVariant::Shortest ? path_shortest_ecc(g, lists, inst.source)
                                                    : path_fastest_ecc(g, lists, inst.source);
    };

    std::vector<std::vector<EdgeOption>> opts(m);
    for (EdgeId e = 0; e < m; ++e) opts[e] = edge_options(g.labels(e), inst.delta, horizon, inst.zeta);
    // relaxed[e][b]: union of every option of e costing at most b
    std::vector<std::vector<std::vector<Time>>> relaxed(m, std::vector<std::vector<Time>>(inst.zeta + 1));
    for (EdgeId e = 0; e < m; ++e)
        for (int b = 0; b <= inst.zeta; ++b) {
            std::set<Time> u;
            for (const auto& o : opts[e])
                if (static_cast<int>(o.moves.size()) <= b) u.insert(o.labels.begin(), o.labels.end());
            relaxed[e][b].assign(u.begin(), u.end());
        }
    // edges nearer the source first
    std::vector<int> dist(g.vertex_count(), g.vertex_count());
    std::vector<Vertex> queue{inst.source};
    dist[inst.source] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (const auto& inc : g.incident(queue[i]))
            if (dist[inc.neighbor] > dist[queue[i]] + 1) {
                dist[inc.neighbor] = dist[queue[i]] + 1;
                queue.push_back(inc.neighbor);
            }
    std::vector<EdgeId> order(m);
    for (EdgeId e = 0; e < m; ++e) order[e] = e;
    std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
        return std::min(dist[g.edge(a).u], dist[g.edge(a).v]) < std::min(dist[g.edge(b).u], dist[g.edge(b).v]);
    });

    SolveResult res;
    res.strategy = "oracle";
    res.source = inst.source;
    res.certificate.delta = inst.delta;
    res.certificate.zeta = inst.zeta;
    LabelLists lists(m);
    std::vector<int> chosen(m, -1);
    std::int64_t visits = 0;
    bool done = false;
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (++visits > cfg.oracle_cap)
            throw Refusal("oracle-cap", "search exceeded " + std::to_string(cfg.oracle_cap) + " nodes");
        for (int j = i; j < m; ++j) lists[order[j]] = relaxed[order[j]][left];
        auto bound = evaluate(lists);
        if (!bound || *bound > inst.k) return;
        if (i == m) {
            done = true;
            res.answer = true;
            res.eccentricity = bound;
            for (EdgeId e = 0; e < m; ++e)
                for (auto [a, b] : opts[e][chosen[e]].moves)
                    res.certificate.records.push_back({g.edge(e).u, g.edge(e).v, a, b});
            res.certificate.canonicalize();
            return;
        }
        EdgeId e = order[i];
        for (int o = 0; o < static_cast<int>(opts[e].size()) && !done; ++o) {
            int c = static_cast<int>(opts[e][o].moves.size());
            if (c > left) continue;
            chosen[e] = o;
            lists[e] = opts[e][o].labels;
            rec(i + 1, left - c);
        }
        chosen[e] = -1;
    };
    rec(0, inst.zeta);
    res.reach_count = res.answer ? g.vertex_count() : 0;
    return res;
}

}  // namespace temporeach
