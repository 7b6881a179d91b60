#include <algorithm>
#include <cstring>
#include <map>
#include <unordered_map>

#include "temporeach/errors.hpp"
#include "temporeach/twdp.hpp"

namespace temporeach {

namespace {

// Label set choices per edge with their minimal move counts.
struct EdgeChoices {
    std::vector<std::vector<Time>> sets;
    std::vector<int> cost;
};

struct TwState {
    std::vector<std::uint16_t> p;  // choice index per bag edge
    std::vector<Time> rin;  // [v][t][w], INF = horizon+1
    std::vector<std::int16_t> rbelow;  // indexed by encoded departure assignment
    int zeta_below = 0;
    int cost_p = 0;
    int back1 = -1;
    int back2 = -1;
};

struct NodeTable {
    std::vector<Vertex> bag;
    std::vector<std::pair<int, int>> bag_edges;  // bag index pairs, i < j
    std::vector<EdgeId> bag_edge_ids;
    std::vector<TwState> states;
};

class TwSolver {
public:
    TwSolver(const TrlpInstance& inst, const NiceDecomposition& nice, const TwOptions& opt, TwStats* stats)
        : inst_(inst), g_(inst.graph), nice_(nice), opt_(opt), stats_(stats) {
        horizon_ = g_.lifetime() + inst.delta;
        inf_ = horizon_ + 1;
        nt_ = horizon_ + 1;
        base_ = horizon_ + 2;
        choices_.resize(g_.edge_count());
        for (EdgeId e = 0; e < g_.edge_count(); ++e) {
            for (auto& [set, c] : enumerate_relabellings(g_.labels(e), inst.delta, horizon_, inst.zeta)) {
                choices_[e].sets.push_back(set);
                choices_[e].cost.push_back(c);
            }
        }
    }

    // Returns best 1 + below-count at the root (capped at h) and fills the certificate on success.
    int run(Perturbation* cert) {
        tables_.assign(nice_.nodes.size(), {});
        for (int x : nice_.postorder()) {
            const NiceNode& nd = nice_.nodes[x];
            NodeTable& tab = tables_[x];
            tab.bag = nd.bag;
            for (int i = 0; i < static_cast<int>(tab.bag.size()); ++i)
                for (int j = i + 1; j < static_cast<int>(tab.bag.size()); ++j)
                    if (auto e = g_.find_edge(tab.bag[i], tab.bag[j])) {
                        tab.bag_edges.emplace_back(i, j);
                        tab.bag_edge_ids.push_back(*e);
                    }
            index_.clear();
            candidates_ = 0;
            node_ = x;
            switch (nd.kind) {
                case NiceKind::Leaf: leaf(tab); break;
                case NiceKind::Introduce: introduce(tab, tables_[nd.children[0]], nd.vertex); break;
                case NiceKind::Forget: forget(tab, tables_[nd.children[0]], nd.vertex); break;
                case NiceKind::Join: join(tab, tables_[nd.children[0]], tables_[nd.children[1]]); break;
            }
            if (stats_) {
                stats_->states_total += static_cast<std::int64_t>(tab.states.size());
                stats_->max_states_per_node =
                    std::max<std::int64_t>(stats_->max_states_per_node, static_cast<std::int64_t>(tab.states.size()));
            }
        }
        const NodeTable& root = tables_[nice_.root];
        int best = -1, best_idx = -1;
        for (int i = 0; i < static_cast<int>(root.states.size()); ++i) {
            int below = root.states[i].rbelow[0];
            if (below > best) {
                best = below;
                best_idx = i;
            }
        }
        if (best_idx < 0) return 0;
        int total = std::min(inst_.h, 1 + best);
        if (cert && total >= inst_.h) trace(nice_.root, best_idx, *cert);
        return total;
    }

private:
    int rin_at(const NodeTable& t, const TwState& s, int v, Time time, int w) const {
        const int b = static_cast<int>(t.bag.size());
        return s.rin[(static_cast<std::size_t>(v) * nt_ + time) * b + w];
    }

    std::size_t u_count(int b) const {
        std::size_t c = 1;
        for (int i = 0; i < b; ++i) c *= base_;
        return c;
    }

    void decode(std::size_t code, int b, std::vector<Time>& u) const {
        u.resize(b);
        for (int i = 0; i < b; ++i) {
            u[i] = static_cast<Time>(code % base_);
            code /= base_;
        }
    }

    std::size_t encode(const std::vector<Time>& u) const {
        std::size_t code = 0;
        for (int i = static_cast<int>(u.size()) - 1; i >= 0; --i) code = code * base_ + u[i];
        return code;
    }

    Time next_in(const std::vector<Time>& set, Time t) const {
        if (t >= inf_) return inf_;
        for (Time x : set)
            if (x > t) return x;
        return inf_;
    }

    void store(NodeTable& tab, TwState&& s) {
        if (++candidates_ > opt_.state_cap)
            throw Refusal("state-cap", "node " + std::to_string(node_) + " exceeded " +
                                           std::to_string(opt_.state_cap) + " candidate states");
        std::string key;
        key.reserve(s.p.size() * 2 + s.rin.size() * 4 + s.rbelow.size() * 2);
        key.append(reinterpret_cast<const char*>(s.p.data()), s.p.size() * sizeof(s.p[0]));
        key.append(reinterpret_cast<const char*>(s.rin.data()), s.rin.size() * sizeof(s.rin[0]));
        key.append(reinterpret_cast<const char*>(s.rbelow.data()), s.rbelow.size() * sizeof(s.rbelow[0]));
        auto [it, fresh] = index_.emplace(std::move(key), static_cast<int>(tab.states.size()));
        if (fresh) {
            tab.states.push_back(std::move(s));
        } else if (s.zeta_below < tab.states[it->second].zeta_below) {
            tab.states[it->second] = std::move(s);
        }
    }

    void leaf(NodeTable& tab) {
        TwState s;
        s.rbelow.assign(1, 0);
        store(tab, std::move(s));
    }

    void introduce(NodeTable& tab, const NodeTable& child, Vertex u) {
        const int b = static_cast<int>(tab.bag.size());
        const int pu = static_cast<int>(std::lower_bound(tab.bag.begin(), tab.bag.end(), u) - tab.bag.begin());
        auto old_of = [&](int i) { return i < pu ? i : i - 1; };  // i != pu
        // Bag edges: inherited ones map to the child's edge slot; new ones touch u.
        std::vector<int> inherit(tab.bag_edges.size(), -1);
        std::vector<int> fresh_slots;
        for (std::size_t k = 0; k < tab.bag_edges.size(); ++k) {
            auto [i, j] = tab.bag_edges[k];
            if (i == pu || j == pu) {
                fresh_slots.push_back(static_cast<int>(k));
                continue;
            }
            auto it = std::find(child.bag_edge_ids.begin(), child.bag_edge_ids.end(), tab.bag_edge_ids[k]);
            inherit[k] = static_cast<int>(it - child.bag_edge_ids.begin());
        }
        const std::size_t ucount = u_count(b);
        std::vector<Time> uvec, uold(b - 1);
        std::vector<int> pick(fresh_slots.size(), 0);
        for (int ci = 0; ci < static_cast<int>(child.states.size()); ++ci) {
            const TwState& cs = child.states[ci];
            std::fill(pick.begin(), pick.end(), 0);
            while (true) {
                int extra = 0;
                for (std::size_t f = 0; f < fresh_slots.size(); ++f)
                    extra += choices_[tab.bag_edge_ids[fresh_slots[f]]].cost[pick[f]];
                if (cs.cost_p + extra + cs.zeta_below <= inst_.zeta)
                    emit_introduce(tab, child, cs, ci, pu, inherit, fresh_slots, pick, extra, ucount, uvec, uold,
                                   old_of);
                std::size_t f = 0;
                while (f < fresh_slots.size()) {
                    if (++pick[f] < static_cast<int>(choices_[tab.bag_edge_ids[fresh_slots[f]]].sets.size())) break;
                    pick[f] = 0;
                    ++f;
                }
                if (f == fresh_slots.size()) break;
            }
        }
    }

    template <class OldOf>
    void emit_introduce(NodeTable& tab, const NodeTable& child, const TwState& cs, int ci, int pu,
                        const std::vector<int>& inherit, const std::vector<int>& fresh_slots,
                        const std::vector<int>& pick, int extra, std::size_t ucount, std::vector<Time>& uvec,
                        std::vector<Time>& uold, OldOf old_of) {
        const int b = static_cast<int>(tab.bag.size());
        TwState s;
        s.p.resize(tab.bag_edges.size());
        for (std::size_t k = 0; k < tab.bag_edges.size(); ++k)
            if (inherit[k] >= 0) s.p[k] = cs.p[inherit[k]];
        // neighbours of u in the bag with their chosen label sets
        std::vector<std::pair<int, const std::vector<Time>*>> nbr;
        for (std::size_t f = 0; f < fresh_slots.size(); ++f) {
            int k = fresh_slots[f];
            s.p[k] = static_cast<std::uint16_t>(pick[f]);
            auto [i, j] = tab.bag_edges[k];
            int w = i == pu ? j : i;
            nbr.emplace_back(w, &choices_[tab.bag_edge_ids[k]].sets[pick[f]]);
        }
        s.cost_p = cs.cost_p + extra;
        s.zeta_below = cs.zeta_below;
        s.back1 = ci;

        s.rin.assign(static_cast<std::size_t>(b) * nt_ * b, inf_);
        auto at = [&](int v, Time t, int w) -> Time& { return s.rin[(static_cast<std::size_t>(v) * nt_ + t) * b + w]; };
        // from u: one hop to a neighbour, then anything the child allows
        for (Time tau = 0; tau <= horizon_; ++tau) {
            at(pu, tau, pu) = tau;
            for (auto [w, set] : nbr) {
                Time tw = next_in(*set, tau);
                if (tw >= inf_) continue;
                for (int x = 0; x < b; ++x) {
                    if (x == pu) continue;
                    Time r = rin_at(child, cs, old_of(w), tw, old_of(x));
                    if (r < at(pu, tau, x)) at(pu, tau, x) = r;
                }
            }
        }
        // from an old vertex: either avoid u, or reach u as early as possible and continue from there
        for (int v = 0; v < b; ++v) {
            if (v == pu) continue;
            for (Time t = 0; t <= horizon_; ++t) {
                Time au = inf_;
                for (auto [w, set] : nbr) {
                    Time rw = rin_at(child, cs, old_of(v), t, old_of(w));
                    au = std::min(au, next_in(*set, rw));
                }
                at(v, t, pu) = au;
                for (int x = 0; x < b; ++x) {
                    if (x == pu) continue;
                    Time r = rin_at(child, cs, old_of(v), t, old_of(x));
                    if (au < inf_) r = std::min(r, at(pu, au, x));
                    at(v, t, x) = r;
                }
            }
        }
        s.rbelow.assign(ucount, 0);
        for (std::size_t code = 0; code < ucount; ++code) {
            decode(code, b, uvec);
            for (int y = 0; y < b; ++y) {
                if (y == pu) continue;
                Time best = uvec[y];
                for (int x = 0; x < b; ++x)
                    if (uvec[x] < inf_) best = std::min(best, at(x, uvec[x], y));
                uold[old_of(y)] = best;
            }
            s.rbelow[code] = cs.rbelow[encode(uold)];
        }
        store(tab, std::move(s));
    }

    void forget(NodeTable& tab, const NodeTable& child, Vertex u) {
        const int b = static_cast<int>(tab.bag.size());
        const int cb = b + 1;
        const int pu = static_cast<int>(std::lower_bound(child.bag.begin(), child.bag.end(), u) - child.bag.begin());
        auto old_of = [&](int i) { return i < pu ? i : i + 1; };
        std::vector<int> keep(tab.bag_edges.size());
        for (std::size_t k = 0; k < tab.bag_edges.size(); ++k)
            keep[k] = static_cast<int>(std::find(child.bag_edge_ids.begin(), child.bag_edge_ids.end(),
                                                 tab.bag_edge_ids[k]) -
                                       child.bag_edge_ids.begin());
        std::vector<int> dropped;
        for (std::size_t k = 0; k < child.bag_edges.size(); ++k)
            if (child.bag_edges[k].first == pu || child.bag_edges[k].second == pu) dropped.push_back(static_cast<int>(k));
        const std::size_t ucount = u_count(b);
        std::vector<Time> uvec, uext(cb);
        for (int ci = 0; ci < static_cast<int>(child.states.size()); ++ci) {
            const TwState& cs = child.states[ci];
            TwState s;
            s.back1 = ci;
            s.p.resize(keep.size());
            s.cost_p = 0;
            for (std::size_t k = 0; k < keep.size(); ++k) {
                s.p[k] = cs.p[keep[k]];
                s.cost_p += choices_[tab.bag_edge_ids[k]].cost[s.p[k]];
            }
            s.zeta_below = cs.zeta_below;
            for (int k : dropped) s.zeta_below += choices_[child.bag_edge_ids[k]].cost[cs.p[k]];
            s.rin.assign(static_cast<std::size_t>(b) * nt_ * b, inf_);
            for (int v = 0; v < b; ++v)
                for (Time t = 0; t <= horizon_; ++t)
                    for (int w = 0; w < b; ++w)
                        s.rin[(static_cast<std::size_t>(v) * nt_ + t) * b + w] = rin_at(child, cs, old_of(v), t, old_of(w));
            s.rbelow.assign(ucount, 0);
            for (std::size_t code = 0; code < ucount; ++code) {
                decode(code, b, uvec);
                bool reached = false;
                for (int x = 0; x < b; ++x) {
                    uext[old_of(x)] = uvec[x];
                    if (uvec[x] < inf_ && rin_at(child, cs, old_of(x), uvec[x], pu) < inf_) reached = true;
                }
                uext[pu] = inf_;
                int val = cs.rbelow[encode(uext)] + (reached ? 1 : 0);
                s.rbelow[code] = static_cast<std::int16_t>(std::min(inst_.h, val));
            }
            store(tab, std::move(s));
        }
    }

    void join_round(int b, const std::vector<Time>& cur, std::vector<Time>& out) const {
        out = cur;
        auto idx = [&](int v, Time t, int w) { return (static_cast<std::size_t>(v) * nt_ + t) * b + w; };
        for (int v = 0; v < b; ++v)
            for (Time t = 0; t <= horizon_; ++t)
                for (int x = 0; x < b; ++x) {
                    Time ax = cur[idx(v, t, x)];
                    if (ax >= inf_) continue;
                    for (int w = 0; w < b; ++w) out[idx(v, t, w)] = std::min(out[idx(v, t, w)], cur[idx(x, ax, w)]);
                }
    }

    void join(NodeTable& tab, const NodeTable& left, const NodeTable& right) {
        const int b = static_cast<int>(tab.bag.size());
        int rounds = 0;
        while ((1 << rounds) < b) ++rounds;
        std::map<std::vector<std::uint16_t>, std::vector<int>> by_p;
        for (int j = 0; j < static_cast<int>(right.states.size()); ++j) by_p[right.states[j].p].push_back(j);
        const std::size_t ucount = u_count(b);
        std::vector<Time> uvec, ustar(b), tmp;
        for (int i = 0; i < static_cast<int>(left.states.size()); ++i) {
            const TwState& ls = left.states[i];
            auto it = by_p.find(ls.p);
            if (it == by_p.end()) continue;
            for (int j : it->second) {
                const TwState& rs = right.states[j];
                if (ls.cost_p + ls.zeta_below + rs.zeta_below > inst_.zeta) continue;
                TwState s;
                s.p = ls.p;
                s.cost_p = ls.cost_p;
                s.zeta_below = ls.zeta_below + rs.zeta_below;
                s.back1 = i;
                s.back2 = j;
                s.rin.resize(ls.rin.size());
                for (std::size_t k = 0; k < ls.rin.size(); ++k) s.rin[k] = std::min(ls.rin[k], rs.rin[k]);
                for (int r = 0; r < rounds; ++r) {
                    join_round(b, s.rin, tmp);
                    s.rin.swap(tmp);
                }
                if (opt_.check_join_fixpoint && stats_) {
                    join_round(b, s.rin, tmp);
                    if (tmp != s.rin) ++stats_->join_fixpoint_violations;
                }
                s.rbelow.assign(ucount, 0);
                for (std::size_t code = 0; code < ucount; ++code) {
                    decode(code, b, uvec);
                    for (int y = 0; y < b; ++y) {
                        Time best = uvec[y];
                        for (int x = 0; x < b; ++x)
                            if (uvec[x] < inf_) best = std::min(best, s.rin[(static_cast<std::size_t>(x) * nt_ + uvec[x]) * b + y]);
                        ustar[y] = best;
                    }
                    std::size_t sc = encode(ustar);
                    s.rbelow[code] = static_cast<std::int16_t>(std::min(inst_.h, ls.rbelow[sc] + rs.rbelow[sc]));
                }
                store(tab, std::move(s));
            }
        }
    }

    void trace(int x, int si, Perturbation& cert) {
        // chosen[e] = choice index, collected where each edge leaves the bag
        std::vector<int> chosen(g_.edge_count(), -1);
        std::vector<std::pair<int, int>> stack{{x, si}};
        while (!stack.empty()) {
            auto [node, idx] = stack.back();
            stack.pop_back();
            const NiceNode& nd = nice_.nodes[node];
            const TwState& s = tables_[node].states[idx];
            switch (nd.kind) {
                case NiceKind::Leaf: break;
                case NiceKind::Introduce: stack.push_back({nd.children[0], s.back1}); break;
                case NiceKind::Forget: {
                    const NodeTable& child = tables_[nd.children[0]];
                    const TwState& cs = child.states[s.back1];
                    for (std::size_t k = 0; k < child.bag_edges.size(); ++k) {
                        Vertex a = child.bag[child.bag_edges[k].first], c = child.bag[child.bag_edges[k].second];
                        if (a == nd.vertex || c == nd.vertex) chosen[child.bag_edge_ids[k]] = cs.p[k];
                    }
                    stack.push_back({nd.children[0], s.back1});
                    break;
                }
                case NiceKind::Join:
                    stack.push_back({nd.children[0], s.back1});
                    stack.push_back({nd.children[1], s.back2});
                    break;
            }
        }
        const NodeTable& top = tables_[x];
        for (std::size_t k = 0; k < top.bag_edges.size(); ++k) chosen[top.bag_edge_ids[k]] = top.states[si].p[k];
        std::vector<std::vector<Time>> lists(g_.edge_count());
        for (EdgeId e = 0; e < g_.edge_count(); ++e) {
            if (chosen[e] < 0) {
                auto l = g_.labels(e);
                lists[e].assign(l.begin(), l.end());
            } else {
                lists[e] = choices_[e].sets[chosen[e]];
            }
        }
        cert = diff_as_perturbation(g_, g_.with_labels(std::move(lists)), inst_.delta, inst_.zeta);
    }

    const TrlpInstance& inst_;
    const TemporalGraph& g_;
    const NiceDecomposition& nice_;
    TwOptions opt_;
    TwStats* stats_;
    Time horizon_, inf_, nt_, base_;
    std::vector<EdgeChoices> choices_;
    std::vector<NodeTable> tables_;
    std::unordered_map<std::string, int> index_;
    std::int64_t candidates_ = 0;
    int node_ = 0;
};

}  // namespace

SolveResult solve_trlp_treewidth_source(const TrlpInstance& inst, const TreeDecomposition& d, Vertex source,
                                        const TwOptions& opt, TwStats* stats) {
    inst.validate();
    NiceDecomposition nice = make_nice(inst.graph, d, source);
    TwSolver solver(inst, nice, opt, stats);
    SolveResult res;
    res.strategy = "treewidth-dp";
    res.source = source;
    res.certificate.delta = inst.delta;
    res.certificate.zeta = inst.zeta;
    Perturbation cert;
    res.reach_count = solver.run(&cert);
    res.answer = res.reach_count >= inst.h;
    if (res.answer) res.certificate = cert;
    return res;
}

SolveResult solve_trlp_treewidth(const TrlpInstance& inst, const TreeDecomposition& d, const TwOptions& opt,
                                 TwStats* stats) {
    inst.validate();
    d.validate(inst.graph);
    SolveResult res;
    res.strategy = "treewidth-dp";
    res.certificate.delta = inst.delta;
    res.certificate.zeta = inst.zeta;
    for (Vertex s = 0; s < inst.graph.vertex_count(); ++s) {
        SolveResult r = solve_trlp_treewidth_source(inst, d, s, opt, stats);
        if (r.answer) return r;
        res.reach_count = std::max(res.reach_count, r.reach_count);
    }
    return res;
}

}  // namespace temporeach
