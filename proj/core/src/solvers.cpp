#include "temporeach/solvers.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <set>
#include <tuple>

#include "temporeach/errors.hpp"
#include "temporeach/testkit.hpp"
#include "temporeach/treedp.hpp"
#include "temporeach/twdp.hpp"

namespace temporeach {

void TrlpInstance::validate() const {
    if (delta < 0 || zeta < 0) throw InvalidInput("delta and zeta must be nonnegative");
    if (h < 1 || h > std::max(1, graph.vertex_count()))
        throw InvalidInput("h must lie in [1, n]");
    if (graph.vertex_count() < 1) throw InvalidInput("graph has no vertices");
}

TemporalGraph expand_labels(const TemporalGraph& g, int delta) {
    const Time horizon = g.lifetime() + delta;
    std::vector<std::vector<Time>> lists(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        std::set<Time> s;
        for (Time t : g.labels(e))
            for (Time x = std::max(1, t - delta); x <= std::min(horizon, t + delta); ++x) s.insert(x);
        lists[e].assign(s.begin(), s.end());
    }
    return g.with_labels(std::move(lists));
}

Perturbation tree_certificate(const TemporalGraph& g, const ForemostTree& tree, int delta) {
    Perturbation p;
    p.delta = delta;
    for (Vertex v = 0; v < static_cast<Vertex>(tree.parent.size()); ++v) {
        if (v == tree.source || !tree.reaches(v)) continue;
        EdgeId e = tree.parent_edge[v];
        Time t = tree.edge_time[v];
        auto l = g.labels(e);
        if (std::binary_search(l.begin(), l.end(), t)) continue;
        // nearest original label, smaller first on ties
        auto it = std::lower_bound(l.begin(), l.end(), t);
        Time pick = 0;
        if (it != l.begin()) pick = *(it - 1);
        if (it != l.end() && (pick == 0 || *it - t < t - pick)) pick = *it;
        if (pick == 0 || std::abs(pick - t) > delta) throw InvalidInput("tree time not reachable within delta");
        p.records.push_back({g.edge(e).u, g.edge(e).v, pick, t});
    }
    p.canonicalize();
    p.zeta = p.perturbed_count();
    return p;
}

SolveResult solve_trp(const TemporalGraph& g, int delta, int h) {
    if (g.vertex_count() < 1) throw InvalidInput("graph has no vertices");
    if (delta < 0) throw InvalidInput("delta must be nonnegative");
    SolveResult res;
    res.strategy = "trp";
    TemporalGraph wide = expand_labels(g, delta);
    int best = -1;
    ForemostTree best_tree;
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        ForemostTree tree = foremost_tree(wide, s);
        int c = tree.reach_count();
        if (c > best) {
            best = c;
            best_tree = std::move(tree);
        }
    }
    res.reach_count = best;
    res.source = best_tree.source;
    res.answer = best >= h;
    if (res.answer) res.certificate = tree_certificate(g, best_tree, delta);
    res.certificate.delta = delta;
    return res;
}

SolveResult solve_trlp_big_zeta(const TrlpInstance& inst) {
    inst.validate();
    if (inst.zeta < inst.h - 1) throw InvalidInput("big-zeta route needs zeta >= h-1");
    const TemporalGraph& g = inst.graph;
    SolveResult trp = solve_trp(g, inst.delta, inst.h);
    SolveResult res;
    res.strategy = "big-zeta";
    res.reach_count = trp.reach_count;
    res.certificate.delta = inst.delta;
    res.certificate.zeta = inst.zeta;
    if (!trp.answer) return res;

    std::vector<Relabel> moved;
    for (const auto& r : trp.certificate.records)
        if (r.old_time != r.new_time) moved.push_back(r);
    const std::size_t keep = static_cast<std::size_t>(std::max(0, inst.h - 1));
    if (moved.size() > keep) {
        Perturbation full;
        full.delta = inst.delta;
        full.zeta = static_cast<int>(moved.size());
        full.records = moved;
        auto arr = foremost_tree(apply_perturbation(g, full), trp.source).arrival;
        auto gamma = [&](const Relabel& r) {
            Time a = arr[r.u].value_or(std::numeric_limits<Time>::max());
            Time b = arr[r.v].value_or(std::numeric_limits<Time>::max());
            return std::max(a, b);
        };
        std::stable_sort(moved.begin(), moved.end(), [&](const Relabel& x, const Relabel& y) {
            return std::make_tuple(gamma(x), x) < std::make_tuple(gamma(y), y);
        });
        moved.resize(keep);
    }
    res.answer = true;
    res.source = trp.source;
    res.certificate.records = moved;
    res.certificate.canonicalize();
    res.reach_count = foremost_tree(apply_perturbation(g, res.certificate), res.source).reach_count();
    return res;
}

std::optional<Strategy> parse_strategy(const std::string& name) {
    if (name == "auto") return Strategy::Auto;
    if (name == "degree-shortcut") return Strategy::DegreeShortcut;
    if (name == "big-zeta") return Strategy::BigZeta;
    if (name == "tree-dp") return Strategy::TreeDp;
    if (name == "treewidth-dp") return Strategy::TreewidthDp;
    if (name == "xp") return Strategy::Xp;
    if (name == "oracle") return Strategy::Oracle;
    return std::nullopt;
}

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::Auto: return "auto";
        case Strategy::DegreeShortcut: return "degree-shortcut";
        case Strategy::BigZeta: return "big-zeta";
        case Strategy::TreeDp: return "tree-dp";
        case Strategy::TreewidthDp: return "treewidth-dp";
        case Strategy::Xp: return "xp";
        case Strategy::Oracle: return "oracle";
    }
    return "auto";
}

namespace {

SolveResult degree_shortcut(const TrlpInstance& inst) {
    const TemporalGraph& g = inst.graph;
    if (inst.h > g.max_degree() + 1) throw Refusal("precondition", "h exceeds max degree + 1");
    Vertex hub = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) == g.max_degree()) {
            hub = v;
            break;
        }
    SolveResult res;
    res.answer = true;
    res.source = hub;
    res.reach_count = foremost_tree(g, hub).reach_count();
    res.certificate.delta = inst.delta;
    res.certificate.zeta = inst.zeta;
    res.strategy = "degree-shortcut";
    return res;
}

SolveResult run_treewidth(const TrlpInstance& inst, const SolverConfig& cfg) {
    if (inst.graph.vertex_count() > 20) throw Refusal("treewidth", "no decomposition search beyond 20 vertices");
    TreeDecomposition d = decompose_exact_small(inst.graph);
    if (d.width() > cfg.max_treewidth)
        throw Refusal("treewidth", "width " + std::to_string(d.width()) + " > bound " + std::to_string(cfg.max_treewidth));
    TwOptions opt;
    opt.state_cap = cfg.state_cap;
    SolveResult res = solve_trlp_treewidth(inst, d, opt);
    res.strategy = "treewidth-dp";
    return res;
}

}  // namespace

SolveResult solve_trlp(const TrlpInstance& inst, const SolverConfig& cfg, Strategy forced) {
    inst.validate();
    const TemporalGraph& g = inst.graph;
    switch (forced) {
        case Strategy::DegreeShortcut: return degree_shortcut(inst);
        case Strategy::BigZeta:
            if (inst.zeta < inst.h - 1) throw Refusal("precondition", "big-zeta needs zeta >= h-1");
            return solve_trlp_big_zeta(inst);
        case Strategy::TreeDp:
            if (!g.is_tree()) throw Refusal("precondition", "tree-dp needs a tree");
            return solve_trlp_tree_all_sources(inst, cfg.jobs);
        case Strategy::TreewidthDp: return run_treewidth(inst, cfg);
        case Strategy::Xp: return solve_trlp_xp(inst, cfg);
        case Strategy::Oracle: return oracle_trlp(inst, cfg);
        case Strategy::Auto: break;
    }
    if (inst.h <= g.max_degree() + 1) return degree_shortcut(inst);
    if (inst.zeta >= inst.h - 1) return solve_trlp_big_zeta(inst);
    if (g.is_tree()) return solve_trlp_tree_all_sources(inst, cfg.jobs);
    try {
        return run_treewidth(inst, cfg);
    } catch (const Refusal&) {
    }
    if (xp_work_estimate(inst) <= static_cast<double>(cfg.work_cap)) return solve_trlp_xp(inst, cfg);
    try {
        return oracle_trlp(inst, cfg);
    } catch (const Refusal&) {
    }
    throw Refusal("too-large", "instance too large for exact solve");
}

}  // namespace temporeach
