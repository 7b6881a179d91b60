#include "temporeach/ecc.hpp"

#include <algorithm>
#include <set>

#include "temporeach/errors.hpp"
#include "temporeach/reach.hpp"
#include "temporeach/solvers.hpp"
#include "temporeach/testkit.hpp"

namespace temporeach {

std::string variant_name(EccVariant v) { return v == EccVariant::Shortest ? "shortest" : "fastest"; }

std::optional<EccVariant> parse_variant(const std::string& s) {
    if (s == "shortest") return EccVariant::Shortest;
    if (s == "fastest") return EccVariant::Fastest;
    return std::nullopt;
}

void EccInstance::validate() const {
    if (graph.vertex_count() < 1) throw InvalidInput("graph has no vertices");
    if (source < 0 || source >= graph.vertex_count()) throw InvalidInput("source out of range");
    if (k < 0 || delta < 0 || zeta < 0) throw InvalidInput("k, delta and zeta must be nonnegative");
}

std::optional<int> shortest_ecc(const TemporalGraph& g, Vertex source) {
    const int n = g.vertex_count();
    if (source < 0 || source >= n) throw InvalidInput("source out of range");
    // arrival[v]: earliest arrival using at most `hops` edges
    std::vector<std::optional<Time>> arrival(n);
    std::vector<int> hops_to(n, -1);
    arrival[source] = 0;
    hops_to[source] = 0;
    int found = 1;
    for (int hops = 1; hops < n && found < n; ++hops) {
        auto next = arrival;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            auto l = g.labels(e);
            for (auto [a, b] : {std::pair{g.edge(e).u, g.edge(e).v}, std::pair{g.edge(e).v, g.edge(e).u}}) {
                if (!arrival[a]) continue;
                auto it = std::upper_bound(l.begin(), l.end(), *arrival[a]);
                if (it == l.end()) continue;
                if (!next[b] || *it < *next[b]) next[b] = *it;
            }
        }
        arrival = std::move(next);
        for (Vertex v = 0; v < n; ++v)
            if (arrival[v] && hops_to[v] < 0) {
                hops_to[v] = hops;
                ++found;
            }
    }
    if (found < n) return std::nullopt;
    return *std::max_element(hops_to.begin(), hops_to.end());
}

std::optional<int> fastest_ecc(const TemporalGraph& g, Vertex source) {
    const int n = g.vertex_count();
    if (source < 0 || source >= n) throw InvalidInput("source out of range");
    std::set<Time> starts;
    for (const auto& inc : g.incident(source))
        for (Time t : g.labels(inc.edge)) starts.insert(t);
    std::vector<std::optional<int>> best(n);
    best[source] = 0;
    for (Time t1 : starts) {
        auto tree = foremost_tree(g, source, t1 - 1);
        for (Vertex v = 0; v < n; ++v) {
            if (v == source || !tree.arrival[v]) continue;
            int d = *tree.arrival[v] - t1;
            if (!best[v] || d < *best[v]) best[v] = d;
        }
    }
    int worst = 0;
    for (const auto& b : best) {
        if (!b) return std::nullopt;
        worst = std::max(worst, *b);
    }
    return worst;
}

std::optional<int> eccentricity(const TemporalGraph& g, Vertex source, EccVariant v) {
    return v == EccVariant::Shortest ? shortest_ecc(g, source) : fastest_ecc(g, source);
}

bool expanded_tree_applies(const EccInstance& inst) {
    return inst.delta >= inst.graph.lifetime() && inst.zeta >= inst.graph.vertex_count() - 1;
}

SolveResult solve_ecc_expanded_tree(const EccInstance& inst) {
    inst.validate();
    if (!expanded_tree_applies(inst)) throw InvalidInput("expanded-tree branch needs delta >= T and zeta >= n-1");
    const TemporalGraph& g = inst.graph;
    // With delta >= T every widened label set is an interval starting at 1, so
    // tree arrival times equal tree depths and no perturbation does better.
    ForemostTree tree = foremost_tree(expand_labels(g, inst.delta), inst.source);
    SolveResult res;
    res.strategy = "expanded-tree";
    res.source = inst.source;
    res.reach_count = tree.reach_count();
    res.certificate.delta = inst.delta;
    res.certificate.zeta = inst.zeta;
    if (res.reach_count < g.vertex_count()) return res;
    int depth = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) depth = std::max(depth, static_cast<int>(tree.path_to(v).size()));
    int ecc = inst.variant == EccVariant::Shortest ? depth : std::max(0, depth - 1);
    res.eccentricity = ecc;
    res.answer = ecc <= inst.k;
    if (res.answer) {
        res.certificate = tree_certificate(g, tree, inst.delta);
        res.certificate.zeta = inst.zeta;
    }
    return res;
}

SolveResult solve_ecc_perturbed(const EccInstance& inst, const SolverConfig& cfg) {
    inst.validate();
    if (expanded_tree_applies(inst)) return solve_ecc_expanded_tree(inst);
    SolveResult res = oracle_ecc(inst, cfg);
    res.strategy = "exhaustive";
    return res;
}

}  // namespace temporeach
