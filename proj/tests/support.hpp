#pragma once

// Shared fixtures for the unit tests and the acceptance runner.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "temporeach/ecc.hpp"
#include "temporeach/reach.hpp"
#include "temporeach/testkit.hpp"
#include "temporeach/tgraph.hpp"

namespace support {

using namespace temporeach;

inline TemporalGraph graph(int n, std::vector<EdgeSpec> edges) { return TemporalGraph(n, std::move(edges)); }

// Max over every (delta, zeta)-perturbation and every source of the swept reach.
inline int brute_best_reach(const TemporalGraph& g, int delta, int zeta, std::int64_t cap = 50'000'000) {
    EnumerationLimits lim;
    lim.cap = cap;
    return oracle_max_reach(g, delta, zeta, lim).best;
}

// Per-source max reach, optionally restricted to a set of movable edges.
inline std::vector<int> brute_reach_per_source(const TemporalGraph& g, int delta, int zeta,
                                               const std::vector<char>& allowed = {}) {
    EnumerationLimits lim;
    lim.allowed = allowed;
    lim.cap = 50'000'000;
    std::vector<int> best(g.vertex_count(), 0);
    for_each_perturbation(g, delta, zeta, lim, [&](const LabelLists& lists, const Perturbation&) {
        for (Vertex s = 0; s < g.vertex_count(); ++s) best[s] = std::max(best[s], sweep_reach(g, lists, s));
        return true;
    });
    return best;
}

// Min eccentricity from source over every perturbation, nullopt if always infinite.
inline std::optional<int> brute_min_ecc(const TemporalGraph& g, Vertex source, int delta, int zeta,
                                        EccVariant variant) {
    EnumerationLimits lim;
    lim.cap = 50'000'000;
    std::optional<int> best;
    for_each_perturbation(g, delta, zeta, lim, [&](const LabelLists& lists, const Perturbation&) {
        auto e = variant == EccVariant::Shortest ? path_shortest_ecc(g, lists, source)
                                                 : path_fastest_ecc(g, lists, source);
        if (e && (!best || *e < *best)) best = e;
        return !(best && *best == 0);
    });
    return best;
}

// Moved time-edges sit on pairwise distinct edges that form a forest.
inline bool moved_edges_form_forest(const Perturbation& p, int n) {
    std::vector<int> root(n);
    std::iota(root.begin(), root.end(), 0);
    std::function<int(int)> find = [&](int x) { return root[x] == x ? x : root[x] = find(root[x]); };
    std::set<std::pair<Vertex, Vertex>> seen;
    for (const auto& r : p.records) {
        if (r.old_time == r.new_time) continue;
        if (!seen.insert({r.u, r.v}).second) return false;
        int a = find(r.u), b = find(r.v);
        if (a == b) return false;
        root[a] = b;
    }
    return true;
}

// Every CNF over 1..max_vars variables with 1..max_clauses non-tautological clauses
// (clauses taken as a multiset, no repeated variable inside a clause).
inline std::vector<CnfFormula> tiny_formulas(int max_vars, int max_clauses) {
    std::vector<CnfFormula> out;
    for (int nv = 1; nv <= max_vars; ++nv) {
        std::vector<std::vector<int>> clause_pool;
        int combos = 1;
        for (int i = 0; i < nv; ++i) combos *= 3;
        for (int c = 1; c < combos; ++c) {
            std::vector<int> clause;
            int x = c;
            for (int v = 1; v <= nv; ++v, x /= 3) {
                if (x % 3 == 1) clause.push_back(v);
                if (x % 3 == 2) clause.push_back(-v);
            }
            clause_pool.push_back(clause);
        }
        std::function<void(std::vector<int>&, int)> rec = [&](std::vector<int>& picked, int from) {
            if (!picked.empty()) {
                CnfFormula f;
                f.num_vars = nv;
                for (int i : picked) f.clauses.push_back(clause_pool[i]);
                out.push_back(f);
            }
            if (static_cast<int>(picked.size()) == max_clauses) return;
            for (int i = from; i < static_cast<int>(clause_pool.size()); ++i) {
                picked.push_back(i);
                rec(picked, i);
                picked.pop_back();
            }
        };
        std::vector<int> picked;
        rec(picked, 0);
    }
    return out;
}

// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("temporeach_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string write(const std::string& name, const std::string& text) const {
        auto p = path_ / name;
        std::ofstream(p, std::ios::binary) << text;
        return p.string();
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

}  // namespace support
