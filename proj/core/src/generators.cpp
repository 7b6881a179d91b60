#include <algorithm>
#include <bit>
#include <cstdlib>
#include <istream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "temporeach/errors.hpp"
#include "temporeach/testkit.hpp"

namespace temporeach {

void CnfFormula::validate() const {
    if (num_vars < 0) throw InvalidInput("negative variable count");
    if (clauses.empty()) throw InvalidInput("formula has no clauses");
    for (const auto& c : clauses) {
        if (c.empty()) throw InvalidInput("empty clause");
        for (int lit : c)
            if (lit == 0 || std::abs(lit) > num_vars) throw InvalidInput("literal out of range");
    }
}

TrlpInstance domset_to_trlp(const SimpleGraph& g, int r) {
    if (r < 1) throw InvalidInput("r must be at least 1");
    const int n = g.n;
    // 0 is the hub; 1+i and 1+n+i are the two copies of vertex i
    std::vector<EdgeSpec> edges;
    for (int i = 0; i < n; ++i) {
        edges.push_back({0, 1 + i, {2}});
        edges.push_back({1 + i, 1 + n + i, {2}});
    }
    for (auto [a, b] : g.edges) {
        edges.push_back({1 + a, 1 + n + b, {2}});
        edges.push_back({1 + b, 1 + n + a, {2}});
    }
    TrlpInstance inst;
    inst.graph = TemporalGraph(2 * n + 1, std::move(edges));
    inst.delta = 1;
    inst.zeta = r;
    inst.h = 2 * n + 1;
    return inst;
}

namespace {

// Adds time t to edge (a,b), merging with labels already on it.
void add_time(std::map<std::pair<Vertex, Vertex>, std::set<Time>>& acc, Vertex a, Vertex b, Time t) {
    if (a > b) std::swap(a, b);
    acc[{a, b}].insert(t);
}

TemporalGraph build(int n, const std::map<std::pair<Vertex, Vertex>, std::set<Time>>& acc) {
    std::vector<EdgeSpec> edges;
    for (const auto& [e, ts] : acc) edges.push_back({e.first, e.second, {ts.begin(), ts.end()}});
    return TemporalGraph(n, std::move(edges));
}

}  // namespace

EccInstance sat_to_tsep(const CnfFormula& f, int k, int delta) {
    f.validate();
    if (k < 4) throw InvalidInput("k must be at least 4");
    if (delta < 1) throw InvalidInput("delta must be at least 1");
    const int nv = f.num_vars;
    // chain vertex (i, l) for l in 1..k; (i, 0) is the source
    auto var = [&](int i, int l) -> Vertex { return l == 0 ? 0 : 1 + i * k + (l - 1); };
    auto clause = [&](int j) -> Vertex { return 1 + nv * k + j; };
    std::map<std::pair<Vertex, Vertex>, std::set<Time>> acc;
    for (int i = 0; i < nv; ++i) {
        for (int l = 0; l < k - 4; ++l) add_time(acc, var(i, l), var(i, l + 1), l + 1);
        add_time(acc, var(i, k - 4), var(i, k - 3), k - 3);
        add_time(acc, var(i, k - 4), var(i, k - 2), 3 * delta + k - 2);
        add_time(acc, var(i, k - 3), var(i, k - 2), k - 2);
        add_time(acc, var(i, k - 2), var(i, k - 1), delta + k - 1);
        add_time(acc, var(i, k - 1), var(i, k), 3 * delta + k);
    }
    for (int j = 0; j < static_cast<int>(f.clauses.size()); ++j)
        for (int lit : f.clauses[j]) {
            int i = std::abs(lit) - 1;
            if (lit > 0) add_time(acc, var(i, k - 1), clause(j), k);
            else add_time(acc, var(i, k), clause(j), 3 * delta + k + 1);
        }
    EccInstance inst;
    inst.graph = build(1 + nv * k + static_cast<int>(f.clauses.size()), acc);
    inst.source = 0;
    inst.k = k;
    inst.delta = delta;
    inst.zeta = inst.graph.edge_count();
    inst.variant = EccVariant::Shortest;
    return inst;
}

EccInstance sat_to_tfaep(const CnfFormula& f, int k, int delta) {
    f.validate();
    if (k < 2) throw InvalidInput("k must be at least 2");
    if (delta < 1) throw InvalidInput("delta must be at least 1");
    const int nv = f.num_vars;
    auto var = [&](int i, int l) -> Vertex { return l == 0 ? 0 : 1 + i * (k - 1) + (l - 1); };
    auto clause = [&](int j) -> Vertex { return 1 + nv * (k - 1) + j; };
    std::map<std::pair<Vertex, Vertex>, std::set<Time>> acc;
    for (int i = 0; i < nv; ++i) {
        add_time(acc, var(i, 0), var(i, 1), 1);
        for (int l = 1; l <= k - 2; ++l) add_time(acc, var(i, l), var(i, l + 1), l + 1);
    }
    for (int j = 0; j < static_cast<int>(f.clauses.size()); ++j)
        for (int lit : f.clauses[j]) {
            int i = std::abs(lit) - 1;
            add_time(acc, var(i, k - 1), clause(j), lit > 0 ? k + 2 * delta : k - 1);
        }
    EccInstance inst;
    inst.graph = build(1 + nv * (k - 1) + static_cast<int>(f.clauses.size()), acc);
    inst.source = 0;
    inst.k = k;
    inst.delta = delta;
    inst.zeta = inst.graph.edge_count();
    inst.variant = EccVariant::Fastest;
    return inst;
}

bool brute_domset(const SimpleGraph& g, int r) {
    if (g.n > 12) throw Refusal("size-guard", "brute dominating set limited to 12 vertices");
    std::vector<unsigned> closed(g.n);
    for (int i = 0; i < g.n; ++i) closed[i] = 1u << i;
    for (auto [a, b] : g.edges) {
        closed[a] |= 1u << b;
        closed[b] |= 1u << a;
    }
    const unsigned all = (1u << g.n) - 1;
    for (unsigned s = 0; s <= all; ++s) {
        if (std::popcount(s) > r) continue;
        unsigned cover = 0;
        for (int i = 0; i < g.n; ++i)
            if (s >> i & 1) cover |= closed[i];
        if (cover == all) return true;
    }
    return false;
}

bool brute_sat(const CnfFormula& f) {
    f.validate();
    if (f.num_vars > 16) throw Refusal("size-guard", "brute SAT limited to 16 variables");
    for (unsigned a = 0; a < (1u << f.num_vars); ++a) {
        bool ok = std::all_of(f.clauses.begin(), f.clauses.end(), [&](const std::vector<int>& c) {
            return std::any_of(c.begin(), c.end(), [&](int lit) {
                bool val = a >> (std::abs(lit) - 1) & 1;
                return lit > 0 ? val : !val;
            });
        });
        if (ok) return true;
    }
    return false;
}

std::vector<SimpleGraph> nonisomorphic_graphs(int n) {
    if (n < 1 || n > 5) throw InvalidInput("graph enumeration supports 1..5 vertices");
    std::vector<std::pair<int, int>> slots;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) slots.emplace_back(a, b);
    std::map<std::pair<int, int>, int> slot_of;
    for (int i = 0; i < static_cast<int>(slots.size()); ++i) slot_of[slots[i]] = i;
    std::vector<int> perm(n);
    std::set<unsigned> seen;
    std::vector<SimpleGraph> out;
    for (unsigned mask = 0; mask < (1u << slots.size()); ++mask) {
        unsigned canon = mask;
        std::iota(perm.begin(), perm.end(), 0);
        do {
            unsigned img = 0;
            for (int i = 0; i < static_cast<int>(slots.size()); ++i) {
                if (!(mask >> i & 1)) continue;
                int a = perm[slots[i].first], b = perm[slots[i].second];
                if (a > b) std::swap(a, b);
                img |= 1u << slot_of[{a, b}];
            }
            canon = std::min(canon, img);
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (!seen.insert(canon).second) continue;
        SimpleGraph g;
        g.n = n;
        for (int i = 0; i < static_cast<int>(slots.size()); ++i)
            if (canon >> i & 1) g.edges.push_back(slots[i]);
        out.push_back(std::move(g));
    }
    return out;
}

CnfFormula parse_dimacs(std::istream& in) {
    CnfFormula f;
    std::string line;
    int lineno = 0;
    bool header = false;
    int declared = 0;
    std::vector<int> cur;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first) || first == "c" || first[0] == '%') continue;
        if (first == "p") {
            std::string fmt;
            if (!(ss >> fmt >> f.num_vars >> declared) || fmt != "cnf") throw ParseError(lineno, "expected 'p cnf V C'");
            header = true;
            continue;
        }
        if (!header) throw ParseError(lineno, "clause before 'p cnf' header");
        std::istringstream all(line);
        long long lit;
        while (all >> lit) {
            if (lit == 0) {
                if (cur.empty()) throw ParseError(lineno, "empty clause");
                f.clauses.push_back(cur);
                cur.clear();
            } else {
                if (std::llabs(lit) > f.num_vars) throw ParseError(lineno, "literal out of range");
                cur.push_back(static_cast<int>(lit));
            }
        }
        if (!all.eof()) throw ParseError(lineno, "malformed literal");
    }
    if (!header) throw ParseError(0, "missing 'p cnf' header");
    if (!cur.empty()) f.clauses.push_back(cur);
    if (static_cast<int>(f.clauses.size()) != declared)
        throw ParseError(0, "header declares " + std::to_string(declared) + " clauses, found " +
                                std::to_string(f.clauses.size()));
    f.validate();
    return f;
}

CnfFormula parse_dimacs_string(const std::string& text) {
    std::istringstream ss(text);
    return parse_dimacs(ss);
}

SimpleGraph parse_simple_graph(std::istream& in) {
    SimpleGraph g;
    g.n = -1;
    std::set<std::pair<int, int>> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string kind;
        if (!(ss >> kind) || kind[0] == '#') continue;
        if (g.n < 0) {
            if (kind != "n" || !(ss >> g.n) || g.n < 0) throw ParseError(lineno, "expected 'n <count>'");
            continue;
        }
        int a, b;
        if (kind != "e" || !(ss >> a >> b)) throw ParseError(lineno, "malformed edge line");
        if (a < 0 || b < 0 || a >= g.n || b >= g.n) throw ParseError(lineno, "vertex id out of range");
        if (a >= b) throw ParseError(lineno, "edge endpoints must satisfy u < v");
        if (!seen.insert({a, b}).second) throw ParseError(lineno, "duplicate edge");
        g.edges.emplace_back(a, b);
    }
    if (g.n < 0) throw ParseError(0, "missing 'n <count>' header");
    return g;
}

std::optional<Profile> parse_profile(const std::string& s) {
    if (s == "tree") return Profile::Tree;
    if (s == "sparse") return Profile::Sparse;
    if (s == "treewidth2") return Profile::Treewidth2;
    return std::nullopt;
}

namespace {

// Modulo draws keep sequences identical across standard libraries.
struct Draw {
    std::mt19937_64 rng;
    explicit Draw(std::uint64_t seed) : rng(seed) {}
    int in(int lo, int hi) {  // inclusive
        if (hi <= lo) return lo;
        return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) std::swap(v[i], v[in(0, i)]);
    }
};

}  // namespace

TrlpInstance random_instance(std::uint64_t seed, Profile profile, const RandomSpec& spec) {
    if (spec.n_min < 1 || spec.n_max < spec.n_min || spec.max_time < 1 || spec.max_labels < 1)
        throw InvalidInput("bad random spec");
    Draw d(seed);
    const int n = d.in(spec.n_min, spec.n_max);
    std::set<std::pair<int, int>> pairs;
    auto add = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        if (a != b) pairs.insert({a, b});
    };
    switch (profile) {
        case Profile::Tree:
            for (int v = 1; v < n; ++v) add(v, d.in(0, v - 1));
            break;
        case Profile::Sparse: {
            const int cap = std::min(spec.max_edges, n * (n - 1) / 2);
            const int m = d.in(std::min(cap, n - 1), cap);
            std::vector<std::pair<int, int>> all;
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) all.emplace_back(a, b);
            d.shuffle(all);
            for (int i = 0; i < m; ++i) pairs.insert(all[i]);
            break;
        }
        case Profile::Treewidth2: {
            // partial 2-tree: each vertex leans on an existing edge, then trim to the edge budget
            std::vector<std::pair<int, int>> grown;
            if (n >= 2) grown.emplace_back(0, 1);
            for (int v = 2; v < n; ++v) {
                auto [a, b] = grown[d.in(0, static_cast<int>(grown.size()) - 1)];
                grown.emplace_back(a, v);
                grown.emplace_back(b, v);
            }
            d.shuffle(grown);
            const int keep = std::min<int>(static_cast<int>(grown.size()), d.in(std::max(0, n - 1), spec.max_edges));
            for (int i = 0; i < keep; ++i) add(grown[i].first, grown[i].second);
            break;
        }
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    d.shuffle(perm);
    std::vector<EdgeSpec> edges;
    for (auto [a, b] : pairs) {
        const int count = d.in(1, std::min(spec.max_labels, static_cast<int>(spec.max_time)));
        std::vector<Time> pool(spec.max_time);
        std::iota(pool.begin(), pool.end(), 1);
        d.shuffle(pool);
        std::vector<Time> labels(pool.begin(), pool.begin() + count);
        std::sort(labels.begin(), labels.end());
        edges.push_back({perm[a], perm[b], std::move(labels)});
    }
    TrlpInstance inst;
    inst.graph = TemporalGraph(n, std::move(edges));
    inst.delta = d.in(1, std::max(1, spec.max_delta));
    inst.zeta = d.in(0, spec.max_zeta);
    inst.h = d.in(1, n);
    return inst;
}

std::string emit_instance(const TrlpInstance& inst) {
    return "# delta " + std::to_string(inst.delta) + "\n# zeta " + std::to_string(inst.zeta) + "\n# h " +
           std::to_string(inst.h) + "\n" + serialize_graph(inst.graph);
}

std::string emit_instance(const EccInstance& inst) {
    return "# delta " + std::to_string(inst.delta) + "\n# zeta " + std::to_string(inst.zeta) + "\n# k " +
           std::to_string(inst.k) + "\n# source " + std::to_string(inst.source) + "\n# variant " +
           variant_name(inst.variant) + "\n" + serialize_graph(inst.graph);
}

}  // namespace temporeach
