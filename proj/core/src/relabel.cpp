#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "temporeach/errors.hpp"
#include "temporeach/tgraph.hpp"

namespace temporeach {

namespace {

std::string record_name(const Relabel& r) {
    return "record (" + std::to_string(r.u) + "," + std::to_string(r.v) + ") " + std::to_string(r.old_time) +
           "->" + std::to_string(r.new_time);
}

bool within(Time from, Time to, int delta) {
    return to >= 1 && to >= from - delta && to <= from + delta;
}

// Hungarian method on a square cost matrix, O(k^3).
int assignment_cost(const std::vector<std::vector<int>>& cost) {
    const int k = static_cast<int>(cost.size());
    const int inf = std::numeric_limits<int>::max() / 4;
    std::vector<int> u(k + 1, 0), v(k + 1, 0), p(k + 1, 0), way(k + 1, 0);
    for (int i = 1; i <= k; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<int> minv(k + 1, inf);
        std::vector<char> used(k + 1, 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], d = inf, j1 = 0;
            for (int j = 1; j <= k; ++j) {
                if (used[j]) continue;
                int cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < d) {
                    d = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= k; ++j) {
                if (used[j]) {
                    u[p[j]] += d;
                    v[j] -= d;
                } else {
                    minv[j] -= d;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    int total = 0;
    for (int j = 1; j <= k; ++j) total += cost[p[j] - 1][j - 1];
    return total;
}

template <class T>
bool parse_int(const std::string& tok, T& out) {
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

bool skippable(const std::string& line) {
    auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

}  // namespace

int Perturbation::perturbed_count() const {
    return static_cast<int>(std::count_if(records.begin(), records.end(),
                                          [](const Relabel& r) { return r.old_time != r.new_time; }));
}

void Perturbation::canonicalize() {
    for (auto& r : records)
        if (r.u > r.v) std::swap(r.u, r.v);
    std::sort(records.begin(), records.end());
}

void check_perturbation(const TemporalGraph& g, const Perturbation& p) {
    if (p.delta < 0 || p.zeta < 0) throw InvalidInput("delta and zeta must be nonnegative");
    const Time horizon = g.lifetime() + p.delta;
    std::set<std::tuple<EdgeId, Time>> seen;
    std::map<EdgeId, std::vector<Relabel>> by_edge;
    for (const auto& r : p.records) {
        auto e = g.find_edge(r.u, r.v);
        if (!e) throw InvalidInput(record_name(r) + ": no such edge");
        auto l = g.labels(*e);
        if (!std::binary_search(l.begin(), l.end(), r.old_time))
            throw InvalidInput(record_name(r) + ": old time is not a label of the edge");
        if (!within(r.old_time, r.new_time, p.delta))
            throw InvalidInput(record_name(r) + ": new time outside [max(1,old-delta), old+delta]");
        if (r.new_time > horizon) throw InvalidInput(record_name(r) + ": new time beyond T+delta");
        if (!seen.insert({*e, r.old_time}).second) throw InvalidInput(record_name(r) + ": duplicate record");
        by_edge[*e].push_back(r);
    }
    for (const auto& [e, recs] : by_edge) {
        auto l = g.labels(e);
        std::map<Time, Time> moved;
        for (const auto& r : recs) moved[r.old_time] = r.new_time;
        std::set<Time> result;
        for (Time t : l) {
            auto it = moved.find(t);
            Time nt = it == moved.end() ? t : it->second;
            if (!result.insert(nt).second) {
                const Relabel* culprit = &recs.front();
                for (const auto& r : recs)
                    if (r.new_time == nt) culprit = &r;
                throw InvalidInput(record_name(*culprit) + ": collides with another label on the edge");
            }
        }
    }
    if (p.perturbed_count() > p.zeta)
        throw InvalidInput("perturbed count " + std::to_string(p.perturbed_count()) + " exceeds zeta " +
                           std::to_string(p.zeta));
}

TemporalGraph apply_perturbation(const TemporalGraph& g, const Perturbation& p) {
    check_perturbation(g, p);
    std::vector<std::vector<Time>> lists(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto l = g.labels(e);
        lists[e].assign(l.begin(), l.end());
    }
    std::map<EdgeId, std::map<Time, Time>> moved;
    for (const auto& r : p.records) moved[*g.find_edge(r.u, r.v)][r.old_time] = r.new_time;
    for (auto& [e, m] : moved) {
        for (auto& t : lists[e]) {
            auto it = m.find(t);
            if (it != m.end()) t = it->second;
        }
        std::sort(lists[e].begin(), lists[e].end());
    }
    return g.with_labels(std::move(lists));
}

std::optional<int> min_relabel_cost(std::span<const Time> old_labels, std::span<const Time> new_labels,
                                    int delta) {
    if (old_labels.size() != new_labels.size()) return std::nullopt;
    const std::size_t k = old_labels.size();
    std::vector<Time> a(old_labels.begin(), old_labels.end()), b(new_labels.begin(), new_labels.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    // A window matching exists iff the sorted alignment is one.
    for (std::size_t i = 0; i < k; ++i)
        if (!within(a[i], b[i], delta)) return std::nullopt;
    if (a == b) return 0;
    const int big = static_cast<int>(k) + 1;
    std::vector<std::vector<int>> cost(k, std::vector<int>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            cost[i][j] = a[i] == b[j] ? 0 : within(a[i], b[j], delta) ? 1 : big;
    return assignment_cost(cost);
}

std::optional<int> validate_relabelling(const TemporalGraph& g, const TemporalGraph& g2, int delta) {
    if (g.vertex_count() != g2.vertex_count() || g.edges() != g2.edges())
        throw InvalidInput("graphs differ in vertices or edges");
    int total = 0;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (g.labels(e).size() != g2.labels(e).size())
            throw InvalidInput("label count differs on edge (" + std::to_string(g.edge(e).u) + "," +
                               std::to_string(g.edge(e).v) + ")");
        auto c = min_relabel_cost(g.labels(e), g2.labels(e), delta);
        if (!c) return std::nullopt;
        total += *c;
    }
    return total;
}

namespace {

// One optimal matching for an edge, reported as its moved pairs.
std::vector<std::pair<Time, Time>> relabel_pairs(std::span<const Time> from, std::span<const Time> to,
                                                 int delta) {
    const std::size_t k = from.size();
    const int big = static_cast<int>(k) + 1;
    std::vector<std::vector<int>> cost(k, std::vector<int>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            cost[i][j] = from[i] == to[j] ? 0 : within(from[i], to[j], delta) ? 1 : big;
    const int target = assignment_cost(cost);
    // Greedy fix: assign row i to the smallest column j that keeps the optimum.
    std::vector<char> row_done(k, 0), col_done(k, 0);
    std::vector<std::pair<Time, Time>> out;
    int spent = 0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (col_done[j] || cost[i][j] >= big) continue;
            std::vector<std::vector<int>> rest;
            for (std::size_t r = i + 1; r < k; ++r) {
                std::vector<int> row;
                for (std::size_t c = 0; c < k; ++c)
                    if (!col_done[c] && c != j) row.push_back(cost[r][c]);
                rest.push_back(std::move(row));
            }
            int remaining = rest.empty() ? 0 : assignment_cost(rest);
            if (spent + cost[i][j] + remaining == target) {
                spent += cost[i][j];
                col_done[j] = 1;
                row_done[i] = 1;
                if (from[i] != to[j]) out.emplace_back(from[i], to[j]);
                break;
            }
        }
    }
    return out;
}

}  // namespace

Perturbation diff_as_perturbation(const TemporalGraph& g, const TemporalGraph& g2, int delta, int zeta) {
    if (!validate_relabelling(g, g2, delta)) throw InvalidInput("graphs are not delta-related");
    Perturbation p;
    p.delta = delta;
    p.zeta = zeta;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (std::ranges::equal(g.labels(e), g2.labels(e))) continue;
        for (auto [a, b] : relabel_pairs(g.labels(e), g2.labels(e), delta))
            p.records.push_back({g.edge(e).u, g.edge(e).v, a, b});
    }
    p.canonicalize();
    return p;
}

std::vector<std::pair<std::vector<Time>, int>> enumerate_relabellings(std::span<const Time> labels, int delta,
                                                                      Time horizon, int max_cost) {
    std::set<std::vector<Time>> sets;
    std::vector<Time> cur;
    std::vector<Time> used;
    auto rec = [&](auto&& self, std::size_t i, int moved) -> void {
        if (i == labels.size()) {
            std::vector<Time> s = cur;
            std::sort(s.begin(), s.end());
            sets.insert(std::move(s));
            return;
        }
        Time t = labels[i];
        for (Time nt = std::max<Time>(1, t - delta); nt <= std::min<Time>(horizon, t + delta); ++nt) {
            int nm = moved + (nt != t);
            if (nm > max_cost) continue;
            if (std::find(cur.begin(), cur.end(), nt) != cur.end()) continue;
            cur.push_back(nt);
            self(self, i + 1, nm);
            cur.pop_back();
        }
    };
    rec(rec, 0, 0);
    std::vector<std::pair<std::vector<Time>, int>> out;
    out.reserve(sets.size());
    for (const auto& s : sets) {
        int c = *min_relabel_cost(labels, s, delta);
        if (c <= max_cost) out.emplace_back(s, c);
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.second < y.second; });
    return out;
}

TemporalGraph parse_graph(std::istream& in) {
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<EdgeSpec> edges;
    std::map<std::pair<Vertex, Vertex>, int> first_line;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        auto tok = tokens(line);
        if (n < 0) {
            if (tok.size() != 2 || tok[0] != "n" || !parse_int(tok[1], n) || n < 0)
                throw ParseError(lineno, "expected 'n <count>'");
            continue;
        }
        if (tok[0] != "e" || tok.size() < 4) throw ParseError(lineno, "malformed edge line");
        Vertex u, v;
        if (!parse_int(tok[1], u) || !parse_int(tok[2], v)) throw ParseError(lineno, "malformed vertex id");
        if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(lineno, "vertex id out of range");
        if (u >= v) throw ParseError(lineno, "edge endpoints must satisfy u < v");
        EdgeSpec s{u, v, {}};
        for (std::size_t i = 3; i < tok.size(); ++i) {
            Time t;
            if (!parse_int(tok[i], t)) throw ParseError(lineno, "malformed label '" + tok[i] + "'");
            if (t < 1) throw ParseError(lineno, "label < 1");
            if (!s.labels.empty() && t == s.labels.back()) throw ParseError(lineno, "duplicate label");
            if (!s.labels.empty() && t < s.labels.back()) throw ParseError(lineno, "labels not increasing");
            s.labels.push_back(t);
        }
        auto [it, fresh] = first_line.emplace(std::make_pair(u, v), lineno);
        if (!fresh)
            throw ParseError(lineno, "duplicate edge (first at line " + std::to_string(it->second) + ")");
        edges.push_back(std::move(s));
    }
    if (n < 0) throw ParseError(0, "missing 'n <count>' header");
    return TemporalGraph(n, std::move(edges));
}

TemporalGraph parse_graph_string(const std::string& text) {
    std::istringstream ss(text);
    return parse_graph(ss);
}

std::string serialize_graph(const TemporalGraph& g) {
    std::string out = "n " + std::to_string(g.vertex_count()) + "\n";
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        out += "e " + std::to_string(g.edge(e).u) + " " + std::to_string(g.edge(e).v);
        for (Time t : g.labels(e)) out += " " + std::to_string(t);
        out += "\n";
    }
    return out;
}

Perturbation parse_perturbation(std::istream& in) {
    Perturbation p;
    bool have_delta = false, have_zeta = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        auto tok = tokens(line);
        if (tok[0] == "delta" || tok[0] == "zeta") {
            int val;
            if (tok.size() != 2 || !parse_int(tok[1], val) || val < 0)
                throw ParseError(lineno, "expected '" + tok[0] + " <nonnegative integer>'");
            (tok[0] == "delta" ? p.delta : p.zeta) = val;
            (tok[0] == "delta" ? have_delta : have_zeta) = true;
            continue;
        }
        if (tok[0] != "p" || tok.size() != 5) throw ParseError(lineno, "malformed record line");
        if (!have_delta || !have_zeta) throw ParseError(lineno, "records must follow delta and zeta headers");
        Relabel r;
        if (!parse_int(tok[1], r.u) || !parse_int(tok[2], r.v) || !parse_int(tok[3], r.old_time) ||
            !parse_int(tok[4], r.new_time))
            throw ParseError(lineno, "malformed integer in record");
        p.records.push_back(r);
    }
    if (!have_delta || !have_zeta) throw ParseError(0, "missing delta/zeta header");
    p.canonicalize();
    return p;
}

Perturbation parse_perturbation_string(const std::string& text) {
    std::istringstream ss(text);
    return parse_perturbation(ss);
}

std::string serialize_perturbation(const Perturbation& p) {
    std::string out = "delta " + std::to_string(p.delta) + "\nzeta " + std::to_string(p.zeta) + "\n";
    for (const auto& r : p.records)
        out += "p " + std::to_string(r.u) + " " + std::to_string(r.v) + " " + std::to_string(r.old_time) + " " +
               std::to_string(r.new_time) + "\n";
    return out;
}

}  // namespace temporeach
