#include <algorithm>
#include <bit>
#include <functional>
#include <istream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "temporeach/errors.hpp"
#include "temporeach/twdp.hpp"

namespace temporeach {

namespace {

std::string bag_name(int i) { return "bag " + std::to_string(i); }

// Adjacency over the node tree; throws unless it is a tree on all nodes.
std::vector<std::vector<int>> node_tree(int nodes, const std::vector<std::pair<int, int>>& edges) {
    if (nodes == 0) throw InvalidInput("decomposition has no bags");
    if (static_cast<int>(edges.size()) != nodes - 1)
        throw InvalidInput("decomposition tree needs exactly bags-1 edges, got " + std::to_string(edges.size()));
    std::vector<std::vector<int>> adj(nodes);
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= nodes || b >= nodes || a == b)
            throw InvalidInput("bad decomposition tree edge " + std::to_string(a) + "-" + std::to_string(b));
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<char> seen(nodes, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : adj[x])
            if (!seen[y]) {
                seen[y] = 1;
                ++count;
                stack.push_back(y);
            }
    }
    if (count != nodes) throw InvalidInput("decomposition tree is not connected");
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
}

void check_axioms(const TemporalGraph& g, const std::vector<std::vector<Vertex>>& bags,
                  const std::vector<std::vector<int>>& adj) {
    const int n = g.vertex_count();
    const int nodes = static_cast<int>(bags.size());
    std::vector<std::vector<int>> holders(n);
    for (int i = 0; i < nodes; ++i) {
        std::set<Vertex> uniq;
        for (Vertex v : bags[i]) {
            if (v < 0 || v >= n) throw InvalidInput(bag_name(i) + " holds out-of-range vertex " + std::to_string(v));
            if (!uniq.insert(v).second) throw InvalidInput(bag_name(i) + " repeats vertex " + std::to_string(v));
            holders[v].push_back(i);
        }
    }
    for (Vertex v = 0; v < n; ++v)
        if (holders[v].empty()) throw InvalidInput("vertex " + std::to_string(v) + " is in no bag");
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        Vertex a = g.edge(e).u, b = g.edge(e).v;
        bool covered = false;
        for (int i : holders[a])
            if (std::find(bags[i].begin(), bags[i].end(), b) != bags[i].end()) covered = true;
        if (!covered)
            throw InvalidInput("edge (" + std::to_string(a) + "," + std::to_string(b) + ") is in no bag");
    }
    for (Vertex v = 0; v < n; ++v) {
        std::vector<char> in(nodes, 0), seen(nodes, 0);
        for (int i : holders[v]) in[i] = 1;
        std::vector<int> stack{holders[v][0]};
        seen[holders[v][0]] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : adj[x])
                if (in[y] && !seen[y]) {
                    seen[y] = 1;
                    ++count;
                    stack.push_back(y);
                }
        }
        if (count != holders[v].size())
            throw InvalidInput("bags holding vertex " + std::to_string(v) + " are not connected");
    }
}

}  // namespace

int TreeDecomposition::width() const {
    std::size_t w = 0;
    for (const auto& b : bags) w = std::max(w, b.size());
    return static_cast<int>(w) - 1;
}

void TreeDecomposition::validate(const TemporalGraph& g) const {
    auto adj = node_tree(static_cast<int>(bags.size()), tree_edges);
    check_axioms(g, bags, adj);
}

TreeDecomposition parse_decomposition(std::istream& in) {
    TreeDecomposition d;
    std::map<long long, int> ids;
    std::vector<std::pair<std::pair<long long, long long>, int>> raw_edges;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        std::istringstream ss(line);
        std::string kind;
        ss >> kind;
        if (kind == "b") {
            long long id;
            if (!(ss >> id)) throw ParseError(lineno, "expected 'b <id> <v...>'");
            if (ids.count(id)) throw ParseError(lineno, "duplicate bag id " + std::to_string(id));
            ids[id] = static_cast<int>(d.bags.size());
            std::vector<Vertex> bag;
            long long v;
            while (ss >> v) bag.push_back(static_cast<Vertex>(v));
            if (!ss.eof()) throw ParseError(lineno, "malformed vertex in bag");
            std::sort(bag.begin(), bag.end());
            d.bags.push_back(std::move(bag));
        } else if (kind == "t") {
            long long a, b;
            if (!(ss >> a >> b)) throw ParseError(lineno, "expected 't <parent> <child>'");
            std::string extra;
            if (ss >> extra) throw ParseError(lineno, "trailing tokens");
            raw_edges.push_back({{a, b}, lineno});
        } else {
            throw ParseError(lineno, "unknown line kind '" + kind + "'");
        }
    }
    for (auto& [e, ln] : raw_edges) {
        auto ia = ids.find(e.first), ib = ids.find(e.second);
        if (ia == ids.end() || ib == ids.end()) throw ParseError(ln, "tree edge references unknown bag");
        d.tree_edges.emplace_back(ia->second, ib->second);
    }
    return d;
}

TreeDecomposition parse_decomposition_string(const std::string& text) {
    std::istringstream ss(text);
    return parse_decomposition(ss);
}

std::string serialize_decomposition(const TreeDecomposition& d) {
    std::string out;
    for (std::size_t i = 0; i < d.bags.size(); ++i) {
        out += "b " + std::to_string(i);
        for (Vertex v : d.bags[i]) out += " " + std::to_string(v);
        out += "\n";
    }
    for (auto [a, b] : d.tree_edges) out += "t " + std::to_string(a) + " " + std::to_string(b) + "\n";
    return out;
}

int NiceDecomposition::width() const {
    std::size_t w = 0;
    for (const auto& nd : nodes) w = std::max(w, nd.bag.size());
    return static_cast<int>(w) - 1;
}

std::vector<int> NiceDecomposition::postorder() const {
    std::vector<int> out;
    if (root < 0) return out;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
        auto& [x, i] = stack.back();
        if (i < nodes[x].children.size()) {
            int c = nodes[x].children[i++];
            stack.push_back({c, 0});
        } else {
            out.push_back(x);
            stack.pop_back();
        }
    }
    return out;
}

void NiceDecomposition::validate(const TemporalGraph& g, Vertex source) const {
    if (root < 0 || root >= static_cast<int>(nodes.size())) throw InvalidInput("nice decomposition has no root");
    if (nodes[root].bag != std::vector<Vertex>{source}) throw InvalidInput("root bag is not {source}");
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<Vertex>> bags;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& nd = nodes[i];
        bags.push_back(nd.bag);
        if (!std::is_sorted(nd.bag.begin(), nd.bag.end())) throw InvalidInput(bag_name(i) + " not sorted");
        for (int c : nd.children) edges.emplace_back(static_cast<int>(i), c);
        auto with = [](std::vector<Vertex> b, Vertex v) {
            b.push_back(v);
            std::sort(b.begin(), b.end());
            return b;
        };
        switch (nd.kind) {
            case NiceKind::Leaf:
                if (!nd.children.empty() || !nd.bag.empty()) throw InvalidInput(bag_name(i) + ": bad leaf");
                break;
            case NiceKind::Introduce:
                if (nd.children.size() != 1 || std::binary_search(nodes[nd.children[0]].bag.begin(),
                                                                  nodes[nd.children[0]].bag.end(), nd.vertex) ||
                    with(nodes[nd.children[0]].bag, nd.vertex) != nd.bag)
                    throw InvalidInput(bag_name(i) + ": bad introduce");
                break;
            case NiceKind::Forget:
                if (nd.children.size() != 1 || std::binary_search(nd.bag.begin(), nd.bag.end(), nd.vertex) ||
                    with(nd.bag, nd.vertex) != nodes[nd.children[0]].bag)
                    throw InvalidInput(bag_name(i) + ": bad forget");
                break;
            case NiceKind::Join:
                if (nd.children.size() != 2 || nodes[nd.children[0]].bag != nd.bag ||
                    nodes[nd.children[1]].bag != nd.bag)
                    throw InvalidInput(bag_name(i) + ": bad join");
                break;
        }
    }
    auto adj = node_tree(static_cast<int>(nodes.size()), edges);
    check_axioms(g, bags, adj);
}

NiceDecomposition make_nice(const TemporalGraph& g, const TreeDecomposition& d, Vertex source) {
    if (source < 0 || source >= g.vertex_count()) throw InvalidInput("source out of range");
    d.validate(g);
    auto adj = node_tree(static_cast<int>(d.bags.size()), d.tree_edges);
    std::vector<std::vector<Vertex>> bags = d.bags;
    for (auto& b : bags) std::sort(b.begin(), b.end());

    int top = -1;
    for (int i = 0; i < static_cast<int>(bags.size()); ++i)
        if (std::binary_search(bags[i].begin(), bags[i].end(), source)) {
            top = i;
            break;
        }

    NiceDecomposition nd;
    auto add = [&](NiceKind kind, std::vector<Vertex> bag, Vertex v, std::vector<int> children) {
        nd.nodes.push_back({kind, std::move(bag), v, std::move(children)});
        return static_cast<int>(nd.nodes.size()) - 1;
    };
    // Walk from node `from` (bag current) to bag `target`: forgets first, then introduces.
    auto morph = [&](int from, const std::vector<Vertex>& target) {
        std::vector<Vertex> cur = nd.nodes[from].bag;
        for (Vertex v : std::vector<Vertex>(cur)) {
            if (std::binary_search(target.begin(), target.end(), v)) continue;
            cur.erase(std::find(cur.begin(), cur.end(), v));
            from = add(NiceKind::Forget, cur, v, {from});
        }
        for (Vertex v : target) {
            if (std::binary_search(cur.begin(), cur.end(), v)) continue;
            cur.insert(std::upper_bound(cur.begin(), cur.end(), v), v);
            from = add(NiceKind::Introduce, cur, v, {from});
        }
        return from;
    };
    std::function<int(int, int)> build = [&](int x, int parent) -> int {
        std::vector<int> branches;
        for (int y : adj[x]) {
            if (y == parent) continue;
            branches.push_back(morph(build(y, x), bags[x]));
        }
        if (branches.empty()) return morph(add(NiceKind::Leaf, {}, -1, {}), bags[x]);
        int acc = branches[0];
        for (std::size_t i = 1; i < branches.size(); ++i) acc = add(NiceKind::Join, bags[x], -1, {acc, branches[i]});
        return acc;
    };
    int r = build(top, -1);
    nd.root = morph(r, {source});
    return nd;
}

namespace {

using Mask = std::uint32_t;

// Vertices outside `gone` and != v reachable from v through vertices of `gone`.
Mask eliminated_neighbors(const std::vector<Mask>& adj, Mask gone, int v) {
    Mask seen = Mask{1} << v, frontier = seen, out = 0;
    while (frontier) {
        int x = std::countr_zero(frontier);
        frontier &= frontier - 1;
        Mask nb = adj[x] & ~seen;
        seen |= nb;
        out |= nb & ~gone;
        frontier |= nb & gone;
    }
    return out;
}

}  // namespace

TreeDecomposition decompose_exact_small(const TemporalGraph& g) {
    const int n = g.vertex_count();
    if (n > 20) throw Refusal("size-guard", "exact decomposition limited to 20 vertices");
    if (n == 0) throw InvalidInput("graph has no vertices");
    std::vector<Mask> adj(n, 0);
    for (const auto& e : g.edges()) {
        adj[e.u] |= Mask{1} << e.v;
        adj[e.v] |= Mask{1} << e.u;
    }
    const Mask all = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;

    // Greedy min-degree order gives the first bound.
    std::vector<int> best_order;
    int best_width = n;
    {
        Mask gone = 0;
        std::vector<int> order;
        int w = 0;
        for (int step = 0; step < n; ++step) {
            int pick = -1, pd = n + 1;
            for (int v = 0; v < n; ++v) {
                if (gone >> v & 1) continue;
                int d = std::popcount(eliminated_neighbors(adj, gone, v));
                if (d < pd) {
                    pd = d;
                    pick = v;
                }
            }
            w = std::max(w, pd);
            order.push_back(pick);
            gone |= Mask{1} << pick;
        }
        best_order = order;
        best_width = w;
    }
    // Try each smaller width with a memoized search over eliminated sets.
    for (int k = 0; k < best_width; ++k) {
        std::unordered_set<Mask> failed;
        std::vector<int> order;
        std::function<bool(Mask)> search = [&](Mask gone) -> bool {
            if (gone == all) return true;
            if (failed.count(gone)) return false;
            for (int v = 0; v < n; ++v) {
                if (gone >> v & 1) continue;
                if (std::popcount(eliminated_neighbors(adj, gone, v)) > k) continue;
                order.push_back(v);
                if (search(gone | Mask{1} << v)) return true;
                order.pop_back();
            }
            failed.insert(gone);
            return false;
        };
        if (search(0)) {
            best_order = order;
            best_width = k;
            break;
        }
    }

    TreeDecomposition d;
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[best_order[i]] = i;
    Mask gone = 0;
    std::vector<int> parent(n, -1);
    for (int i = 0; i < n; ++i) {
        int v = best_order[i];
        Mask nb = eliminated_neighbors(adj, gone, v);
        std::vector<Vertex> bag{v};
        int first = n;
        for (Mask m = nb; m; m &= m - 1) {
            int x = std::countr_zero(m);
            bag.push_back(x);
            first = std::min(first, pos[x]);
        }
        std::sort(bag.begin(), bag.end());
        d.bags.push_back(std::move(bag));
        parent[i] = first == n ? -1 : first;
        gone |= Mask{1} << v;
    }
    int last_root = -1;
    for (int i = 0; i < n; ++i) {
        if (parent[i] >= 0) {
            d.tree_edges.emplace_back(parent[i], i);
        } else {
            if (last_root >= 0) d.tree_edges.emplace_back(last_root, i);
            last_root = i;
        }
    }
    return d;
}

}  // namespace temporeach
