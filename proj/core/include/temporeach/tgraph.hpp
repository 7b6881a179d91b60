#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace temporeach {

using Vertex = std::int32_t;
using Time = std::int32_t;
using EdgeId = std::int32_t;

struct Edge {
    Vertex u;
    Vertex v;  // u < v
    auto operator<=>(const Edge&) const = default;
};

struct EdgeSpec {
    Vertex u;
    Vertex v;
    std::vector<Time> labels;
};

struct Incidence {
    Vertex neighbor;
    EdgeId edge;
};

// Undirected graph with a strictly increasing label list per edge.
// Edges are stored sorted by (u, v) so edge ids are canonical.
class TemporalGraph {
public:
    TemporalGraph() = default;
    TemporalGraph(int n, std::vector<EdgeSpec> edges);

    int vertex_count() const noexcept { return n_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    const Edge& edge(EdgeId e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::span<const Time> labels(EdgeId e) const;
    std::optional<EdgeId> find_edge(Vertex a, Vertex b) const;
    std::span<const Incidence> incident(Vertex v) const;
    int degree(Vertex v) const { return static_cast<int>(incident(v).size()); }

    Time lifetime() const noexcept { return lifetime_; }
    int temporality() const noexcept { return temporality_; }
    int max_degree() const noexcept;
    int time_edge_count() const noexcept { return static_cast<int>(label_pool_.size()); }
    bool is_tree() const;
    bool is_connected() const;

    // Same edges, new label lists (validated). lists[e] replaces labels(e).
    TemporalGraph with_labels(std::vector<std::vector<Time>> lists) const;
    std::vector<EdgeSpec> specs() const;

    bool operator==(const TemporalGraph& o) const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> label_begin_;  // size m+1
    std::vector<Time> label_pool_;
    std::vector<std::size_t> adj_begin_;  // size n+1
    std::vector<Incidence> adj_;
    Time lifetime_ = 0;
    int temporality_ = 0;
};

// One moved (or explicitly fixed) time-edge.
struct Relabel {
    Vertex u;
    Vertex v;
    Time old_time;
    Time new_time;
    auto operator<=>(const Relabel&) const = default;
};

struct Perturbation {
    int delta = 0;
    int zeta = 0;
    std::vector<Relabel> records;  // sorted by (u, v, old_time)

    int perturbed_count() const;
    void canonicalize();
};

// Throws InvalidInput naming the offending record.
void check_perturbation(const TemporalGraph& g, const Perturbation& p);
TemporalGraph apply_perturbation(const TemporalGraph& g, const Perturbation& p);

// Minimum number of moved labels over all assignments old -> new within +-delta.
// nullopt when no such assignment exists.
std::optional<int> min_relabel_cost(std::span<const Time> old_labels,
                                    std::span<const Time> new_labels, int delta);
// Throws InvalidInput on structural mismatch.
std::optional<int> validate_relabelling(const TemporalGraph& g, const TemporalGraph& g2, int delta);

// Records turning g into g2 with minimal moves; g2 must be reachable within delta.
Perturbation diff_as_perturbation(const TemporalGraph& g, const TemporalGraph& g2, int delta, int zeta);

// Every distinct sorted label set reachable from `labels` with at most max_cost moves,
// values in [1, horizon]. Paired with its minimal cost. Deterministic order.
std::vector<std::pair<std::vector<Time>, int>> enumerate_relabellings(
    std::span<const Time> labels, int delta, Time horizon, int max_cost);

TemporalGraph parse_graph(std::istream& in);
TemporalGraph parse_graph_string(const std::string& text);
std::string serialize_graph(const TemporalGraph& g);

Perturbation parse_perturbation(std::istream& in);
Perturbation parse_perturbation_string(const std::string& text);
std::string serialize_perturbation(const Perturbation& p);

}  // namespace temporeach
