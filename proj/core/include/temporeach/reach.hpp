#pragma once

#include <optional>
#include <vector>

#include "temporeach/tgraph.hpp"

namespace temporeach {

struct TreeStep {
    EdgeId edge;
    Vertex from;
    Vertex to;
    Time time;
};

// Ubiquitous foremost tree. Unreachable vertices have no arrival and parent -1.
struct ForemostTree {
    Vertex source = 0;
    std::vector<Vertex> parent;
    std::vector<EdgeId> parent_edge;
    std::vector<Time> edge_time;  // time on the edge to the parent, 0 for roots/unreached
    std::vector<std::optional<Time>> arrival;

    bool reaches(Vertex v) const { return arrival[v].has_value(); }
    int reach_count() const;
    std::vector<TreeStep> path_to(Vertex v) const;
};

// Paths must leave the source strictly after depart_after. arrival(source) is 0.
ForemostTree foremost_tree(const TemporalGraph& g, Vertex source, Time depart_after = 0);

std::vector<Vertex> reach_set(const TemporalGraph& g, Vertex source);

struct MaxReach {
    Vertex source;
    int count;
};
MaxReach max_reachability(const TemporalGraph& g);

// Keeps only the tree edges from source, each with the single time the tree uses.
TemporalGraph sparsify_for_source(const TemporalGraph& g, Vertex source);

}  // namespace temporeach
