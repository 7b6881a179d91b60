#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "temporeach/instance.hpp"

namespace temporeach {

struct TreeDecomposition {
    std::vector<std::vector<Vertex>> bags;
    std::vector<std::pair<int, int>> tree_edges;  // (parent, child) as given

    int width() const;
    // Throws InvalidInput naming the failing bag, edge or vertex.
    void validate(const TemporalGraph& g) const;
};

TreeDecomposition parse_decomposition(std::istream& in);
TreeDecomposition parse_decomposition_string(const std::string& text);
std::string serialize_decomposition(const TreeDecomposition& d);

enum class NiceKind { Leaf, Introduce, Forget, Join };

struct NiceNode {
    NiceKind kind = NiceKind::Leaf;
    std::vector<Vertex> bag;  // sorted
    Vertex vertex = -1;  // introduced or forgotten vertex
    std::vector<int> children;
};

struct NiceDecomposition {
    std::vector<NiceNode> nodes;
    int root = -1;

    int width() const;
    std::vector<int> postorder() const;
    // Axioms plus node shapes, root bag == {source}. Throws InvalidInput.
    void validate(const TemporalGraph& g, Vertex source) const;
};

NiceDecomposition make_nice(const TemporalGraph& g, const TreeDecomposition& d, Vertex source);

// Width-minimal decomposition by elimination-order search. n <= 20.
TreeDecomposition decompose_exact_small(const TemporalGraph& g);

struct TwStats {
    std::int64_t states_total = 0;
    std::int64_t max_states_per_node = 0;
    std::int64_t join_fixpoint_violations = 0;  // counted only when checking
};

struct TwOptions {
    std::int64_t state_cap = 1'000'000;
    bool check_join_fixpoint = false;
};

SolveResult solve_trlp_treewidth_source(const TrlpInstance& inst, const TreeDecomposition& d, Vertex source,
                                        const TwOptions& opt = {}, TwStats* stats = nullptr);
SolveResult solve_trlp_treewidth(const TrlpInstance& inst, const TreeDecomposition& d, const TwOptions& opt = {},
                                 TwStats* stats = nullptr);

}  // namespace temporeach
