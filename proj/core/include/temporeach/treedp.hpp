#pragma once

#include <optional>
#include <vector>

#include "temporeach/instance.hpp"

namespace temporeach {

struct MckpItem {
    int weight;
    int profit;
};

struct MckpInstance {
    int capacity = 0;
    std::vector<std::vector<MckpItem>> classes;
};

struct MckpSolution {
    // best[w]: max profit with total weight <= w; nullopt if no selection fits.
    std::vector<std::optional<int>> best;
    // choice[i][w]: item taken from class i in the prefix optimum at capacity w, -1 if none.
    std::vector<std::vector<int>> choice;

    // One item index per class realizing best[w].
    std::vector<int> pick(int w, const MckpInstance& inst) const;
};

MckpSolution mckp_solve(const MckpInstance& inst);

// best[v][z][t]: most vertices of v's subtree reachable from v by paths whose first
// edge is strictly after t, using at most z moved time-edges. Capped at h.
struct TreeDpTable {
    Vertex root = 0;
    std::vector<Vertex> parent;
    std::vector<std::vector<std::vector<int>>> best;
    Time horizon = 0;  // T + delta
};

TreeDpTable tree_dp_table(const TrlpInstance& inst, Vertex root);

SolveResult solve_trlp_tree(const TrlpInstance& inst, Vertex source);
SolveResult solve_trlp_tree_all_sources(const TrlpInstance& inst, int jobs = 1);

}  // namespace temporeach
