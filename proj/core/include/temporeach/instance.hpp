#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "temporeach/tgraph.hpp"

namespace temporeach {

struct TrlpInstance {
    TemporalGraph graph;
    int delta = 1;
    int zeta = 0;
    int h = 1;

    // Throws InvalidInput when h is outside [1, n] or a parameter is negative.
    void validate() const;
};

struct SolveResult {
    bool answer = false;
    Vertex source = 0;  // meaningful when answer is yes
    int reach_count = 0;  // best reach found; for ecc solvers, n when yes
    Perturbation certificate;
    std::string strategy;
    std::optional<int> eccentricity;  // ecc solvers only; nullopt is infinite
};

struct SolverConfig {
    std::int64_t work_cap = 100'000'000;  // queue operations for XP
    int jobs = 1;
    int max_treewidth = 2;
    std::int64_t state_cap = 1'000'000;  // per decomposition node
    std::int64_t oracle_cap = 10'000'000;  // enumerated perturbations
};

}  // namespace temporeach
