#pragma once

#include <optional>
#include <string>

#include "temporeach/instance.hpp"

namespace temporeach {

enum class EccVariant { Shortest, Fastest };

std::string variant_name(EccVariant v);
std::optional<EccVariant> parse_variant(const std::string& s);

struct EccInstance {
    TemporalGraph graph;
    Vertex source = 0;
    int k = 0;
    int delta = 0;
    int zeta = 0;
    EccVariant variant = EccVariant::Shortest;

    void validate() const;
};

// nullopt means some vertex is unreachable.
std::optional<int> shortest_ecc(const TemporalGraph& g, Vertex source);
std::optional<int> fastest_ecc(const TemporalGraph& g, Vertex source);
std::optional<int> eccentricity(const TemporalGraph& g, Vertex source, EccVariant v);

// Applies when delta >= T and zeta >= n-1.
bool expanded_tree_applies(const EccInstance& inst);
SolveResult solve_ecc_expanded_tree(const EccInstance& inst);

// Polynomial branch when it applies, exhaustive search otherwise. Throws Refusal.
SolveResult solve_ecc_perturbed(const EccInstance& inst, const SolverConfig& cfg = {});

}  // namespace temporeach
