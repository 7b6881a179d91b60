#pragma once

#include <optional>
#include <string>

#include "temporeach/ecc.hpp"
#include "temporeach/tgraph.hpp"

namespace temporeach {

struct VerifyReport {
    bool valid = false;
    std::string reason;  // empty when valid
    int moved = 0;  // minimal moved time-edges between input and perturbed graph
    int reach = 0;  // reach from the claimed source after perturbation
    std::optional<int> eccentricity;  // set when a variant was checked
};

// Applies p, re-derives the moved count independently of p's own records, and checks
// (delta, zeta) plus the reach target h.
VerifyReport verify_reach(const TemporalGraph& g, const Perturbation& p, Vertex source, int h);

VerifyReport verify_ecc(const TemporalGraph& g, const Perturbation& p, Vertex source, EccVariant variant, int k);

}  // namespace temporeach
