#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "temporeach/instance.hpp"
#include "temporeach/reach.hpp"
#include "temporeach/tgraph.hpp"

namespace temporeach {

// Every label widened by +-delta, clamped to [1, T+delta].
TemporalGraph expand_labels(const TemporalGraph& g, int delta);

// Records moving one original label onto each tree time absent from the
// original edge. The original picked is the nearest one, smaller on ties.
Perturbation tree_certificate(const TemporalGraph& g, const ForemostTree& tree, int delta);

// yes iff some delta-perturbation gives a vertex reach >= h. The source reported is the
// smallest one with maximum reach and reach_count is that maximum.
SolveResult solve_trp(const TemporalGraph& g, int delta, int h);

struct Exploration {
    ForemostTree tree;
    std::int64_t queue_ops = 0;
};

// Foremost search where edges flagged in `perturbable` may take any time within
// +-delta of one of their labels. Pops are ordered by (time, target, from).
Exploration explore(const TemporalGraph& g, Vertex source, int delta, const std::vector<char>& perturbable);

bool explore_with_perturbable_set(const TemporalGraph& g, Vertex source, int k, int delta,
                                  const std::vector<EdgeId>& eset);

// Number of queue operations the XP route would need in the worst case.
double xp_work_estimate(const TrlpInstance& inst);
SolveResult solve_trlp_xp(const TrlpInstance& inst, const SolverConfig& cfg = {});

SolveResult solve_trlp_big_zeta(const TrlpInstance& inst);

enum class Strategy { Auto, DegreeShortcut, BigZeta, TreeDp, TreewidthDp, Xp, Oracle };
std::optional<Strategy> parse_strategy(const std::string& name);
std::string strategy_name(Strategy s);

// Runs the first applicable exact route. Throws Refusal when none applies.
SolveResult solve_trlp(const TrlpInstance& inst, const SolverConfig& cfg = {}, Strategy forced = Strategy::Auto);

}  // namespace temporeach
