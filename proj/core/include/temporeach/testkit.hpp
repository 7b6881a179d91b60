#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "temporeach/ecc.hpp"
#include "temporeach/instance.hpp"

namespace temporeach {

// ---- independent evaluators (no priority queues) ----

using LabelLists = std::vector<std::vector<Time>>;

LabelLists label_lists(const TemporalGraph& g);

// Arrival per vertex by sweeping time-edges in time order; source 0, unreachable nullopt.
std::vector<std::optional<Time>> sweep_arrivals(const TemporalGraph& g, const LabelLists& lists, Vertex source);
int sweep_reach(const TemporalGraph& g, const LabelLists& lists, Vertex source);

// Eccentricities by enumerating simple strict temporal paths.
std::optional<int> path_shortest_ecc(const TemporalGraph& g, const LabelLists& lists, Vertex source);
std::optional<int> path_fastest_ecc(const TemporalGraph& g, const LabelLists& lists, Vertex source);

// ---- perturbation enumeration ----

struct EdgeOption {
    std::vector<Time> labels;  // sorted result
    std::vector<std::pair<Time, Time>> moves;  // one min-move injection, moved pairs only
};

// All label sets one edge can take, each with a cheapest injection, cost <= max_moves.
std::vector<EdgeOption> edge_options(std::span<const Time> labels, int delta, Time horizon, int max_moves);

struct EnumerationLimits {
    std::vector<char> allowed;  // per edge; empty means all edges may move
    std::int64_t cap = 10'000'000;
};

// Number of (delta, zeta)-perturbations the oracle would visit (distinct results).
std::int64_t count_perturbations(const TemporalGraph& g, int delta, int zeta, const EnumerationLimits& lim = {});

// Visits every distinct perturbed labelling in lexicographic option order. The callback
// returns false to stop. Throws Refusal("oracle-cap") beyond the cap.
void for_each_perturbation(const TemporalGraph& g, int delta, int zeta, const EnumerationLimits& lim,
                           const std::function<bool(const LabelLists&, const Perturbation&)>& fn);

struct OracleReach {
    int best = 0;
    Vertex source = 0;
    Perturbation witness;
};

// Max over every perturbation of R_max; first witness in enumeration order.
OracleReach oracle_max_reach(const TemporalGraph& g, int delta, int zeta, const EnumerationLimits& lim = {});

SolveResult oracle_trlp(const TrlpInstance& inst, const SolverConfig& cfg = {});
SolveResult oracle_ecc(const EccInstance& inst, const SolverConfig& cfg = {});

// ---- reductions ----

struct SimpleGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

struct CnfFormula {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;  // signed 1-based literals

    void validate() const;
};

TrlpInstance domset_to_trlp(const SimpleGraph& g, int r);
EccInstance sat_to_tsep(const CnfFormula& f, int k, int delta);
EccInstance sat_to_tfaep(const CnfFormula& f, int k, int delta);

bool brute_domset(const SimpleGraph& g, int r);
bool brute_sat(const CnfFormula& f);

// All graphs on exactly n vertices up to isomorphism (n <= 5).
std::vector<SimpleGraph> nonisomorphic_graphs(int n);

CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs_string(const std::string& text);
SimpleGraph parse_simple_graph(std::istream& in);  // .tg text, labels ignored

// ---- random instances ----

enum class Profile { Tree, Sparse, Treewidth2 };
std::optional<Profile> parse_profile(const std::string& s);

struct RandomSpec {
    int n_min = 3;
    int n_max = 6;
    int max_edges = 8;
    Time max_time = 4;
    int max_labels = 2;
    int max_delta = 2;
    int max_zeta = 3;
};

// Deterministic: identical (seed, profile, spec) give identical instances on every platform.
TrlpInstance random_instance(std::uint64_t seed, Profile profile, const RandomSpec& spec = {});

// .tg body followed by header-style parameter lines.
std::string emit_instance(const TrlpInstance& inst);
std::string emit_instance(const EccInstance& inst);

}  // namespace temporeach
