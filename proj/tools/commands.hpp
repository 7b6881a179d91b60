#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "temporeach/instance.hpp"

namespace temporeach::cli {

struct RunConfig {
    std::string subcommand;  // trlp, trp, ecc, gen, verify, oracle, reach
    std::string mode;  // gen: domset|sat-tsep|sat-tfaep|random; oracle: trlp|ecc
    std::string graph_path;
    std::string perturbation_path;
    std::string decomposition_path;
    std::string cnf_path;
    std::string output_path;
    std::optional<int> delta, zeta, h, k, source, r;
    std::optional<std::string> variant;
    std::string strategy = "auto";
    std::string profile = "sparse";
    std::uint64_t seed = 1;
    SolverConfig caps;
    bool json = false;
};

// Exit codes
inline constexpr int kYes = 0;
inline constexpr int kNo = 1;
inline constexpr int kError = 2;

int cmd_trlp(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_trp(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_ecc(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_reach(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Applies TEMPOREACH_CAP when set. Throws std::invalid_argument on a malformed value.
void apply_env_caps(SolverConfig& caps);

}  // namespace temporeach::cli
