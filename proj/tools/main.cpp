#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

using temporeach::cli::RunConfig;

namespace {

void instance_flags(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("-g,--graph", cfg.graph_path, "temporal graph (.tg)")->required();
    sub->add_option("--delta", cfg.delta, "max shift per time-edge");
    sub->add_option("--zeta", cfg.zeta, "max number of moved time-edges");
}

void solver_flags(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--jobs", cfg.caps.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--work-cap", cfg.caps.work_cap, "XP work estimate ceiling")->check(CLI::PositiveNumber);
    sub->add_option("--state-cap", cfg.caps.state_cap, "treewidth DP states per node")->check(CLI::PositiveNumber);
    sub->add_option("--oracle-cap", cfg.caps.oracle_cap, "oracle enumeration ceiling")->check(CLI::PositiveNumber);
}

void ecc_flags(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("-k,--k", cfg.k, "eccentricity bound");
    sub->add_option("-s,--source", cfg.source, "source vertex");
    sub->add_option("--variant", cfg.variant, "shortest | fastest");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"temporeach: temporal reachability under timing perturbations"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_help_flag("--help", "print help");
    RunConfig cfg;
    app.add_flag("--json", cfg.json, "machine-readable output");

    auto* trlp = app.add_subcommand("trlp", "max reachability under a (delta, zeta)-perturbation");
    instance_flags(trlp, cfg);
    trlp->add_option("--h", cfg.h, "required reach");
    trlp->add_option("--strategy", cfg.strategy, "auto, degree-shortcut, big-zeta, tree-dp, treewidth-dp, xp, oracle");
    trlp->add_option("-d,--decomposition", cfg.decomposition_path, "tree decomposition for treewidth-dp");
    solver_flags(trlp, cfg);

    auto* trp = app.add_subcommand("trp", "max reachability under an unbounded delta-perturbation");
    trp->add_option("-g,--graph", cfg.graph_path, "temporal graph (.tg)")->required();
    trp->add_option("--delta", cfg.delta, "max shift per time-edge");
    trp->add_option("--h", cfg.h, "required reach");

    auto* ecc = app.add_subcommand("ecc", "temporal eccentricity under perturbation");
    instance_flags(ecc, cfg);
    ecc_flags(ecc, cfg);
    solver_flags(ecc, cfg);

    auto* reach = app.add_subcommand("reach", "foremost arrivals from a source");
    reach->add_option("-g,--graph", cfg.graph_path, "temporal graph (.tg)")->required();
    reach->add_option("-s,--source", cfg.source, "source vertex");

    auto* gen = app.add_subcommand("gen", "instance generators");
    gen->add_option("mode", cfg.mode, "domset | sat-tsep | sat-tfaep | random")->required();
    gen->add_option("-g,--graph", cfg.graph_path, "static graph for domset");
    gen->add_option("-r", cfg.r, "dominating set size");
    gen->add_option("--cnf", cfg.cnf_path, "DIMACS formula");
    gen->add_option("-k,--k", cfg.k, "eccentricity bound for SAT gadgets");
    gen->add_option("--delta", cfg.delta, "delta for SAT gadgets");
    gen->add_option("--seed", cfg.seed, "random seed");
    gen->add_option("--profile", cfg.profile, "tree | sparse | treewidth2");
    gen->add_option("-o,--output", cfg.output_path, "write to file instead of stdout");

    auto* verify = app.add_subcommand("verify", "check a perturbation or solver report against a graph");
    instance_flags(verify, cfg);
    verify->add_option("-p,--perturbation", cfg.perturbation_path, "perturbation file or solver report")->required();
    verify->add_option("-s,--source", cfg.source, "claimed source");
    verify->add_option("--h", cfg.h, "required reach");
    verify->add_option("-k,--k", cfg.k, "eccentricity bound");
    verify->add_option("--variant", cfg.variant, "shortest | fastest");

    auto* oracle = app.add_subcommand("oracle", "brute-force enumeration");
    oracle->add_option("mode", cfg.mode, "trlp | ecc")->required();
    instance_flags(oracle, cfg);
    oracle->add_option("--h", cfg.h, "required reach");
    ecc_flags(oracle, cfg);
    solver_flags(oracle, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : temporeach::cli::kError;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    try {
        temporeach::cli::apply_env_caps(cfg.caps);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return temporeach::cli::kError;
    }
    return temporeach::cli::dispatch(cfg, std::cout, std::cerr);
}
