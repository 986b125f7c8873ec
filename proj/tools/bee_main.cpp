#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bee/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Bee-identification bounds and decoder experiments"};
    app.require_subcommand(1);

    bee::BoundsArgs bounds;
    CLI::App* cb = app.add_subcommand(
        "bounds", "Emit the analytic bound curve for one channel as CSV");
    cb->add_option("--p", bounds.p, "BSC crossover probability in (0, 0.5)")
        ->required();
    cb->add_option("--r-min", bounds.r_min, "Grid start (default 0)");
    cb->add_option("--r-max", bounds.r_max, "Grid end (default 0.6)");
    cb->add_option("--steps", bounds.steps, "Grid points (default 121)");
    cb->add_option("--out", bounds.out_path,
                   "CSV path; omit to stream to stdout");

    bee::SimulateArgs sim;
    CLI::App* cs = app.add_subcommand(
        "simulate", "Monte Carlo decoder error rates over blocklengths");
    cs->add_option("--n", sim.n_list, "Blocklength, repeatable")
        ->required()
        ->delimiter(',');
    cs->add_option("--rate", sim.rate, "Design rate (default 0.1)");
    cs->add_option("--p", sim.p, "BSC crossover probability (default 0.1)");
    cs->add_option("--decoder", sim.decoder,
                   "independent | joint | gmd | bruteforce (default joint)");
    cs->add_option("--ensemble", sim.ensemble, "rce | trc (default rce)");
    cs->add_option("--epsilon", sim.epsilon,
                   "TRC band margin; 0 picks the derived default");
    cs->add_option("--threshold", sim.threshold,
                   "GMD erasure threshold; omit for the derived default");
    cs->add_option("--trials", sim.trials, "Trials per cell (default 1000)");
    cs->add_option("--seed", sim.seed,
                   "Base seed; omitted draws one and echoes it to stderr");
    cs->add_flag("--fix-identity", sim.fix_identity,
                 "Skip permutation sampling (truth is the identity)");
    cs->add_flag("--fixed-codebook", sim.fixed_codebook,
                 "One codebook per cell instead of one per trial");
    cs->add_option("--out", sim.out_path,
                   "CSV path; omit to stream to stdout");

    bee::VerifyArgs ver;
    CLI::App* cv = app.add_subcommand(
        "verify", "Run the bound-inequality grid and decoder oracle suite");
    cv->add_option("--p-points", ver.p_points,
                   "Channel grid size over (0.001, 0.499) (default 500)");
    cv->add_option("--rate-points", ver.rate_points,
                   "Rate grid size per channel (default 100)");
    cv->add_option("--p", ver.p, "Check a single channel instead of the grid");
    cv->add_option("--seed", ver.seed,
                   "Seed for the randomized oracle instances (default 1)");
    cv->add_option("--r1-offset", ver.r1_offset,
                   "Fault injection: perturb r1 in the cross-check; any "
                   "nonzero value must make verification fail");

    bee::CodebookArgs code;
    CLI::App* cc = app.add_subcommand(
        "codebook", "Generate or inspect codebook files");
    cc->add_option("action", code.action, "generate | inspect")->required();
    cc->add_option("--n", code.n, "Blocklength (generate)");
    cc->add_option("--m", code.m, "Row count (generate)");
    cc->add_option("--ensemble", code.ensemble, "rce | trc (default rce)");
    cc->add_option("--epsilon", code.epsilon,
                   "TRC band margin; 0 picks the derived default");
    cc->add_option("--seed", code.seed,
                   "Seed; omitted draws one and echoes it to stderr");
    cc->add_option("--out", code.out_path, "Output path (generate)");
    cc->add_option("--in", code.in_path, "Input path (inspect)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        // Help/version requests exit 0; anything else is a usage error.
        return rc == 0 ? bee::kExitOk : bee::kExitUsage;
    }

    if (cb->parsed()) {
        return bee::cmd_bounds(bounds);
    }
    if (cs->parsed()) {
        return bee::cmd_simulate(sim);
    }
    if (cv->parsed()) {
        return bee::cmd_verify(ver);
    }
    return bee::cmd_codebook(code);
}
