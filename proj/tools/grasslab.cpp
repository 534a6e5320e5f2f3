// grasslab: exact verification harness for two-vertex stabilizer orbits on
// Grassmann graph local subgraphs.
//
// Exit codes: 0 all checks pass, 1 verification failure, 2 domain/class
// error, 64 usage or parse error.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>

#include "grasslab/errors.hpp"
#include "grasslab/report.hpp"

namespace {

void add_common_flags(CLI::App* cmd, grasslab::report::RunConfig& cfg) {
    cmd->add_option("--q", cfg.q, "field order (prime power)");
    cmd->add_option("--n", cfg.n, "ambient dimension (n > 2k)");
    cmd->add_option("--k", cfg.k, "vertex dimension (k >= 3)");
    cmd->add_option("--i", cfg.i, "distance between the base vertices (1 < i < k)");
    cmd->add_option("--seed", cfg.seed, "seed for the base pair and samples");
    cmd->add_option("--enum-budget", cfg.enum_budget, "global vertex enumeration cap");
    cmd->add_option("--valency-budget", cfg.valency_budget, "local spectrum valency cap");
    cmd->add_option("--witness-samples", cfg.witness_samples,
                    "witness spot checks per class");
    cmd->add_option("--skip", cfg.skip, "check names to skip (repeatable)");
    cmd->add_option("--format", cfg.format, "output format: json | markdown");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact orbit/representation verification for Grassmann graph local subgraphs"};
    app.require_subcommand(1);

    grasslab::report::RunConfig cfg;
    std::string z_text, z2_text;

    CLI::App* partition = app.add_subcommand(
        "partition", "build the seed pair and print the five-class partition");
    add_common_flags(partition, cfg);

    CLI::App* verify =
        app.add_subcommand("verify", "run the full verification suite");
    add_common_flags(verify, cfg);

    CLI::App* witness = app.add_subcommand(
        "witness", "construct a verified stabilizer element sending z to z'");
    add_common_flags(witness, cfg);
    witness->add_option("--z", z_text, "serialized subspace z (q:n:d:rows)")->required();
    witness->add_option("--z2", z2_text, "serialized subspace z' (q:n:d:rows)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help path
        app.exit(e);
        return 64;
    }

    try {
        grasslab::report::VerificationReport rep;
        if (partition->parsed()) {
            rep = grasslab::report::run_partition(cfg);
        } else if (verify->parsed()) {
            rep = grasslab::report::run_verify(cfg);
        } else {
            rep = grasslab::report::run_witness(cfg, z_text, z2_text);
        }
        std::cout << rep.render();
        return rep.pass() ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 64;
    } catch (const grasslab::class_mismatch_error& e) {
        std::fprintf(stderr, "class mismatch: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 70;
    }
}
