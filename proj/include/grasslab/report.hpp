#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace grasslab::report {

/// Parameters and knobs of one CLI run. validate() throws
/// std::invalid_argument on violations (usage errors, exit code 64).
struct RunConfig {
    long q = 2;
    int n = 7, k = 3, i = 2;
    std::uint64_t seed = 0;
    long enum_budget = 20000;
    long valency_budget = 1500;
    int witness_samples = 5;
    std::vector<std::string> skip;
    std::string format = "json";  // json | markdown

    void validate() const;
    nlohmann::json to_json() const;
};

struct CheckEntry {
    std::string name;
    std::string status;  // pass | fail | skipped | declined
    std::string expected;
    std::string actual;
    std::string detail;
};

/// Deterministic report: checks are emitted sorted by name and contain no
/// wall times (timings go to stderr), so a fixed (config, seed) renders to
/// identical bytes on every run and any thread count.
struct VerificationReport {
    std::string command;
    RunConfig cfg;
    std::vector<CheckEntry> checks;
    nlohmann::json extra = nlohmann::json::object();

    bool pass() const;
    std::string render() const;  // cfg.format picks JSON or markdown
};

/// Build the seed pair, compare class sizes against the closed forms, and
/// attach the serialized partition.
VerificationReport run_partition(const RunConfig& cfg);

/// The full verification suite: orbit sizes, equitability, structure table,
/// Gram tables, transition identities, Gram inverse, theta_1 identity,
/// eigen data, local spectrum (budget permitting), witness spot checks,
/// C-conditions and Gram rank.
VerificationReport run_verify(const RunConfig& cfg);

/// Parse two serialized subspaces, classify them against the seed pair, and
/// construct the verified stabilizer witness.
VerificationReport run_witness(const RunConfig& cfg, const std::string& z_text,
                               const std::string& z2_text);

}  // namespace grasslab::report
