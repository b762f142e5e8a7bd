#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crn/config_io.hpp"
#include "crn/result_table.hpp"

namespace crn {

// A resolved CLI invocation. Every randomized command requires explicit
// seeds; there is no wall-clock fallback.
struct RunManifest {
    std::string command;
    std::string config_path;  // empty => built-in defaults (where legal)
    std::vector<std::uint64_t> seeds;
    std::string output_path;         // empty => stdout
    std::string output_format = "csv";  // csv | json

    void validate() const;  // throws ConfigError
};

// One row per seed: the threshold set, max-SNR set, chosen relay and all
// per-relay SNRs for a fresh channel realization.
ResultTable run_select_relay(const RunManifest& manifest);

// Solve the configured sharing instance per seed, with the swarm optimizer
// or (exact=true) the exhaustive oracle.
ResultTable run_share(const RunManifest& manifest, bool exact);

// One row of SimMetrics per (seed, policy). policy_override, when set, wins
// over the config file. trace_path, when set, receives line-delimited JSON
// packet events for every run.
ResultTable run_simulate(const RunManifest& manifest,
                         std::optional<RelayPolicy> policy_override,
                         const std::string& trace_path);

// Mean optimum objective per (link count, floor) cell, averaged over the
// seed batch; one row per link count, one column per floor. Per seed the
// instances are prefix-nested across link counts.
ResultTable run_share_sweep(const RunManifest& manifest, const std::vector<std::size_t>& links,
                            const std::vector<double>& gamma_db);

// Paired-seed policy comparison across node-count levels; one row per
// (policy, level) carrying the seed-batch means of every metric.
ResultTable run_compare(const RunManifest& manifest, const std::vector<std::string>& policies,
                        const std::vector<std::size_t>& node_levels);

// Serialize per manifest.output_format and write to the output path (or
// stdout when empty).
void write_output(const ResultTable& table, const RunManifest& manifest);

}  // namespace crn
