#include "crn/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

#include "crn/swarm_optimizer.hpp"

namespace crn {

namespace {

std::string join_doubles(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out += ';';
        }
        out += format_double(values[i]);
    }
    return out;
}

Json load_config_or_default(const RunManifest& manifest) {
    if (manifest.config_path.empty()) {
        return Json::object();
    }
    return load_json_file(manifest.config_path);
}

void append_trace(std::ofstream& out, const SimResult& result, std::uint64_t seed,
                  const std::string& policy) {
    for (const auto& event : result.trace) {
        Json line;
        line["seed"] = seed;
        line["policy"] = policy;
        line["t"] = event.time;
        line["event"] = event.kind;
        line["packet"] = event.packet;
        line["node"] = event.node;
        out << line.dump() << '\n';
    }
}

std::string policy_name(RelayPolicy policy) {
    return policy == RelayPolicy::clsss ? "clsss" : "static-random";
}

RelayPolicy policy_from_name(const std::string& name) {
    if (name == "clsss") {
        return RelayPolicy::clsss;
    }
    if (name == "static-random") {
        return RelayPolicy::static_random;
    }
    throw ConfigError("unknown policy '" + name + "' (expected clsss or static-random)");
}

}  // namespace

void RunManifest::validate() const {
    if (seeds.empty()) {
        throw ConfigError("a non-empty seed list is required (--seeds or --seed-list)");
    }
    if (output_format != "csv" && output_format != "json") {
        throw ConfigError("output format must be csv or json");
    }
}

ResultTable run_select_relay(const RunManifest& manifest) {
    manifest.validate();
    const Json j = load_config_or_default(manifest);
    const SelectRelayConfig cfg =
        select_relay_from_json(j, manifest.config_path.empty() ? "defaults" : manifest.config_path);
    const std::string hash = config_hash(to_canonical_json(cfg));

    ResultTable table;
    table.columns = {"seed",          "config_hash",   "relay_count",    "best",
                     "used_fallback", "candidate_set", "optimal_set",    "snr_source_relay",
                     "snr_relay_dest", "snr_equivalent"};
    for (const auto seed : manifest.seeds) {
        const ChannelRealization realization = sample_channel(cfg.relay_count, seed);
        const RelayDecision decision = select_best_relay(realization, cfg.relay);
        std::vector<double> snr_sr;
        std::vector<double> snr_rd;
        std::vector<double> snr_eq;
        for (const auto& candidate : decision.all_candidates) {
            snr_sr.push_back(candidate.snr_source_relay);
            snr_rd.push_back(candidate.snr_relay_dest);
            snr_eq.push_back(candidate.snr_equivalent);
        }
        table.rows.push_back({static_cast<double>(seed), hash,
                              static_cast<double>(cfg.relay_count),
                              decision.best ? Cell{static_cast<double>(*decision.best)}
                                            : Cell{std::string{}},
                              static_cast<double>(decision.used_fallback),
                              join_ids(decision.candidate_set), join_ids(decision.optimal_set),
                              join_doubles(snr_sr), join_doubles(snr_rd), join_doubles(snr_eq)});
    }
    return table;
}

ResultTable run_share(const RunManifest& manifest, bool exact) {
    manifest.validate();
    if (manifest.config_path.empty()) {
        throw ConfigError("share: --config is required (an instance cannot be defaulted)");
    }
    const Json j = load_json_file(manifest.config_path);
    const SharingInstance instance = instance_from_json(j, manifest.config_path);
    PsoConfig pso = pso_from_json(j.contains("pso") ? j.at("pso") : Json(nullptr),
                                  manifest.config_path + ".pso");
    const std::string hash = config_hash(to_canonical_json(instance));

    ResultTable table;
    table.columns = {"seed",      "config_hash", "solver", "objective_bps",
                     "feasible",  "activation"};
    for (const auto seed : manifest.seeds) {
        SharingSolution solution;
        if (exact) {
            solution = brute_force_optimum(instance);
        } else {
            pso.seed = seed;
            solution = optimize(instance, pso);
        }
        std::string bits;
        for (const auto b : solution.activation.bits) {
            bits += b ? '1' : '0';
        }
        table.rows.push_back({static_cast<double>(seed), hash,
                              std::string(exact ? "exact" : "pso"), solution.objective,
                              static_cast<double>(solution.feasible), bits});
    }
    return table;
}

ResultTable run_simulate(const RunManifest& manifest,
                         std::optional<RelayPolicy> policy_override,
                         const std::string& trace_path) {
    manifest.validate();
    const Json j = load_config_or_default(manifest);
    SimConfig cfg = sim_from_json(j, manifest.config_path.empty() ? "defaults"
                                                                  : manifest.config_path);
    if (policy_override) {
        cfg.policy = *policy_override;
    }

    std::ofstream trace_out;
    if (!trace_path.empty()) {
        trace_out.open(trace_path);
        if (!trace_out) {
            throw ConfigError(trace_path + ": cannot open trace output");
        }
    }

    ResultTable table;
    table.columns = {"seed",      "config_hash",     "policy",          "generated",
                     "delivered", "mean_delay_ms",   "throughput_kbps", "pdr",
                     "overhead",  "energy_j",        "shifts",          "control_messages",
                     "conservation_violations"};
    const std::string hash = config_hash(to_canonical_json(cfg));
    for (const auto seed : manifest.seeds) {
        cfg.seed = seed;
        const SimResult result = run_simulation(cfg);
        if (trace_out.is_open()) {
            append_trace(trace_out, result, seed, policy_name(cfg.policy));
        }
        table.rows.push_back({static_cast<double>(seed), hash, policy_name(cfg.policy),
                              static_cast<double>(result.generated),
                              static_cast<double>(result.delivered),
                              result.metrics.mean_delay_ms, result.metrics.throughput_kbps,
                              result.metrics.pdr, result.metrics.overhead,
                              result.metrics.energy_consumed,
                              static_cast<double>(result.shifts),
                              static_cast<double>(result.control_messages),
                              static_cast<double>(result.conservation_violations)});
    }
    return table;
}

ResultTable run_share_sweep(const RunManifest& manifest, const std::vector<std::size_t>& links,
                            const std::vector<double>& gamma_db) {
    manifest.validate();
    if (links.empty()) {
        throw ConfigError("sweep: --links must list at least one link count");
    }
    if (gamma_db.empty()) {
        throw ConfigError("sweep: --gamma-db must list at least one floor");
    }
    const Json j = load_config_or_default(manifest);
    const std::string context = manifest.config_path.empty() ? "defaults" : manifest.config_path;
    InstanceGeneratorConfig gen = generator_from_json(j, context);
    const std::string solver = j.is_object() && j.contains("solver")
                                   ? j.at("solver").get<std::string>()
                                   : std::string("exact");
    if (solver != "exact" && solver != "pso") {
        throw ConfigError(context + ": solver must be 'exact' or 'pso'");
    }
    PsoConfig pso =
        pso_from_json(j.is_object() && j.contains("pso") ? j.at("pso") : Json(nullptr),
                      context + ".pso");

    const std::size_t max_links = *std::max_element(links.begin(), links.end());
    if (max_links == 0) {
        throw ConfigError("sweep: link counts must be >= 1");
    }
    if (max_links > gen.secondary_count) {
        gen.secondary_count = max_links;
    }
    if (solver == "exact" && max_links > 20) {
        throw ConfigError("sweep: exact solver supports at most 20 links");
    }
    const std::string hash = config_hash(to_canonical_json(gen));
    const std::string seeds_cell = join_seeds(manifest.seeds);

    ResultTable table;
    table.columns = {"links"};
    for (const double gamma : gamma_db) {
        table.columns.push_back("mean_objective_bps_gamma_" + format_double(gamma) + "dB");
    }
    table.columns.push_back("seeds");
    table.columns.push_back("config_hash");

    for (const std::size_t link_count : links) {
        std::vector<Cell> row{static_cast<double>(link_count)};
        for (const double gamma : gamma_db) {
            double sum = 0.0;
            for (const auto seed : manifest.seeds) {
                SharingInstance master = random_instance(gen, seed);
                SharingInstance instance = truncate_secondary(master, link_count);
                instance.sinr_floor = db_to_linear(gamma);
                if (solver == "exact") {
                    sum += brute_force_optimum(instance).objective;
                } else {
                    pso.seed = seed;
                    sum += optimize(instance, pso).objective;
                }
            }
            row.push_back(sum / static_cast<double>(manifest.seeds.size()));
        }
        row.push_back(seeds_cell);
        row.push_back(hash);
        table.rows.push_back(std::move(row));
    }
    return table;
}

ResultTable run_compare(const RunManifest& manifest, const std::vector<std::string>& policies,
                        const std::vector<std::size_t>& node_levels) {
    manifest.validate();
    if (policies.size() < 2) {
        throw ConfigError("compare: at least two policies are required");
    }
    const Json j = load_config_or_default(manifest);
    SimConfig base = sim_from_json(j, manifest.config_path.empty() ? "defaults"
                                                                   : manifest.config_path);
    const std::string seeds_cell = join_seeds(manifest.seeds);

    ResultTable table;
    table.columns = {"policy",         "node_count", "mean_delay_ms", "throughput_kbps",
                     "pdr",            "overhead",   "energy_j",      "seeds",
                     "config_hash"};
    for (const auto& policy : policies) {
        const RelayPolicy parsed = policy_from_name(policy);
        for (const std::size_t level : node_levels) {
            SimConfig cfg = base;
            cfg.policy = parsed;
            cfg.node_count = level;
            double delay = 0.0;
            double throughput = 0.0;
            double pdr = 0.0;
            double overhead = 0.0;
            double energy = 0.0;
            const std::string hash = config_hash(to_canonical_json(cfg));
            for (const auto seed : manifest.seeds) {
                cfg.seed = seed;
                const SimResult result = run_simulation(cfg);
                delay += result.metrics.mean_delay_ms;
                throughput += result.metrics.throughput_kbps;
                pdr += result.metrics.pdr;
                overhead += result.metrics.overhead;
                energy += result.metrics.energy_consumed;
            }
            const double n = static_cast<double>(manifest.seeds.size());
            table.rows.push_back({policy, static_cast<double>(level), delay / n, throughput / n,
                                  pdr / n, overhead / n, energy / n, seeds_cell, hash});
        }
    }
    return table;
}

void write_output(const ResultTable& table, const RunManifest& manifest) {
    const std::string payload =
        manifest.output_format == "csv" ? to_csv(table) : to_json(table) + "\n";
    if (manifest.output_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(manifest.output_path, std::ios::binary);
    if (!out) {
        throw ConfigError(manifest.output_path + ": cannot open output file");
    }
    out << payload;
}

}  // namespace crn
