#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crn/commands.hpp"

namespace {

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::string part;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(part);
            part.clear();
        } else {
            part += c;
        }
    }
    parts.push_back(part);
    return parts;
}

std::vector<std::uint64_t> resolve_seeds(std::uint64_t seed_count, const std::string& seed_list) {
    std::vector<std::uint64_t> seeds;
    if (!seed_list.empty()) {
        for (const auto& part : split_list(seed_list)) {
            seeds.push_back(std::stoull(part));
        }
    } else {
        for (std::uint64_t s = 1; s <= seed_count; ++s) {
            seeds.push_back(s);
        }
    }
    return seeds;
}

void emit_error(const std::string& command, const std::string& message) {
    crn::Json record;
    record["error"] = message;
    record["command"] = command;
    std::cerr << record.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cognitive-radio relay selection, spectrum sharing and simulation toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::uint64_t seed_count = 0;
    std::string seed_list;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON configuration file");
        cmd->add_option("--seeds", seed_count, "run seeds 1..N");
        cmd->add_option("--seed-list", seed_list, "comma-separated explicit seeds");
        cmd->add_option("--out", out_path, "output file (default: stdout)");
        cmd->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    auto* select_cmd = app.add_subcommand("select-relay", "per-seed relay selection decisions");
    add_common(select_cmd);

    auto* share_cmd = app.add_subcommand("share", "solve one spectrum-sharing instance");
    add_common(share_cmd);
    bool exact = false;
    share_cmd->add_flag("--exact", exact, "use the exhaustive oracle instead of the swarm");

    auto* simulate_cmd = app.add_subcommand("simulate", "run the network simulation");
    add_common(simulate_cmd);
    std::string sim_policy;
    std::string trace_path;
    simulate_cmd->add_option("--policy", sim_policy, "clsss or static-random (overrides config)")
        ->check(CLI::IsMember({"clsss", "static-random"}));
    simulate_cmd->add_option("--trace", trace_path, "write line-delimited packet events here");

    auto* sweep_cmd = app.add_subcommand("sweep", "links x floor grid of mean optimum objective");
    add_common(sweep_cmd);
    std::string links_list = "2,4,6,8,10";
    std::string gamma_list = "6,8,10,12,14";
    sweep_cmd->add_option("--links", links_list, "comma-separated link counts");
    sweep_cmd->add_option("--gamma-db", gamma_list, "comma-separated SINR floors in dB");

    auto* compare_cmd = app.add_subcommand("compare", "paired-seed policy comparison");
    add_common(compare_cmd);
    std::string policy_list = "clsss,static-random";
    compare_cmd->add_option("--policy", policy_list, "comma-separated policies");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error(argc > 1 ? argv[1] : "", e.what());
        return app.exit(e) == 0 ? 2 : app.exit(e);
    }

    crn::RunManifest manifest;
    manifest.config_path = config_path;
    manifest.output_path = out_path;
    manifest.output_format = format;

    try {
        manifest.seeds = resolve_seeds(seed_count, seed_list);

        crn::ResultTable table;
        if (select_cmd->parsed()) {
            manifest.command = "select-relay";
            table = crn::run_select_relay(manifest);
        } else if (share_cmd->parsed()) {
            manifest.command = "share";
            table = crn::run_share(manifest, exact);
        } else if (simulate_cmd->parsed()) {
            manifest.command = "simulate";
            std::optional<crn::RelayPolicy> policy;
            if (sim_policy == "clsss") {
                policy = crn::RelayPolicy::clsss;
            } else if (sim_policy == "static-random") {
                policy = crn::RelayPolicy::static_random;
            }
            table = crn::run_simulate(manifest, policy, trace_path);
        } else if (sweep_cmd->parsed()) {
            manifest.command = "sweep";
            std::vector<std::size_t> links;
            for (const auto& part : split_list(links_list)) {
                links.push_back(std::stoull(part));
            }
            std::vector<double> gammas;
            for (const auto& part : split_list(gamma_list)) {
                gammas.push_back(std::stod(part));
            }
            table = crn::run_share_sweep(manifest, links, gammas);
        } else if (compare_cmd->parsed()) {
            manifest.command = "compare";
            table = crn::run_compare(manifest, split_list(policy_list),
                                     {20, 40, 60, 80, 100});
        }
        crn::write_output(table, manifest);
    } catch (const std::exception& e) {
        emit_error(manifest.command, e.what());
        return 1;
    }
    return 0;
}
