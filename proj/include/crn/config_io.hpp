#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "crn/instance_gen.hpp"
#include "crn/network_sim.hpp"
#include "crn/spectrum_sharing.hpp"
#include "crn/swarm_optimizer.hpp"

namespace crn {

using Json = nlohmann::ordered_json;

// Raised for unparsable files, unknown keys, wrong types, or out-of-range
// values; the message carries the file/field context.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json load_json_file(const std::string& path);

// Thresholds may be given in dB ("*_db") or linear ("*_linear"); exactly one
// of the pair is accepted. Missing fields fall back to the struct defaults.
SharingInstance instance_from_json(const Json& j, const std::string& context);
PsoConfig pso_from_json(const Json& j, const std::string& context);
SimConfig sim_from_json(const Json& j, const std::string& context);
InstanceGeneratorConfig generator_from_json(const Json& j, const std::string& context);

struct SelectRelayConfig {
    std::size_t relay_count = 10;
    RelaySelectionConfig relay;
};
SelectRelayConfig select_relay_from_json(const Json& j, const std::string& context);

// Canonical serializations: stable key order and shortest float formatting,
// the basis of the config hashes stamped onto result rows.
Json to_canonical_json(const SharingInstance& instance);
Json to_canonical_json(const PsoConfig& cfg);
Json to_canonical_json(const SimConfig& cfg);
Json to_canonical_json(const InstanceGeneratorConfig& cfg);
Json to_canonical_json(const SelectRelayConfig& cfg);

std::string config_hash(const Json& canonical);

}  // namespace crn
