#include "crn/config_io.hpp"

#include <fstream>
#include <set>

#include "crn/result_table.hpp"

namespace crn {

namespace {

// Tracks which keys a loader consumed so typos surface as errors instead of
// silently falling back to defaults.
class FieldReader {
public:
    FieldReader(const Json& j, std::string context) : j_(j), context_(std::move(context)) {
        if (!j_.is_object()) {
            throw ConfigError(context_ + ": expected a JSON object");
        }
    }

    ~FieldReader() = default;

    bool has(const std::string& key) {
        seen_.insert(key);
        return j_.contains(key);
    }

    double number(const std::string& key, double fallback) {
        seen_.insert(key);
        if (!j_.contains(key)) {
            return fallback;
        }
        const auto& v = j_.at(key);
        if (!v.is_number()) {
            throw ConfigError(context_ + ": field '" + key + "' must be a number");
        }
        return v.get<double>();
    }

    std::size_t count(const std::string& key, std::size_t fallback) {
        seen_.insert(key);
        if (!j_.contains(key)) {
            return fallback;
        }
        const auto& v = j_.at(key);
        if (!v.is_number_unsigned()) {
            throw ConfigError(context_ + ": field '" + key + "' must be a non-negative integer");
        }
        return v.get<std::size_t>();
    }

    std::string text(const std::string& key, const std::string& fallback) {
        seen_.insert(key);
        if (!j_.contains(key)) {
            return fallback;
        }
        const auto& v = j_.at(key);
        if (!v.is_string()) {
            throw ConfigError(context_ + ": field '" + key + "' must be a string");
        }
        return v.get<std::string>();
    }

    const Json* object(const std::string& key) {
        seen_.insert(key);
        if (!j_.contains(key)) {
            return nullptr;
        }
        return &j_.at(key);
    }

    // dB / linear alternative: exactly one of the two keys may be present.
    double threshold(const std::string& stem, double fallback_linear) {
        const std::string db_key = stem + "_db";
        const std::string lin_key = stem + "_linear";
        seen_.insert(db_key);
        seen_.insert(lin_key);
        if (j_.contains(db_key) && j_.contains(lin_key)) {
            throw ConfigError(context_ + ": give either '" + db_key + "' or '" + lin_key +
                              "', not both");
        }
        if (j_.contains(db_key)) {
            if (!j_.at(db_key).is_number()) {
                throw ConfigError(context_ + ": field '" + db_key + "' must be a number");
            }
            return db_to_linear(j_.at(db_key).get<double>());
        }
        if (j_.contains(lin_key)) {
            if (!j_.at(lin_key).is_number()) {
                throw ConfigError(context_ + ": field '" + lin_key + "' must be a number");
            }
            return j_.at(lin_key).get<double>();
        }
        return fallback_linear;
    }

    void finish() const {
        for (const auto& [key, value] : j_.items()) {
            (void)value;
            if (!seen_.contains(key)) {
                throw ConfigError(context_ + ": unknown field '" + key + "'");
            }
        }
    }

private:
    const Json& j_;
    std::string context_;
    std::set<std::string> seen_;
};

NodePosition position_from_json(const Json& j, const std::string& context) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ConfigError(context + ": positions must be [x, y] number pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<LinkEndpoints> links_from_json(const Json& j, const std::string& context) {
    if (!j.is_array()) {
        throw ConfigError(context + ": must be an array of {tx, rx} objects");
    }
    std::vector<LinkEndpoints> links;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& entry = j[i];
        const std::string entry_context = context + "[" + std::to_string(i) + "]";
        if (!entry.is_object() || !entry.contains("tx") || !entry.contains("rx")) {
            throw ConfigError(entry_context + ": must be an object with 'tx' and 'rx'");
        }
        links.push_back({position_from_json(entry.at("tx"), entry_context + ".tx"),
                         position_from_json(entry.at("rx"), entry_context + ".rx")});
    }
    return links;
}

Json links_to_json(const std::vector<LinkEndpoints>& links) {
    Json out = Json::array();
    for (const auto& link : links) {
        out.push_back({{"tx", {link.tx.x, link.tx.y}}, {"rx", {link.rx.x, link.rx.y}}});
    }
    return out;
}

}  // namespace

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path + ": cannot open file");
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

SharingInstance instance_from_json(const Json& j, const std::string& context) {
    FieldReader reader(j, context);
    SharingInstance instance;
    if (const Json* links = reader.object("primary_links")) {
        instance.primary_links = links_from_json(*links, context + ".primary_links");
    }
    if (const Json* links = reader.object("secondary_links")) {
        instance.secondary_links = links_from_json(*links, context + ".secondary_links");
    }
    instance.transmit_power = reader.number("transmit_power_w", instance.transmit_power);
    instance.path_loss.exponent = reader.number("path_loss_exponent", instance.path_loss.exponent);
    instance.path_loss.reference_distance =
        reader.number("reference_distance_m", instance.path_loss.reference_distance);
    instance.noise.noise_power = reader.number("noise_power_w", instance.noise.noise_power);
    instance.sinr_floor = reader.threshold("sinr_floor", instance.sinr_floor);
    instance.bandwidth = reader.number("bandwidth_hz", instance.bandwidth);
    reader.has("pso");  // handled by pso_from_json on the same document
    reader.finish();

    if (instance.bandwidth <= 0.0) {
        throw ConfigError(context + ": bandwidth_hz must be positive");
    }
    if (instance.sinr_floor < 0.0) {
        throw ConfigError(context + ": the SINR floor must be non-negative");
    }
    if (instance.noise.noise_power <= 0.0) {
        throw ConfigError(context + ": noise_power_w must be positive");
    }
    return instance;
}

PsoConfig pso_from_json(const Json& j, const std::string& context) {
    PsoConfig cfg;
    if (j.is_null()) {
        return cfg;
    }
    FieldReader reader(j, context);
    cfg.swarm_size = reader.count("swarm_size", cfg.swarm_size);
    cfg.iterations = reader.count("iterations", cfg.iterations);
    cfg.inertia = reader.number("inertia", cfg.inertia);
    cfg.cognitive = reader.number("cognitive", cfg.cognitive);
    cfg.social = reader.number("social", cfg.social);
    cfg.velocity_clamp = reader.number("velocity_clamp", cfg.velocity_clamp);
    if (reader.has("infeasibility_penalty")) {
        cfg.infeasibility_penalty = reader.number("infeasibility_penalty", 0.0);
    }
    cfg.seed = static_cast<std::uint64_t>(reader.count("seed", cfg.seed));
    reader.finish();

    if (cfg.swarm_size == 0) {
        throw ConfigError(context + ": swarm_size must be >= 1");
    }
    if (cfg.inertia < 0.0 || cfg.inertia > 1.0) {
        throw ConfigError(context + ": inertia must lie in [0, 1]");
    }
    if (cfg.cognitive < 0.0 || cfg.social < 0.0) {
        throw ConfigError(context + ": cognitive and social weights must be >= 0");
    }
    if (cfg.velocity_clamp <= 0.0) {
        throw ConfigError(context + ": velocity_clamp must be positive");
    }
    return cfg;
}

SimConfig sim_from_json(const Json& j, const std::string& context) {
    FieldReader reader(j, context);
    SimConfig cfg;
    cfg.node_count = reader.count("node_count", cfg.node_count);
    cfg.arena_side = reader.number("arena_side_m", cfg.arena_side);
    cfg.sim_time = reader.number("sim_time_s", cfg.sim_time);
    cfg.tx_range = reader.number("tx_range_m", cfg.tx_range);
    if (reader.has("packet_size_kb") && reader.has("packet_size_bits")) {
        throw ConfigError(context + ": give either 'packet_size_kb' or 'packet_size_bits'");
    }
    if (reader.has("packet_size_kb")) {
        cfg.packet_size = reader.number("packet_size_kb", 512.0) * 1024.0 * 8.0;
    } else {
        cfg.packet_size = reader.number("packet_size_bits", cfg.packet_size);
    }
    cfg.tx_power = reader.number("tx_power_w", cfg.tx_power);
    cfg.rx_power = reader.number("rx_power_w", cfg.rx_power);
    cfg.initial_energy = reader.number("initial_energy_j", cfg.initial_energy);
    cfg.speed_min = reader.number("speed_min_mps", cfg.speed_min);
    cfg.speed_max = reader.number("speed_max_mps", cfg.speed_max);
    cfg.epoch = reader.number("epoch_s", cfg.epoch);
    cfg.offered_load = reader.number("offered_load_pps", cfg.offered_load);
    cfg.seed = static_cast<std::uint64_t>(reader.count("seed", cfg.seed));
    cfg.primary_count = reader.count("primary_count", cfg.primary_count);
    cfg.relay_count = reader.count("relay_count", cfg.relay_count);
    cfg.bandwidth = reader.number("bandwidth_hz", cfg.bandwidth);
    cfg.noise_power = reader.number("noise_power_w", cfg.noise_power);
    cfg.path_loss_exponent = reader.number("path_loss_exponent", cfg.path_loss_exponent);
    cfg.snr_threshold = reader.threshold("snr_threshold", cfg.snr_threshold);
    const std::string policy = reader.text("policy", "clsss");
    if (policy == "clsss") {
        cfg.policy = RelayPolicy::clsss;
    } else if (policy == "static-random") {
        cfg.policy = RelayPolicy::static_random;
    } else {
        throw ConfigError(context + ": policy must be 'clsss' or 'static-random'");
    }
    reader.finish();
    return cfg;
}

InstanceGeneratorConfig generator_from_json(const Json& j, const std::string& context) {
    FieldReader reader(j, context);
    InstanceGeneratorConfig cfg;
    cfg.primary_count = reader.count("primary_count", cfg.primary_count);
    cfg.secondary_count = reader.count("secondary_count", cfg.secondary_count);
    cfg.arena_side = reader.number("arena_side_m", cfg.arena_side);
    cfg.link_length_min = reader.number("link_length_min_m", cfg.link_length_min);
    cfg.link_length_max = reader.number("link_length_max_m", cfg.link_length_max);
    cfg.transmit_power = reader.number("transmit_power_w", cfg.transmit_power);
    cfg.path_loss_exponent = reader.number("path_loss_exponent", cfg.path_loss_exponent);
    cfg.reference_distance = reader.number("reference_distance_m", cfg.reference_distance);
    cfg.noise_power = reader.number("noise_power_w", cfg.noise_power);
    cfg.sinr_floor = reader.threshold("sinr_floor", cfg.sinr_floor);
    cfg.bandwidth = reader.number("bandwidth_hz", cfg.bandwidth);
    reader.has("pso");
    reader.has("solver");
    reader.finish();

    if (cfg.link_length_min <= 0.0 || cfg.link_length_max < cfg.link_length_min) {
        throw ConfigError(context + ": link length range must satisfy 0 < min <= max");
    }
    return cfg;
}

SelectRelayConfig select_relay_from_json(const Json& j, const std::string& context) {
    FieldReader reader(j, context);
    SelectRelayConfig cfg;
    cfg.relay_count = reader.count("relay_count", cfg.relay_count);
    cfg.relay.source_power = reader.number("source_power_w", cfg.relay.source_power);
    cfg.relay.noise.noise_power = reader.number("noise_power_w", cfg.relay.noise.noise_power);
    cfg.relay.snr_threshold = reader.threshold("snr_threshold", cfg.relay.snr_threshold);
    reader.finish();

    if (cfg.relay.source_power <= 0.0 || cfg.relay.noise.noise_power <= 0.0) {
        throw ConfigError(context + ": powers must be positive");
    }
    return cfg;
}

Json to_canonical_json(const SharingInstance& instance) {
    Json j;
    j["primary_links"] = links_to_json(instance.primary_links);
    j["secondary_links"] = links_to_json(instance.secondary_links);
    j["transmit_power_w"] = instance.transmit_power;
    j["path_loss_exponent"] = instance.path_loss.exponent;
    j["reference_distance_m"] = instance.path_loss.reference_distance;
    j["noise_power_w"] = instance.noise.noise_power;
    j["sinr_floor_linear"] = instance.sinr_floor;
    j["bandwidth_hz"] = instance.bandwidth;
    return j;
}

Json to_canonical_json(const PsoConfig& cfg) {
    Json j;
    j["swarm_size"] = cfg.swarm_size;
    j["iterations"] = cfg.iterations;
    j["inertia"] = cfg.inertia;
    j["cognitive"] = cfg.cognitive;
    j["social"] = cfg.social;
    j["velocity_clamp"] = cfg.velocity_clamp;
    if (cfg.infeasibility_penalty) {
        j["infeasibility_penalty"] = *cfg.infeasibility_penalty;
    }
    j["seed"] = cfg.seed;
    return j;
}

Json to_canonical_json(const SimConfig& cfg) {
    Json j;
    j["node_count"] = cfg.node_count;
    j["arena_side_m"] = cfg.arena_side;
    j["sim_time_s"] = cfg.sim_time;
    j["tx_range_m"] = cfg.tx_range;
    j["packet_size_bits"] = cfg.packet_size;
    j["tx_power_w"] = cfg.tx_power;
    j["rx_power_w"] = cfg.rx_power;
    j["initial_energy_j"] = cfg.initial_energy;
    j["speed_min_mps"] = cfg.speed_min;
    j["speed_max_mps"] = cfg.speed_max;
    j["epoch_s"] = cfg.epoch;
    j["offered_load_pps"] = cfg.offered_load;
    j["seed"] = cfg.seed;
    j["primary_count"] = cfg.primary_count;
    j["relay_count"] = cfg.relay_count;
    j["bandwidth_hz"] = cfg.bandwidth;
    j["noise_power_w"] = cfg.noise_power;
    j["path_loss_exponent"] = cfg.path_loss_exponent;
    j["snr_threshold_linear"] = cfg.snr_threshold;
    j["policy"] = cfg.policy == RelayPolicy::clsss ? "clsss" : "static-random";
    return j;
}

Json to_canonical_json(const InstanceGeneratorConfig& cfg) {
    Json j;
    j["primary_count"] = cfg.primary_count;
    j["secondary_count"] = cfg.secondary_count;
    j["arena_side_m"] = cfg.arena_side;
    j["link_length_min_m"] = cfg.link_length_min;
    j["link_length_max_m"] = cfg.link_length_max;
    j["transmit_power_w"] = cfg.transmit_power;
    j["path_loss_exponent"] = cfg.path_loss_exponent;
    j["reference_distance_m"] = cfg.reference_distance;
    j["noise_power_w"] = cfg.noise_power;
    j["sinr_floor_linear"] = cfg.sinr_floor;
    j["bandwidth_hz"] = cfg.bandwidth;
    return j;
}

Json to_canonical_json(const SelectRelayConfig& cfg) {
    Json j;
    j["relay_count"] = cfg.relay_count;
    j["source_power_w"] = cfg.relay.source_power;
    j["noise_power_w"] = cfg.relay.noise.noise_power;
    j["snr_threshold_linear"] = cfg.relay.snr_threshold;
    return j;
}

std::string config_hash(const Json& canonical) {
    return hash_hex(canonical.dump());
}

}  // namespace crn
