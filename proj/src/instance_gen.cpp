#include "crn/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crn/rng.hpp"

namespace crn {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

LinkEndpoints draw_link(Rng& rng, const InstanceGeneratorConfig& cfg) {
    LinkEndpoints link;
    link.tx.x = rng.uniform(0.0, cfg.arena_side);
    link.tx.y = rng.uniform(0.0, cfg.arena_side);
    const double length = rng.uniform(cfg.link_length_min, cfg.link_length_max);
    const double heading = rng.uniform(0.0, kTau);
    link.rx.x = std::clamp(link.tx.x + length * std::cos(heading), 0.0, cfg.arena_side);
    link.rx.y = std::clamp(link.tx.y + length * std::sin(heading), 0.0, cfg.arena_side);
    return link;
}

}  // namespace

SharingInstance random_instance(const InstanceGeneratorConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    SharingInstance instance;
    instance.transmit_power = cfg.transmit_power;
    instance.path_loss.exponent = cfg.path_loss_exponent;
    instance.path_loss.reference_distance = cfg.reference_distance;
    instance.noise.noise_power = cfg.noise_power;
    instance.sinr_floor = cfg.sinr_floor;
    instance.bandwidth = cfg.bandwidth;
    for (std::size_t i = 0; i < cfg.primary_count; ++i) {
        instance.primary_links.push_back(draw_link(rng, cfg));
    }
    for (std::size_t j = 0; j < cfg.secondary_count; ++j) {
        instance.secondary_links.push_back(draw_link(rng, cfg));
    }
    return instance;
}

SharingInstance truncate_secondary(const SharingInstance& instance, std::size_t secondary_count) {
    if (secondary_count > instance.secondary_count()) {
        throw std::invalid_argument("truncate_secondary: count exceeds available links");
    }
    SharingInstance out = instance;
    out.secondary_links.resize(secondary_count);
    return out;
}

}  // namespace crn
