#pragma once

#include <cstdint>

#include "crn/spectrum_sharing.hpp"

namespace crn {

// Random spectrum-sharing scenarios: transmitters uniform in a square arena,
// receivers at a uniform link length and heading (clamped into the arena).
// Defaults keep own-link power well above the typical cross-link
// interference, so activating secondary links is usually profitable and
// floors of 6-14 dB still cut into the feasible set.
struct InstanceGeneratorConfig {
    std::size_t primary_count = 2;
    std::size_t secondary_count = 10;
    double arena_side = 1000.0;
    double link_length_min = 20.0;
    double link_length_max = 80.0;
    double transmit_power = 1.0;
    double path_loss_exponent = 2.0;
    double reference_distance = 1.0;
    double noise_power = 1e-6;
    double sinr_floor = 10.0;  // linear
    double bandwidth = 1e6;
};

// Deterministic for a fixed (config, seed). Primary links are drawn first,
// then secondary links in index order, so generating with a larger
// secondary_count and truncating yields a prefix-consistent instance family
// (the basis of the links-vs-floor sweep).
SharingInstance random_instance(const InstanceGeneratorConfig& cfg, std::uint64_t seed);

// First `secondary_count` secondary links of `instance`, all else unchanged.
SharingInstance truncate_secondary(const SharingInstance& instance, std::size_t secondary_count);

}  // namespace crn
