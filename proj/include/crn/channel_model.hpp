#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "crn/rng.hpp"

namespace crn {

struct NodePosition {
    double x = 0.0;  // meters
    double y = 0.0;  // meters
};

double distance_between(const NodePosition& a, const NodePosition& b);

// Deterministic distance attenuation: gain(d) = max(d, reference)^-exponent.
// Distances below the reference are clamped so the gain stays in (0, 1].
struct PathLossModel {
    double exponent = 2.0;            // attenuation factor m
    double reference_distance = 1.0;  // meters
};

double path_loss_gain(double distance, const PathLossModel& model);

struct NoiseModel {
    double noise_power = 1e-6;  // watts, per-channel average
};

// Squared channel magnitudes |CH|^2 for the two hops of each relay path.
// Entry i of each list belongs to relay i; both lists always have the same
// length. Gains may combine fading with path loss (the simulator scales the
// sampled fading by the geometric gain).
struct ChannelRealization {
    std::vector<double> source_relay_gains;
    std::vector<double> relay_dest_gains;

    std::size_t relay_count() const { return source_relay_gains.size(); }
};

// Unit-mean Rayleigh fading: power gains are independent Exp(1) draws.
// Draw order is fixed: for each relay in index order, the source-relay gain
// then the relay-destination gain.
ChannelRealization sample_channel(std::size_t relay_count, Rng& rng);
ChannelRealization sample_channel(std::size_t relay_count, std::uint64_t seed);

// Linear SNR: transmit_power * power_gain / noise_power.
double snr_of(double transmit_power, double power_gain, const NoiseModel& noise);

double db_to_linear(double db);

// Throws std::domain_error for value <= 0.
double linear_to_db(double value);

}  // namespace crn
