#include "crn/channel_model.hpp"

#include <cmath>
#include <stdexcept>

namespace crn {

double distance_between(const NodePosition& a, const NodePosition& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

double path_loss_gain(double distance, const PathLossModel& model) {
    const double d = std::max(distance, model.reference_distance);
    return std::pow(d, -model.exponent);
}

ChannelRealization sample_channel(std::size_t relay_count, Rng& rng) {
    ChannelRealization realization;
    realization.source_relay_gains.reserve(relay_count);
    realization.relay_dest_gains.reserve(relay_count);
    for (std::size_t i = 0; i < relay_count; ++i) {
        realization.source_relay_gains.push_back(rng.exponential());
        realization.relay_dest_gains.push_back(rng.exponential());
    }
    return realization;
}

ChannelRealization sample_channel(std::size_t relay_count, std::uint64_t seed) {
    Rng rng(seed);
    return sample_channel(relay_count, rng);
}

double snr_of(double transmit_power, double power_gain, const NoiseModel& noise) {
    return transmit_power * power_gain / noise.noise_power;
}

double db_to_linear(double db) {
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double value) {
    if (value <= 0.0) {
        throw std::domain_error("linear_to_db: value must be positive");
    }
    return 10.0 * std::log10(value);
}

}  // namespace crn
