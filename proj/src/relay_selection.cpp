#include "crn/relay_selection.hpp"

#include <algorithm>
#include <cmath>

namespace crn {

double amplification_factor(double source_power, double gain_sr, const NoiseModel& noise) {
    return std::sqrt(source_power / (gain_sr * source_power + noise.noise_power));
}

double equivalent_af_snr(double snr_sr, double snr_rd) {
    return snr_sr * snr_rd / (snr_sr + snr_rd + 1.0);
}

std::vector<RelayCandidate> build_candidates(const ChannelRealization& realization,
                                             const RelaySelectionConfig& cfg) {
    std::vector<RelayCandidate> candidates;
    candidates.reserve(realization.relay_count());
    for (std::size_t i = 0; i < realization.relay_count(); ++i) {
        RelayCandidate c;
        c.index = static_cast<int>(i) + 1;
        c.snr_source_relay = snr_of(cfg.source_power, realization.source_relay_gains[i], cfg.noise);
        c.snr_relay_dest = snr_of(cfg.source_power, realization.relay_dest_gains[i], cfg.noise);
        c.snr_equivalent = equivalent_af_snr(c.snr_source_relay, c.snr_relay_dest);
        c.amplification =
            amplification_factor(cfg.source_power, realization.source_relay_gains[i], cfg.noise);
        candidates.push_back(c);
    }
    return candidates;
}

std::vector<int> threshold_filter(const std::vector<RelayCandidate>& candidates,
                                  const RelaySelectionConfig& cfg) {
    std::vector<int> ids;
    for (const auto& c : candidates) {
        if (c.snr_source_relay >= cfg.snr_threshold) {
            ids.push_back(c.index);
        }
    }
    return ids;
}

std::vector<int> max_snr_set(const std::vector<RelayCandidate>& candidates) {
    std::vector<int> ids;
    if (candidates.empty()) {
        return ids;
    }
    double best = candidates.front().snr_relay_dest;
    for (const auto& c : candidates) {
        best = std::max(best, c.snr_relay_dest);
    }
    for (const auto& c : candidates) {
        if (c.snr_relay_dest == best) {
            ids.push_back(c.index);
        }
    }
    return ids;
}

RelayDecision select_best_relay(const ChannelRealization& realization,
                                const RelaySelectionConfig& cfg) {
    RelayDecision decision;
    decision.all_candidates = build_candidates(realization, cfg);
    decision.candidate_set = threshold_filter(decision.all_candidates, cfg);
    decision.optimal_set = max_snr_set(decision.all_candidates);

    if (decision.candidate_set.empty()) {
        return decision;  // no feasible relay
    }

    // Lowest-indexed member of the intersection; both sets are ascending.
    for (int id : decision.optimal_set) {
        if (std::binary_search(decision.candidate_set.begin(), decision.candidate_set.end(), id)) {
            decision.best = id;
            return decision;
        }
    }

    // Intersection empty: best second hop among the threshold survivors.
    int best_id = decision.candidate_set.front();
    double best_rd = decision.all_candidates[best_id - 1].snr_relay_dest;
    for (int id : decision.candidate_set) {
        const double rd = decision.all_candidates[id - 1].snr_relay_dest;
        if (rd > best_rd) {
            best_rd = rd;
            best_id = id;
        }
    }
    decision.best = best_id;
    decision.used_fallback = true;
    return decision;
}

}  // namespace crn
