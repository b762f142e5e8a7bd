#pragma once

#include <optional>
#include <vector>

#include "crn/channel_model.hpp"

namespace crn {

struct RelaySelectionConfig {
    double source_power = 0.660;  // W_s, watts
    double snr_threshold = 1.0;   // eta_th, linear
    NoiseModel noise;
};

struct RelayCandidate {
    int index = 0;                  // 1-based relay id
    double snr_source_relay = 0.0;  // first-hop SNR
    double snr_relay_dest = 0.0;    // second-hop SNR
    double snr_equivalent = 0.0;    // end-to-end amplify-and-forward SNR
    double amplification = 0.0;     // relay gain alpha
};

struct RelayDecision {
    std::vector<int> candidate_set;  // ids whose first-hop SNR meets the threshold, ascending
    std::vector<int> optimal_set;    // ids attaining the maximal second-hop SNR, ascending
    std::optional<int> best;         // absent => no feasible relay
    bool used_fallback = false;      // intersection was empty; best is the argmax of the
                                     // second-hop SNR within candidate_set
    std::vector<RelayCandidate> all_candidates;
};

// sqrt(W_s / (gain_sr * W_s + N_o)). Strictly positive, decreasing in gain_sr.
double amplification_factor(double source_power, double gain_sr, const NoiseModel& noise);

// snr_sr * snr_rd / (snr_sr + snr_rd + 1). Bounded above by min(snr_sr, snr_rd).
double equivalent_af_snr(double snr_sr, double snr_rd);

std::vector<RelayCandidate> build_candidates(const ChannelRealization& realization,
                                             const RelaySelectionConfig& cfg);

std::vector<int> threshold_filter(const std::vector<RelayCandidate>& candidates,
                                  const RelaySelectionConfig& cfg);

// All ids attaining the maximum second-hop SNR, ties included. Empty iff the
// candidate list is empty.
std::vector<int> max_snr_set(const std::vector<RelayCandidate>& candidates);

// Best relay: lowest-indexed member of optimal_set intersected with
// candidate_set. When that intersection is empty but candidate_set is not,
// falls back to the candidate with maximal second-hop SNR (lowest index on
// ties) so the caller still gets a usable relay. No candidates => no best.
RelayDecision select_best_relay(const ChannelRealization& realization,
                                const RelaySelectionConfig& cfg);

}  // namespace crn
