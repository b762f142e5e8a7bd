#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "crn/channel_model.hpp"

namespace crn {

struct LinkEndpoints {
    NodePosition tx;
    NodePosition rx;
};

// One spectrum-sharing problem: N primary links that must keep their SINR
// above the floor, M secondary links competing for activation, and the common
// radio parameters. All SINR math is linear; dB appears only at load time.
struct SharingInstance {
    std::vector<LinkEndpoints> primary_links;    // N
    std::vector<LinkEndpoints> secondary_links;  // M
    double transmit_power = 1.0;                 // W, common to every transmitter
    PathLossModel path_loss;
    NoiseModel noise;
    double sinr_floor = 1.0;  // gamma_L, linear
    double bandwidth = 1e6;   // Hz

    std::size_t primary_count() const { return primary_links.size(); }
    std::size_t secondary_count() const { return secondary_links.size(); }
};

// Binary activation of the secondary links.
struct ActivationVector {
    std::vector<std::uint8_t> bits;

    static ActivationVector zeros(std::size_t m) { return {std::vector<std::uint8_t>(m, 0)}; }
    std::size_t size() const { return bits.size(); }
    bool active(std::size_t j) const { return bits[j] != 0; }
    std::size_t active_count() const;
    bool operator==(const ActivationVector&) const = default;
};

struct SinrReport {
    std::vector<double> secondary_sinr;  // one entry per ACTIVE link, ascending link order
    std::vector<double> primary_sinr;    // one entry per primary link
};

struct SharingSolution {
    ActivationVector activation;
    double objective = 0.0;  // bits/second
    bool feasible = false;
    SinrReport report;
};

// SINR of active secondary link j: own received power over the sum of
// interference from other active secondary transmitters, all primary
// transmitters, and noise. Calling this for an inactive link is a contract
// violation (throws std::logic_error).
double secondary_sinr(const SharingInstance& instance, const ActivationVector& activation,
                      std::size_t link);

// SINR of primary link i: own received power over interference from active
// secondary transmitters plus noise.
double primary_sinr(const SharingInstance& instance, const ActivationVector& activation,
                    std::size_t primary);

SinrReport sinr_report(const SharingInstance& instance, const ActivationVector& activation);

// True iff every primary SINR and every active secondary SINR is >= the floor.
bool is_feasible(const SharingInstance& instance, const ActivationVector& activation);

// Number of floor constraints violated by this activation.
int violated_constraints(const SharingInstance& instance, const ActivationVector& activation);

// Shannon capacity BW * log2(1 + sinr), bits/second.
double link_capacity(double bandwidth, double sinr);

// Sum of active secondary capacities plus all primary capacities, each under
// the interference induced by this activation. Computed regardless of
// feasibility.
double objective(const SharingInstance& instance, const ActivationVector& activation);

// Bundle activation, objective, feasibility and the SINR report.
SharingSolution evaluate(const SharingInstance& instance, const ActivationVector& activation);

// Exhaustive optimum over all 2^M activations. Ties go to the
// lexicographically smallest bit string (bits[0] most significant). When not
// even the all-zeros activation is feasible, returns all-zeros flagged
// infeasible. Throws std::invalid_argument for M > 20.
SharingSolution brute_force_optimum(const SharingInstance& instance);

}  // namespace crn
