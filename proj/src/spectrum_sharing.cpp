#include "crn/spectrum_sharing.hpp"

#include <cmath>
#include <stdexcept>

namespace crn {

namespace {

double received_power(const SharingInstance& instance, const NodePosition& tx,
                      const NodePosition& rx) {
    return instance.transmit_power * path_loss_gain(distance_between(tx, rx), instance.path_loss);
}

// Single arithmetic path for every SINR in this module; interference terms
// are accumulated in ascending index order (secondaries, then primaries) so
// repeated evaluations are bit-identical.
double secondary_sinr_unchecked(const SharingInstance& instance,
                                const ActivationVector& activation, std::size_t j) {
    const auto& link = instance.secondary_links[j];
    double interference = 0.0;
    for (std::size_t l = 0; l < instance.secondary_count(); ++l) {
        if (l == j || !activation.active(l)) {
            continue;
        }
        interference += received_power(instance, instance.secondary_links[l].tx, link.rx);
    }
    for (const auto& primary : instance.primary_links) {
        interference += received_power(instance, primary.tx, link.rx);
    }
    return received_power(instance, link.tx, link.rx) /
           (interference + instance.noise.noise_power);
}

void sinr_report_into(const SharingInstance& instance, const ActivationVector& activation,
                      SinrReport& report) {
    report.secondary_sinr.clear();
    report.primary_sinr.clear();
    for (std::size_t j = 0; j < instance.secondary_count(); ++j) {
        if (activation.active(j)) {
            report.secondary_sinr.push_back(secondary_sinr_unchecked(instance, activation, j));
        }
    }
    for (std::size_t i = 0; i < instance.primary_count(); ++i) {
        report.primary_sinr.push_back(primary_sinr(instance, activation, i));
    }
}

double objective_of(const SharingInstance& instance, const SinrReport& report) {
    double total = 0.0;
    for (double sinr : report.secondary_sinr) {
        total += link_capacity(instance.bandwidth, sinr);
    }
    for (double sinr : report.primary_sinr) {
        total += link_capacity(instance.bandwidth, sinr);
    }
    return total;
}

int violations_of(const SharingInstance& instance, const SinrReport& report) {
    int count = 0;
    for (double sinr : report.primary_sinr) {
        if (sinr < instance.sinr_floor) {
            ++count;
        }
    }
    for (double sinr : report.secondary_sinr) {
        if (sinr < instance.sinr_floor) {
            ++count;
        }
    }
    return count;
}

void check_length(const SharingInstance& instance, const ActivationVector& activation) {
    if (activation.size() != instance.secondary_count()) {
        throw std::invalid_argument("activation length does not match secondary link count");
    }
}

}  // namespace

std::size_t ActivationVector::active_count() const {
    std::size_t n = 0;
    for (auto b : bits) {
        n += b != 0;
    }
    return n;
}

double secondary_sinr(const SharingInstance& instance, const ActivationVector& activation,
                      std::size_t link) {
    check_length(instance, activation);
    if (!activation.active(link)) {
        throw std::logic_error("secondary_sinr queried for an inactive link");
    }
    return secondary_sinr_unchecked(instance, activation, link);
}

double primary_sinr(const SharingInstance& instance, const ActivationVector& activation,
                    std::size_t primary) {
    const auto& link = instance.primary_links.at(primary);
    double interference = 0.0;
    for (std::size_t l = 0; l < instance.secondary_count(); ++l) {
        if (!activation.active(l)) {
            continue;
        }
        interference += received_power(instance, instance.secondary_links[l].tx, link.rx);
    }
    return received_power(instance, link.tx, link.rx) /
           (interference + instance.noise.noise_power);
}

SinrReport sinr_report(const SharingInstance& instance, const ActivationVector& activation) {
    check_length(instance, activation);
    SinrReport report;
    sinr_report_into(instance, activation, report);
    return report;
}

bool is_feasible(const SharingInstance& instance, const ActivationVector& activation) {
    return violated_constraints(instance, activation) == 0;
}

int violated_constraints(const SharingInstance& instance, const ActivationVector& activation) {
    check_length(instance, activation);
    SinrReport report;
    sinr_report_into(instance, activation, report);
    return violations_of(instance, report);
}

double link_capacity(double bandwidth, double sinr) {
    return bandwidth * std::log2(1.0 + sinr);
}

double objective(const SharingInstance& instance, const ActivationVector& activation) {
    check_length(instance, activation);
    SinrReport report;
    sinr_report_into(instance, activation, report);
    return objective_of(instance, report);
}

SharingSolution evaluate(const SharingInstance& instance, const ActivationVector& activation) {
    check_length(instance, activation);
    SharingSolution solution;
    solution.activation = activation;
    sinr_report_into(instance, activation, solution.report);
    solution.objective = objective_of(instance, solution.report);
    solution.feasible = violations_of(instance, solution.report) == 0;
    return solution;
}

SharingSolution brute_force_optimum(const SharingInstance& instance) {
    const std::size_t m = instance.secondary_count();
    if (m > 20) {
        throw std::invalid_argument("brute_force_optimum: more than 20 secondary links");
    }

    ActivationVector activation = ActivationVector::zeros(m);
    SinrReport report;
    bool have_best = false;
    ActivationVector best_activation = activation;
    double best_objective = 0.0;

    // Enumerate in lexicographic bit-string order (bits[0] most significant);
    // strict improvement keeps the lexicographically smallest tie.
    const std::uint64_t total = std::uint64_t{1} << m;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (std::size_t j = 0; j < m; ++j) {
            activation.bits[j] = static_cast<std::uint8_t>((mask >> (m - 1 - j)) & 1u);
        }
        sinr_report_into(instance, activation, report);
        if (violations_of(instance, report) != 0) {
            continue;
        }
        const double value = objective_of(instance, report);
        if (!have_best || value > best_objective) {
            have_best = true;
            best_activation = activation;
            best_objective = value;
        }
    }

    if (!have_best) {
        return evaluate(instance, ActivationVector::zeros(m));
    }
    return evaluate(instance, best_activation);
}

}  // namespace crn
