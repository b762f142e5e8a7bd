#include "crn/swarm_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crn/rng.hpp"

namespace crn {

namespace {

double sigmoid(double x) {
    return 1.0 / (1.0 + std::exp(-x));
}

// Capacity sum with every link free of interference; upper bound on any
// objective value, used to keep the penalty dominant when the all-zeros
// baseline is zero.
double interference_free_capacity(const SharingInstance& instance) {
    double total = 0.0;
    auto solo = [&](const LinkEndpoints& link) {
        const double gain = path_loss_gain(distance_between(link.tx, link.rx), instance.path_loss);
        const double snr = snr_of(instance.transmit_power, gain, instance.noise);
        return link_capacity(instance.bandwidth, snr);
    };
    for (const auto& link : instance.secondary_links) {
        total += solo(link);
    }
    for (const auto& link : instance.primary_links) {
        total += solo(link);
    }
    return total;
}

}  // namespace

double default_infeasibility_penalty(const SharingInstance& instance) {
    const double baseline =
        objective(instance, ActivationVector::zeros(instance.secondary_count()));
    if (baseline > 0.0) {
        return 10.0 * baseline;
    }
    return 10.0 * interference_free_capacity(instance);
}

std::vector<double> update_velocity_raw(std::span<const double> velocity,
                                        std::span<const double> position,
                                        std::span<const double> pbest,
                                        std::span<const double> gbest, const PsoConfig& cfg,
                                        std::span<const double> r1, std::span<const double> r2) {
    std::vector<double> updated(position.size());
    for (std::size_t d = 0; d < position.size(); ++d) {
        const double v = cfg.inertia * velocity[d] +
                         cfg.cognitive * r1[d] * (pbest[d] - position[d]) +
                         cfg.social * r2[d] * (gbest[d] - position[d]);
        updated[d] = std::clamp(v, -cfg.velocity_clamp, cfg.velocity_clamp);
    }
    return updated;
}

std::vector<double> update_velocity(const Particle& particle, const ActivationVector& gbest_bits,
                                    const PsoConfig& cfg, std::span<const double> r1,
                                    std::span<const double> r2) {
    const std::size_t m = particle.position.size();
    std::vector<double> pbest(m);
    std::vector<double> gbest(m);
    for (std::size_t d = 0; d < m; ++d) {
        pbest[d] = static_cast<double>(particle.pbest_bits.bits[d]);
        gbest[d] = static_cast<double>(gbest_bits.bits[d]);
    }
    return update_velocity_raw(particle.velocity, particle.position, pbest, gbest, cfg, r1, r2);
}

void update_position(Particle& particle) {
    for (std::size_t d = 0; d < particle.position.size(); ++d) {
        particle.position[d] += particle.velocity[d];
    }
}

ActivationVector binarize(std::span<const double> position, std::span<const double> draws) {
    ActivationVector bits = ActivationVector::zeros(position.size());
    for (std::size_t d = 0; d < position.size(); ++d) {
        bits.bits[d] = draws[d] < sigmoid(position[d]) ? 1 : 0;
    }
    return bits;
}

double fitness(const SharingInstance& instance, const ActivationVector& bits,
               double infeasibility_penalty) {
    const double value = objective(instance, bits);
    const int violations = violated_constraints(instance, bits);
    if (violations == 0) {
        return value;
    }
    return value - infeasibility_penalty * violations;
}

SwarmRun optimize_detailed(const SharingInstance& instance, const PsoConfig& cfg) {
    const std::size_t m = instance.secondary_count();
    if (m == 0) {
        throw std::invalid_argument("optimize: instance has no secondary links");
    }
    if (cfg.swarm_size == 0) {
        throw std::invalid_argument("optimize: swarm_size must be >= 1");
    }

    const double penalty =
        cfg.infeasibility_penalty.value_or(default_infeasibility_penalty(instance));
    Rng rng(cfg.seed);

    SwarmRun run;
    SwarmState& state = run.final_state;
    state.particles.resize(cfg.swarm_size);

    std::vector<double> draws(m);
    for (auto& particle : state.particles) {
        particle.position.resize(m);
        particle.velocity.assign(m, 0.0);
        for (auto& y : particle.position) {
            y = rng.uniform(-1.0, 1.0);
        }
        for (auto& u : draws) {
            u = rng.uniform01();
        }
        particle.bits = binarize(particle.position, draws);
        particle.pbest_bits = particle.bits;
        particle.pbest_fitness = fitness(instance, particle.bits, penalty);
    }

    auto refresh_gbest = [&state]() {
        for (const auto& particle : state.particles) {
            if (state.gbest_bits.size() == 0 || particle.pbest_fitness > state.gbest_fitness) {
                state.gbest_bits = particle.pbest_bits;
                state.gbest_fitness = particle.pbest_fitness;
            }
        }
    };
    refresh_gbest();
    run.gbest_history.push_back(state.gbest_fitness);

    std::vector<double> r1(m);
    std::vector<double> r2(m);
    for (std::size_t it = 0; it < cfg.iterations; ++it) {
        // Velocity updates in this sweep all use the previous iteration's gbest.
        const ActivationVector gbest_snapshot = state.gbest_bits;
        for (auto& particle : state.particles) {
            for (std::size_t d = 0; d < m; ++d) {
                r1[d] = rng.uniform01();
            }
            for (std::size_t d = 0; d < m; ++d) {
                r2[d] = rng.uniform01();
            }
            for (auto& u : draws) {
                u = rng.uniform01();
            }
            particle.velocity = update_velocity(particle, gbest_snapshot, cfg, r1, r2);
            update_position(particle);
            particle.bits = binarize(particle.position, draws);
            const double value = fitness(instance, particle.bits, penalty);
            if (value > particle.pbest_fitness) {
                particle.pbest_fitness = value;
                particle.pbest_bits = particle.bits;
            }
        }
        refresh_gbest();
        state.iteration = it + 1;
        run.gbest_history.push_back(state.gbest_fitness);
    }

    // The do-nothing activation is always a candidate: the returned solution
    // is never worse than leaving every secondary link silent.
    const ActivationVector zeros = ActivationVector::zeros(m);
    if (fitness(instance, zeros, penalty) > state.gbest_fitness) {
        run.solution = evaluate(instance, zeros);
    } else {
        run.solution = evaluate(instance, state.gbest_bits);
    }
    return run;
}

SharingSolution optimize(const SharingInstance& instance, const PsoConfig& cfg) {
    return optimize_detailed(instance, cfg).solution;
}

}  // namespace crn
