#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "crn/spectrum_sharing.hpp"

namespace crn {

struct PsoConfig {
    std::size_t swarm_size = 40;
    std::size_t iterations = 200;
    double inertia = 0.7;         // omega
    double cognitive = 1.5;       // c1
    double social = 1.5;          // c2
    double velocity_clamp = 4.0;  // |v| bound, keeps the sigmoid out of saturation
    // Penalty per violated constraint. Unset => 10x the all-zeros objective,
    // falling back to 10x the interference-free capacity sum when that
    // baseline is zero (instances with no primary links).
    std::optional<double> infeasibility_penalty;
    std::uint64_t seed = 1;
};

struct Particle {
    std::vector<double> position;  // continuous carrier y
    std::vector<double> velocity;
    ActivationVector bits;         // binarized position
    ActivationVector pbest_bits;
    double pbest_fitness = 0.0;    // penalized
};

struct SwarmState {
    std::vector<Particle> particles;
    ActivationVector gbest_bits;
    double gbest_fitness = 0.0;  // penalized; never worsens across iterations
    std::size_t iteration = 0;
};

double default_infeasibility_penalty(const SharingInstance& instance);

// v' = inertia*v + cognitive*r1.(pbest - y) + social*r2.(gbest - y),
// componentwise, clamped to [-velocity_clamp, velocity_clamp].
std::vector<double> update_velocity_raw(std::span<const double> velocity,
                                        std::span<const double> position,
                                        std::span<const double> pbest,
                                        std::span<const double> gbest, const PsoConfig& cfg,
                                        std::span<const double> r1, std::span<const double> r2);

// Same update with pbest and gbest entering as bit vectors and y as the
// particle's continuous position.
std::vector<double> update_velocity(const Particle& particle, const ActivationVector& gbest_bits,
                                    const PsoConfig& cfg, std::span<const double> r1,
                                    std::span<const double> r2);

// y += v, componentwise.
void update_position(Particle& particle);

// bit_d = 1 iff draw_d < sigmoid(position_d).
ActivationVector binarize(std::span<const double> position, std::span<const double> draws);

// objective when feasible, otherwise objective - penalty * violation count.
double fitness(const SharingInstance& instance, const ActivationVector& bits,
               double infeasibility_penalty);

struct SwarmRun {
    SharingSolution solution;           // gbest, with honest feasibility
    SwarmState final_state;
    std::vector<double> gbest_history;  // penalized gbest after init and each iteration
};

// Binary particle swarm over the activation vector. Deterministic for a
// fixed seed: a single stream drives every draw in a fixed order --
//   init, per particle: M position draws in [-1,1], then M binarize draws;
//   each iteration, per particle: M r1 draws, M r2 draws, M binarize draws.
// Particles are updated against the gbest of the previous iteration; pbest
// and gbest are refreshed after each particle sweep. The all-zeros
// activation is always evaluated as a baseline incumbent, so the returned
// solution is never worse (in penalized fitness) than doing nothing. Throws
// std::invalid_argument when the instance has no secondary links.
SwarmRun optimize_detailed(const SharingInstance& instance, const PsoConfig& cfg);
SharingSolution optimize(const SharingInstance& instance, const PsoConfig& cfg);

}  // namespace crn
