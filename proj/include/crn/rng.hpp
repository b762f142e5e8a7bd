#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace crn {

// Stateless seed mixer used to derive independent sub-streams from one
// master seed (placement, mobility, fading, ... must stay decoupled so that
// paired runs consume each stream identically).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Seeded PRNG. The engine (mt19937_64) is fully pinned by the standard; the
// value mappings below are done with explicit bit arithmetic instead of
// std::uniform_real_distribution and friends, whose output the standard does
// not pin. Identical seed => identical draw sequence.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Exponential with the given mean, via inverse CDF. uniform01() < 1, so
    // the log argument stays in (0, 1] and the result is finite and >= 0.
    double exponential(double mean = 1.0) { return -mean * std::log1p(-uniform01()); }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
        std::uint64_t v = engine_();
        while (v > limit) {
            v = engine_();
        }
        return v % n;
    }

private:
    std::mt19937_64 engine_;
};

// Independent stream keyed by (master seed, tag).
inline Rng substream(std::uint64_t master_seed, std::uint64_t tag) {
    return Rng(splitmix64(master_seed ^ splitmix64(tag)));
}

}  // namespace crn
