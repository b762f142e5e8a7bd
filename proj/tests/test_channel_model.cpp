#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "crn/channel_model.hpp"

using namespace crn;

TEST_CASE("path loss gain at hand-checked distances") {
    PathLossModel model;  // exponent 2, reference 1 m
    CHECK(path_loss_gain(1.0, model) == 1.0);
    CHECK(path_loss_gain(2.0, model) == 0.25);
    CHECK(path_loss_gain(0.1, model) == 1.0);  // clamped below the reference distance
    CHECK(path_loss_gain(0.0, model) == 1.0);
}

TEST_CASE("path loss gain is non-increasing in distance") {
    PathLossModel model{2.5, 1.0};
    Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        const double d1 = rng.uniform(1.0, 1e4);
        const double d2 = d1 + rng.uniform(0.0, 1e3);
        CHECK(path_loss_gain(d2, model) <= path_loss_gain(d1, model));
        CHECK(path_loss_gain(d1, model) > 0.0);
        CHECK(path_loss_gain(d1, model) <= 1.0);
    }
}

TEST_CASE("channel sampling: empty, deterministic, unit mean") {
    CHECK(sample_channel(0, 1).relay_count() == 0);

    const auto a = sample_channel(10, 42);
    const auto b = sample_channel(10, 42);
    CHECK(a.source_relay_gains == b.source_relay_gains);
    CHECK(a.relay_dest_gains == b.relay_dest_gains);

    const auto big = sample_channel(100000, 7);
    double sum = 0.0;
    for (double g : big.source_relay_gains) {
        CHECK(g >= 0.0);
        sum += g;
    }
    for (double g : big.relay_dest_gains) {
        CHECK(g >= 0.0);
        sum += g;
    }
    const double mean = sum / (2.0 * 100000.0);
    CHECK(mean > 0.98);
    CHECK(mean < 1.02);
}

TEST_CASE("snr_of hand values and linearity") {
    NoiseModel noise{0.1};
    CHECK(snr_of(0.0, 1.0, noise) == 0.0);
    CHECK(snr_of(1.0, 1.0, noise) == doctest::Approx(10.0));
    CHECK(snr_of(2.0, 0.5, NoiseModel{1.0}) == doctest::Approx(1.0));

    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double w = rng.uniform(0.0, 10.0);
        const double g = rng.uniform(0.0, 5.0);
        const double a = rng.uniform(0.0, 4.0);
        const NoiseModel n{rng.uniform(1e-3, 1.0)};
        CHECK(snr_of(a * w, g, n) == doctest::Approx(a * snr_of(w, g, n)).epsilon(1e-12));
        CHECK(snr_of(w, a * g, n) == doctest::Approx(a * snr_of(w, g, n)).epsilon(1e-12));
    }
}

TEST_CASE("dB conversions") {
    CHECK(db_to_linear(0.0) == 1.0);
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
    CHECK(db_to_linear(6.0) == doctest::Approx(3.9811).epsilon(1e-4));
    CHECK(linear_to_db(10.0) == doctest::Approx(10.0));
    CHECK_THROWS_AS(linear_to_db(0.0), std::domain_error);
    CHECK_THROWS_AS(linear_to_db(-1.0), std::domain_error);

    // round trip across twelve decades
    Rng rng(9);
    for (int i = 0; i < 2000; ++i) {
        const double x = std::pow(10.0, rng.uniform(-6.0, 6.0));
        CHECK(std::abs(db_to_linear(linear_to_db(x)) - x) <= 1e-12 * x);
    }
}
