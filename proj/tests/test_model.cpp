#include <doctest.h>

#include "dce/errors.hpp"
#include "dce/model.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace dce;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("thermal occupation at the analysis frequencies") {
    const double n35 = thermal_occupation(kTwoPi * 3.5e9, 0.05);
    const double n65 = thermal_occupation(kTwoPi * 6.5e9, 0.05);
    CHECK(std::abs(n35 - 0.0360) < 1e-4);
    CHECK(std::abs(n65 - 0.00196) < 1e-5);
    CHECK(std::abs(n35 - oracle::bose(kTwoPi * 3.5e9, 0.05)) < 1e-14);
    CHECK(std::abs(n65 - oracle::bose(kTwoPi * 6.5e9, 0.05)) < 1e-15);
}

TEST_CASE("thermal occupation limits and errors") {
    CHECK(thermal_occupation(kTwoPi * 5e9, 0.0) == 0.0);
    CHECK(thermal_occupation(1.0, 0.0) == 0.0);
    CHECK_THROWS_AS(thermal_occupation(0.0, 0.05), DomainError);
    CHECK_THROWS_AS(thermal_occupation(-1.0, 0.05), DomainError);
    CHECK_THROWS_AS(thermal_occupation(1e9, -0.01), DomainError);
}

TEST_CASE("thermal occupation is decreasing in frequency and matches the extended-precision oracle") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> f(0.1e9, 30e9), t(0.001, 1.0);
    for (int k = 0; k < 200; ++k) {
        const double w = kTwoPi * f(rng), temp = t(rng);
        const double n = thermal_occupation(w, temp);
        CHECK(n >= 0.0);
        CHECK(thermal_occupation(1.01 * w, temp) < n);
        CHECK(n == doctest::Approx(oracle::bose(w, temp)).epsilon(1e-12));
    }
}

TEST_CASE("mode pair at the operating point") {
    const auto p = mode_pair_from_fraction(kTwoPi * 10e9, 0.15);
    CHECK(p.plus() / kTwoPi == doctest::Approx(6.5e9).epsilon(1e-14));
    CHECK(p.minus() / kTwoPi == doctest::Approx(3.5e9).epsilon(1e-14));
    const auto d = mode_pair(kTwoPi * 10e9, 0.0);
    CHECK(d.plus() == d.minus());
    CHECK(d.plus() == kTwoPi * 5e9);
    CHECK_THROWS_AS(mode_pair(kTwoPi * 10e9, 0.5 * kTwoPi * 10e9), DomainError);
    CHECK_THROWS_AS(mode_pair(kTwoPi * 10e9, -1.0), DomainError);
    CHECK_THROWS_AS(mode_pair(0.0, 0.0), DomainError);
}

TEST_CASE("mode pair frequencies sum to the drive exactly") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> wd(1e6, 1e12), frac(0.0, 0.499999);
    for (int k = 0; k < 10000; ++k) {
        const double w = wd(rng);
        const auto p = mode_pair(w, frac(rng) * w);
        REQUIRE(p.plus() + p.minus() - w == 0.0);
        REQUIRE(p.drive() == w);
    }
}

TEST_CASE("modulation parameter") {
    CircuitConfig c;
    const auto p = mode_pair_from_fraction(c.drive_angular_frequency, 0.15);
    CHECK(c.dimensionless_length() == doctest::Approx(0.28).epsilon(1e-14));
    CHECK(std::abs(modulation_parameter(c, p) - 0.1 * 0.28 * std::sqrt(0.65 * 0.35)) < 1e-5);
    CHECK(modulation_parameter(c, p) == doctest::Approx(oracle::lambda(c, p)).epsilon(1e-14));
    c.epsilon = 0.0;
    CHECK(modulation_parameter(c, p) == 0.0);
    c.epsilon = 0.25;
    CHECK(c.length_modulation() == doctest::Approx(0.25 * c.effective_length).epsilon(1e-15));
}

TEST_CASE("lambda depends on the circuit only through L0 wd / v") {
    CircuitConfig a;
    CircuitConfig b = a;
    b.line_speed *= 3.0;
    b.effective_length *= 3.0;
    b.impedance = 75.0;
    const auto p = mode_pair_from_fraction(a.drive_angular_frequency, 0.2);
    CHECK(modulation_parameter(a, p) == doctest::Approx(modulation_parameter(b, p)).epsilon(1e-14));
}

TEST_CASE("config validation") {
    CircuitConfig c;
    CHECK_NOTHROW(c.validate());
    c.epsilon = 1.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.temperature = -1.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.truncation = 0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.line_speed = 0.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.tolerance = 0.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
}
