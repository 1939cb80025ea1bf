#include <doctest.h>

#include "dce/errors.hpp"
#include "dce/scattering.hpp"
#include "oracles.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

using namespace dce;

namespace {

CircuitConfig with_epsilon(double eps) {
    CircuitConfig c;
    c.epsilon = eps;
    return c;
}

double max_difference(const ScatteringRow& a, const ScatteringRow& b) {
    double worst = 0.0;
    auto scan = [&](const std::vector<SidebandAmplitude>& xs, bool anomalous) {
        for (const auto& x : xs) {
            const auto other = anomalous ? b.anomalous_at(x.frequency) : b.normal_at(x.frequency);
            worst = std::max(worst, std::abs(x.value - other.value_or(Complex{})));
        }
    };
    scan(a.normal, false);
    scan(a.anomalous, true);
    return worst;
}

}  // namespace

TEST_CASE("static boundary is a perfect mirror") {
    const auto c = with_epsilon(0.0);
    const auto p = mode_pair_from_fraction(c.drive_angular_frequency, 0.15);
    for (double w : {p.plus(), p.minus(), 0.37 * c.drive_angular_frequency}) {
        const auto row = solve_scattering(c, w);
        REQUIRE(row.normal.size() == 1);
        CHECK(row.normal[0].value == Complex(-1.0, 0.0));
        CHECK(row.anomalous.empty());
        CHECK(row.defect == 0.0);
        CHECK(commutator_defect(row) == 0.0);
    }
    const auto pert = perturbative_amplitudes(c, p);
    CHECK(*pert.plus.normal_at(p.plus()) == Complex(-1.0, 0.0));
    CHECK(pert.plus.anomalous.empty());
    CHECK(pert.minus.anomalous.empty());
}

TEST_CASE("first-order rows") {
    const auto c = with_epsilon(0.1);
    const auto p = mode_pair_from_fraction(c.drive_angular_frequency, 0.15);
    const auto rows = perturbative_amplitudes(c, p);
    const auto bp = rows.plus.anomalous_at(p.minus());
    const auto bm = rows.minus.anomalous_at(p.plus());
    REQUIRE(bp);
    REQUIRE(bm);
    CHECK(bp->real() == 0.0);
    CHECK(std::abs(bp->imag() + 0.01336) < 1e-5);
    CHECK(*bp == *bm);
    CHECK(bp->imag() == doctest::Approx(-oracle::lambda(c, p)).epsilon(1e-14));
}

TEST_CASE("ladder pair amplitude approaches the dressed first-order form at order eps squared") {
    const auto p = mode_pair_from_fraction(with_epsilon(0.0).drive_angular_frequency, 0.15);
    double previous = 0.0;
    for (double eps : {0.02, 0.01, 0.005, 0.0025}) {
        const auto c = with_epsilon(eps);
        const auto ref = oracle::dressed_beta(c, p);
        for (double out : {p.minus(), p.plus()}) {
            const double partner = out == p.minus() ? p.plus() : p.minus();
            const auto beta = solve_scattering(c, out).anomalous_at(partner);
            REQUIRE(beta);
            CHECK(std::abs(*beta - ref) / std::abs(ref) < eps);
        }
        const double dev = std::abs(*solve_scattering(c, p.minus()).anomalous_at(p.plus()) - ref);
        if (previous > 0.0) CHECK(previous / dev > 3.5);
        previous = dev;
    }
}

TEST_CASE("ladder pair amplitude at eps = 0.01 is within O(eps) of the bare first-order value") {
    const auto c = with_epsilon(0.01);
    const auto p = mode_pair_from_fraction(c.drive_angular_frequency, 0.15);
    const auto numeric = *solve_scattering(c, p.minus()).anomalous_at(p.plus());
    const auto bare = *perturbative_amplitudes(c, p).minus.anomalous_at(p.plus());
    // The static SQUID response changes the first-order amplitude by an
    // ε-independent factor, so the relative gap stays finite as ε → 0.
    const double gap = std::abs(numeric - bare) / std::abs(bare);
    CHECK(gap > 0.1);
    CHECK(gap < 0.4);
    CHECK(std::abs(numeric) / std::abs(bare) == doctest::Approx(
        1.0 / std::sqrt((1.0 + std::pow(oracle::kappa(c, p.plus()), 2)) *
                        (1.0 + std::pow(oracle::kappa(c, p.minus()), 2)))).epsilon(1e-3));
}

TEST_CASE("commutator is preserved on converged rows") {
    for (double eps : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6}) {
        for (double frac : {0.0, 0.05, 0.15, 0.3, 0.45}) {
            const auto c = with_epsilon(eps);
            const auto p = mode_pair_from_fraction(c.drive_angular_frequency, frac);
            for (double w : {p.plus(), p.minus()}) {
                const auto row = solve_scattering(c, w);
                CHECK(row.defect < 1e-9);
                CHECK(row.defect == doctest::Approx(commutator_defect(row)));
            }
        }
    }
}

TEST_CASE("truncation doubling is self-consistent at strong drive") {
    const auto c = with_epsilon(0.5);
    const double w = 0.35 * c.drive_angular_frequency;
    const auto a = solve_scattering_fixed(c, w, 32);
    const auto b = solve_scattering_fixed(c, w, 64);
    CHECK(max_difference(a, b) < 1e-10);
    CHECK(max_difference(b, a) < 1e-10);
    const auto adaptive = solve_scattering(c, w);
    CHECK(adaptive.amplitude_change < c.tolerance);
    CHECK(max_difference(adaptive, b) < 1e-10);
}

TEST_CASE("an under-truncated ladder is caught by self-convergence") {
    const auto c = with_epsilon(0.5);
    const double w = 0.35 * c.drive_angular_frequency;
    const auto n1 = solve_scattering_fixed(c, w, 1);
    const auto n2 = solve_scattering_fixed(c, w, 2);
    // A truncated ladder is still an exact symplectic map, so the commutator
    // alone cannot flag it; the amplitudes move when N is doubled.
    CHECK(n1.defect < 1e-9);
    CHECK(max_difference(n1, n2) > c.tolerance);
    CHECK(max_difference(n1, n2) > 1e-4);
}

TEST_CASE("truncation cap raises a convergence error with history") {
    auto c = with_epsilon(0.5);
    c.truncation = 1;
    c.max_truncation = 2;
    try {
        solve_scattering(c, 0.35 * c.drive_angular_frequency);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        REQUIRE(!e.history().empty());
        CHECK(e.history().front().half_width == 1);
        CHECK(e.history().back().max_amplitude_change > c.tolerance);
    }
}

TEST_CASE("conjugation symmetry") {
    const auto c = with_epsilon(0.3);
    const double w = 0.35 * c.drive_angular_frequency;
    const auto pos = solve_ladder(c, w, 16);
    const auto neg = solve_ladder(c, -w, 16);
    // b(−ω₀) = b†(ω₀): the coefficient of a(ω₀ + nω_d) in b(ω₀) is the conjugate
    // of the coefficient of a(−ω₀ − nω_d) in b(−ω₀).
    for (int n = -16; n <= 16; ++n) {
        const Complex x = pos.response[pos.ladder.slot(n)];
        const Complex y = neg.response[neg.ladder.slot(-n)];
        CHECK(std::abs(x - std::conj(y)) < 1e-14 * (1.0 + std::abs(x)));
    }
}

TEST_CASE("amplitudes live only on the sideband ladder") {
    const auto c = with_epsilon(0.4);
    const double w = 0.2137 * c.drive_angular_frequency;
    const auto row = solve_scattering(c, w);
    auto on_ladder = [&](double nu, bool anomalous) {
        const double signed_nu = anomalous ? -nu : nu;
        const double n = (signed_nu - w) / c.drive_angular_frequency;
        return std::abs(n - std::round(n)) < 1e-9;
    };
    for (const auto& a : row.normal) CHECK(on_ladder(a.frequency, false));
    for (const auto& a : row.anomalous) CHECK(on_ladder(a.frequency, true));
    CHECK(row.normal.size() + row.anomalous.size() == static_cast<std::size_t>(2 * row.truncation + 1));
    for (const auto& a : row.normal) CHECK(a.frequency > 0.0);
    for (const auto& a : row.anomalous) CHECK(a.frequency > 0.0);
}

TEST_CASE("ladder frequency collision with zero") {
    const auto c = with_epsilon(0.1);
    CHECK_THROWS_AS(LadderIndexSet(c.drive_angular_frequency, c.drive_angular_frequency, 3), DomainError);
    CHECK_THROWS_AS(LadderIndexSet(0.0, c.drive_angular_frequency, 3), DomainError);
    CHECK_THROWS_AS(solve_scattering(c, c.drive_angular_frequency), DomainError);
    CHECK_THROWS_AS(solve_scattering(c, 0.0), DomainError);
    CHECK_NOTHROW(LadderIndexSet(0.5 * c.drive_angular_frequency, c.drive_angular_frequency, 3));
}

TEST_CASE("boundary forms agree at first order up to the sign of the drive") {
    auto lin = with_epsilon(0.005);
    lin.boundary = BoundaryForm::linear;
    const auto jos = with_epsilon(0.005);
    const auto p = mode_pair_from_fraction(jos.drive_angular_frequency, 0.15);
    const auto bj = *solve_scattering(jos, p.minus()).anomalous_at(p.plus());
    const auto bl = *solve_scattering(lin, p.minus()).anomalous_at(p.plus());
    // L⁰(1 + ε sin) matches L⁰/(1 + ε sin) at first order with ε → −ε
    CHECK(std::abs(bj + bl) / std::abs(bj) < 0.05);
    lin.epsilon = 0.4;
    const auto row = solve_scattering(lin, p.minus());
    CHECK(row.defect < 1e-9);
    CHECK(std::abs(*row.anomalous_at(p.plus()) -
                   *solve_scattering(with_epsilon(0.4), p.minus()).anomalous_at(p.plus())) > 1e-6);
}

TEST_CASE("ladder system dump") {
    const auto c = with_epsilon(0.2);
    const auto sys = build_ladder_system(c, 0.35 * c.drive_angular_frequency, 3);
    const auto path = std::filesystem::temp_directory_path() / "dce_ladder_test.mtx";
    write_ladder_matrix_market(sys, path);
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    CHECK(first.rfind("%%MatrixMarket matrix coordinate complex general", 0) == 0);
    int headers = first.rfind("%%MatrixMarket", 0) == 0 ? 1 : 0;
    std::string line;
    while (std::getline(in, line)) headers += line.rfind("%%MatrixMarket", 0) == 0 ? 1 : 0;
    CHECK(headers == 2);
    std::filesystem::remove(path);
}
