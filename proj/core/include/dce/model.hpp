#pragma once

// Physical parameters of a SQUID-terminated waveguide under sinusoidal flux
// drive, plus the mode bookkeeping shared by the scattering, moment and
// indicator code. Everything downstream works with dimensionless occupations
// (ħ = 1, vacuum quadrature variance 1/2); SI units only appear here.

#include <numbers>

namespace dce {

// CODATA 2018.
inline constexpr double kHbar = 1.054571817e-34;      // J s
inline constexpr double kBoltzmann = 1.380649e-23;    // J / K

/// How the Josephson-energy modulation enters the effective length.
enum class BoundaryForm {
    /// L_eff(t) = L⁰ / (1 + ε sin ω_d t), exact for E_J(t) = E_J⁰ (1 + ε sin ω_d t).
    josephson,
    /// L_eff(t) = L⁰ (1 + ε sin ω_d t); agrees with the above to first order in
    /// ε once the sign of ε is flipped.
    linear,
};

struct CircuitConfig {
    double drive_angular_frequency = 2.0 * std::numbers::pi * 10.0e9;  // rad/s
    double epsilon = 0.1;                                              // in [0, 1)
    double temperature = 0.05;                                         // K
    double line_speed = 1.2e8;                                         // m/s
    /// Calibrated so that L⁰ ω_d / v = 0.28 at the default drive frequency.
    double effective_length = 0.28 * 1.2e8 / (2.0 * std::numbers::pi * 10.0e9);  // m
    double impedance = 50.0;                                           // ohm, cancels in all indicators
    int truncation = 20;                                               // initial ladder half-width N
    int max_truncation = 1024;
    double tolerance = 1e-12;
    BoundaryForm boundary = BoundaryForm::josephson;

    /// Throws DomainError unless every field is inside its physical range.
    void validate() const;

    /// L⁰ ω_d / v, the static boundary strength at the drive frequency.
    double dimensionless_length() const noexcept {
        return effective_length * drive_angular_frequency / line_speed;
    }

    /// δL_eff = ε L⁰.
    double length_modulation() const noexcept { return epsilon * effective_length; }
};

/// Two analysis frequencies placed symmetrically about ω_d / 2.
///
/// Only constructible through mode_pair(), which guarantees ω₊ + ω₋ == ω_d
/// in floating point.
class ModePair {
public:
    double plus() const noexcept { return plus_; }
    double minus() const noexcept { return minus_; }
    double detuning() const noexcept { return detuning_; }
    double drive() const noexcept { return plus_ + minus_; }

private:
    friend ModePair mode_pair(double drive_angular_frequency, double detuning);
    ModePair(double plus, double minus, double detuning)
        : plus_(plus), minus_(minus), detuning_(detuning) {}

    double plus_;
    double minus_;
    double detuning_;
};

/// Builds ω± = ω_d/2 ± δω. Requires ω_d > 0 and 0 ≤ δω < ω_d/2.
ModePair mode_pair(double drive_angular_frequency, double detuning);

/// Convenience for the common case of detuning given as a fraction of ω_d.
inline ModePair mode_pair_from_fraction(double drive_angular_frequency, double fraction) {
    return mode_pair(drive_angular_frequency, fraction * drive_angular_frequency);
}

/// Bose-Einstein occupation (exp(ħω/k_B T) − 1)⁻¹; exactly 0 at T = 0.
double thermal_occupation(double angular_frequency, double temperature);

/// λ = ε (L⁰/v) √(ω₊ω₋), the small parameter of the weak-drive expansion.
double modulation_parameter(const CircuitConfig& config, const ModePair& pair);

}  // namespace dce
