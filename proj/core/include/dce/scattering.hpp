#pragma once

// Linear input→output map of the modulated SQUID boundary.
//
// Frequency-domain scheme. With L_eff(t) = L⁰ / (1 + ε sin ω_d t), the
// boundary condition Φ(0,t) + L_eff(t) ∂ₓΦ(0,t) = 0 becomes
//
//   (1 + ε sin ω_d t) Φ(0,t) + L⁰ ∂ₓΦ(0,t) = 0.
//
// Inserting the left/right-moving decomposition of Φ at x = 0 couples each
// frequency ω_n = ω₀ + n ω_d only to its neighbours:
//
//   (a_n + b_n) + (ε/2i) √|ω_n| (u_{n+1} − u_{n−1}) + i κ_n (a_n − b_n) = 0,
//   u_m = (a_m + b_m) / √|ω_m|,   κ_n = L⁰ ω_n / v,
//
// where a_n = a(ω_n), b_n = b(ω_n) and a(−ω) = a†(ω). This is a tridiagonal
// system M b = R a; the ladder is truncated at |n| ≤ N by dropping the
// couplings that leave it. The linear boundary form (L_eff ∝ 1 + ε sin ω_d t)
// instead modulates the ∂ₓΦ term and gives the same tridiagonal shape.
//
// Reporting convention. Raw solutions carry the static reflection phase
// r(ω₀) = −(1 + iκ₀)/(1 − iκ₀) of the unmodulated SQUID and the phase of a
// sine drive. ScatteringRow amplitudes are quoted with the output referred to
// an ideal mirror (multiplied by −r(ω₀)*) and with the time origin moved a
// quarter drive period (ladder entry n multiplied by iⁿ). Both are passive
// phase conventions: occupations and every indicator are unchanged, and the
// first-order pair amplitude takes the form −iλ of the weak-drive expansion.

#include "dce/errors.hpp"
#include "dce/model.hpp"

#include <complex>
#include <filesystem>
#include <optional>
#include <vector>

namespace dce {

using Complex = std::complex<double>;

/// Frequencies ω_n = ω₀ + n ω_d for n ∈ [−N, N].
class LadderIndexSet {
public:
    /// Throws DomainError if any ladder frequency lies within 10⁻⁹ ω_d of zero.
    LadderIndexSet(double base_frequency, double drive_frequency, int half_width);

    double base() const noexcept { return base_; }
    double drive() const noexcept { return drive_; }
    int half_width() const noexcept { return half_width_; }
    int size() const noexcept { return 2 * half_width_ + 1; }

    /// Signed frequency of ladder index n.
    double frequency(int n) const noexcept { return base_ + n * drive_; }
    /// Position of index n in dense storage.
    int slot(int n) const noexcept { return n + half_width_; }

    /// Relative collision tolerance used for zero-frequency and frequency matching.
    static constexpr double kFrequencyTolerance = 1e-9;

private:
    double base_;
    double drive_;
    int half_width_;
};

/// Tridiagonal matrices of M b = R a, stored band-wise over ladder slots.
struct LadderSystem {
    LadderIndexSet ladder;
    std::vector<Complex> m_lower, m_diag, m_upper;
    std::vector<Complex> r_lower, r_diag, r_upper;
};

LadderSystem build_ladder_system(const CircuitConfig& config, double base_frequency, int half_width);

/// Raw output row b(ω₀) = Σ_n response[slot(n)] · a(ω_n), no phase convention applied.
struct LadderSolution {
    LadderIndexSet ladder;
    std::vector<Complex> response;
};

/// Direct banded solve of a fixed-width ladder. The base may be negative;
/// solving at −ω₀ yields the row of b(−ω₀) = b†(ω₀).
LadderSolution solve_ladder(const CircuitConfig& config, double base_frequency, int half_width);

struct SidebandAmplitude {
    int index;              // ladder index n
    double frequency;       // |ω₀ + n ω_d| > 0, rad/s
    Complex value;
};

/// b(ω₀) = Σ_ν α(ν) a(ν) + Σ_ν β(ν) a†(ν), positive ν only.
struct ScatteringRow {
    double output_frequency = 0.0;
    std::vector<SidebandAmplitude> normal;
    std::vector<SidebandAmplitude> anomalous;
    int truncation = 0;
    double defect = 0.0;
    /// Largest amplitude change over the last truncation doubling (0 if not adaptive).
    double amplitude_change = 0.0;

    std::optional<Complex> normal_at(double frequency) const;
    std::optional<Complex> anomalous_at(double frequency) const;
};

/// |Σ|α|² − Σ|β|² − 1|.
double commutator_defect(const ScatteringRow& row);

/// Row at fixed half-width N in the reporting convention; no adaptation.
ScatteringRow solve_scattering_fixed(const CircuitConfig& config, double output_frequency, int half_width);

/// Adaptive solve: doubles N from config.truncation until the defect and every
/// amplitude move by less than config.tolerance. Requires ω₀ ∈ (0, ω_d).
/// Throws ConvergenceError once N would exceed config.max_truncation.
ScatteringRow solve_scattering(const CircuitConfig& config, double output_frequency);

struct RowPair {
    ScatteringRow plus;
    ScatteringRow minus;
};

/// First-order rows b± = −a± − iλ a†∓.
RowPair perturbative_amplitudes(const CircuitConfig& config, const ModePair& pair);

/// Adaptive rows at ω₊ and ω₋.
RowPair numeric_amplitudes(const CircuitConfig& config, const ModePair& pair);

/// Writes M and R in MatrixMarket coordinate complex format, one after the other.
void write_ladder_matrix_market(const LadderSystem& system, const std::filesystem::path& path);

}  // namespace dce
