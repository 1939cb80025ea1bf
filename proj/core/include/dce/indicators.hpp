#pragma once

#include "dce/model.hpp"
#include "dce/moments.hpp"

#include <nlohmann/json.hpp>

namespace dce {

struct IndicatorReport {
    double fdf_min = 0.0;           // min_θ ⟨:f_θ† f_θ:⟩
    double theta_opt = 0.0;         // in [0, π)
    double sigma2 = 0.0;            // two-mode squeezing at the optimal φ
    double phi_opt = 0.0;           // in [0, π)
    double sigma2_threshold = 0.0;
    double logneg = 0.0;
    bool nonclassical_by_fdf = false;
    bool nonclassical_by_sigma2 = false;
    bool entangled = false;
};

/// ⟨:f_θ† f_θ:⟩ with f_θ = e^{iθ}b₋ + e^{−iθ}b₋† + i(e^{iθ}b₊ − e^{−iθ}b₊†).
double fdf_theta(const MomentSet& m, double theta);

struct FdfMinimum {
    double theta_opt;
    double value;
};

/// Closed-form minimum over θ.
FdfMinimum fdf_min(const MomentSet& m);

/// σ₂ at a fixed quadrature phase φ.
double two_mode_squeezing(const MomentSet& m, const ModePair& pair, double phi);

struct SqueezingMaximum {
    double phi_opt;
    double value;
};

/// σ₂ maximized over φ (value 4√(ω₊ω₋)|W| / D).
SqueezingMaximum two_mode_squeezing_optimal(const MomentSet& m, const ModePair& pair);

/// Right-hand side of the σ₂ nonclassicality inequality.
double sigma2_threshold(const MomentSet& m, const ModePair& pair);

/// Smallest symplectic eigenvalue of the partially transposed covariance.
/// Throws InvalidCovarianceError when σ² − 4 det V is negative beyond rounding.
double partial_transpose_nu_minus(const CovarianceMatrix& v);

/// max[0, −ln(2ν₋)].
double logarithmic_negativity(const CovarianceMatrix& v);

struct OnsetEstimates {
    double epsilon_star;  // fdf sign change, weak drive
    double epsilon_zero;  // logarithmic-negativity onset, small detuning
};

/// ε* = (n̄₊ + n̄₋)/2 ÷ [(L⁰/v)√(ω₊ω₋)],  ε₀ = 2v/(L⁰ω_d) √(n̄₊ n̄₋).
OnsetEstimates onset_estimates(const CircuitConfig& config, const ModePair& pair);

/// The parts of fdf_min, σ₂ and 𝒩 that are polynomial in V. Squared moduli
/// carry the finite-sample bias of the minimized indicators and can be
/// debiased by resampling before the square roots are taken.
struct QuadraticInvariants {
    double fdf_base = 0.0;         // 2(n₊ + n₋) + 4 Im X
    double fdf_pair_sq = 0.0;      // |2(S₋ − S₊) + 4iW|²
    double w_sq = 0.0;             // |W|²
    double pt_sigma = 0.0;         // det A + det B − 2 det C
    double pt_discriminant = 0.0;  // pt_sigma² − 4 det V
};
QuadraticInvariants quadratic_invariants(const CovarianceMatrix& v);

/// fdf_min, σ₂ and 𝒩 rebuilt from invariants; negative squared moduli count
/// as zero. `weight` is the σ₂ denominator ω₊(2n₊+1) + ω₋(2n₋+1).
struct InvariantIndicators {
    double fdf_min;
    double sigma2;
    double logneg;
};
InvariantIndicators indicators_from_invariants(const QuadraticInvariants& q, const ModePair& pair, double weight);

IndicatorReport evaluate_indicators(const MomentSet& m, const ModePair& pair);
IndicatorReport evaluate_indicators(const CovarianceMatrix& v, const ModePair& pair);

nlohmann::json to_json(const IndicatorReport& report);

}  // namespace dce
