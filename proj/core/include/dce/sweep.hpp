#pragma once

#include "dce/indicators.hpp"
#include "dce/model.hpp"
#include "dce/moments.hpp"
#include "dce/table.hpp"

#include <string_view>

namespace dce {

inline constexpr std::string_view kVersion = "0.1.0";

enum class SweepVariable { epsilon, temperature, detuning };

std::string_view to_string(SweepVariable variable) noexcept;
SweepVariable sweep_variable_from_string(std::string_view name);

struct SweepSpec {
    SweepVariable variable = SweepVariable::epsilon;
    double start = 0.0;
    double stop = 0.5;
    int points = 6;
    CircuitConfig config;               // fixed values for the non-swept parameters
    double detuning_fraction = 0.15;    // δω / ω_d
    Method method = Method::numeric;
    double noise_n_det = 0.0;           // added to V before the indicators
    unsigned threads = 0;

    /// Throws DomainError if the grid leaves the physical domain.
    void validate() const;
    double value(int index) const;
};

/// Model state and indicators at one parameter point.
struct PointResult {
    MomentSet moments;
    CovarianceMatrix covariance;
    IndicatorReport indicators;
    double lambda = 0.0;
};

PointResult evaluate_point(const CircuitConfig& config, double detuning_fraction, Method method,
                           double noise_n_det = 0.0);

/// Column order of sweep tables.
const std::vector<std::string>& sweep_columns();

/// One row per grid point, in grid order. A failing point aborts the whole
/// sweep with SweepError naming the point.
Table run_sweep(const SweepSpec& spec);

}  // namespace dce
