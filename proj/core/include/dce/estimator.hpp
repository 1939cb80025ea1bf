#pragma once

// Analysis path for measured (or synthetic) quadrature records: covariance
// estimation, bootstrap confidence intervals on the indicators, and a
// classical detector-noise model.
//
// Record file: UTF-8 CSV, header `i_minus,q_minus,i_plus,q_plus`, one sample
// per row, `#` comment lines ignored. Channels map to (q₋, p₋, q₊, p₊) in
// units where the vacuum variance is ½. An optional JSON sidecar
// {"gain": [4 numbers], "offset": [4 numbers]} calibrates raw values as
// (raw − offset) / gain.

#include "dce/indicators.hpp"
#include "dce/moments.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace dce {

using Quadratures = std::array<double, 4>;

struct Calibration {
    Quadratures gain{1.0, 1.0, 1.0, 1.0};
    Quadratures offset{0.0, 0.0, 0.0, 0.0};
};

struct QuadratureRecordSet {
    std::vector<Quadratures> samples;  // calibrated
    Calibration calibration;

    std::size_t sample_count() const noexcept { return samples.size(); }
};

Calibration load_calibration(const std::filesystem::path& path);

/// Throws ParseError carrying the 1-based line number on malformed input.
QuadratureRecordSet parse_quadrature_records(std::istream& in, const Calibration& calibration = {});
QuadratureRecordSet load_quadrature_records(const std::filesystem::path& path,
                                            const std::optional<std::filesystem::path>& calibration = std::nullopt);
void write_quadrature_records(std::ostream& out, const QuadratureRecordSet& records);
void write_quadrature_records(const std::filesystem::path& path, const QuadratureRecordSet& records);

struct CovarianceEstimate {
    CovarianceMatrix covariance;
    Eigen::Matrix4d standard_error;  // Gaussian fourth-moment formula
    std::size_t sample_count = 0;
};

/// Unbiased sample covariance (mean removed). Needs M ≥ 2 and no constant channel.
CovarianceEstimate estimate_covariance(const QuadratureRecordSet& records);

/// One-σ interval. fdf_min, σ₂ and 𝒩 are optimized over quadrature angles
/// and are biased toward nonclassicality at finite M (by about 2σ for the
/// vacuum), so the interval spans stddev around both the point estimate and
/// a bias-corrected estimate.
struct IndicatorInterval {
    double point = 0.0;           // full-data estimate
    double mean = 0.0;            // bootstrap mean
    double stddev = 0.0;          // bootstrap standard deviation
    double bias_corrected = 0.0;  // rebuilt from bootstrap-debiased invariants
    double lower = 0.0;           // min(point, bias_corrected) − stddev
    double upper = 0.0;           // max(point, bias_corrected) + stddev

    bool contains(double value) const noexcept { return lower <= value && value <= upper; }
};

struct EstimateReport {
    IndicatorReport point;
    IndicatorInterval fdf_min;
    IndicatorInterval sigma2;
    IndicatorInterval sigma2_threshold;
    IndicatorInterval logneg;
    std::size_t resamples = 0;
    std::uint64_t seed = 0;
};

/// Row-resampling bootstrap. Resample k draws from a generator seeded by
/// (seed, k), so the report is identical for any thread count. The bias
/// correction applies 2q̂ − mean(q*) to the QuadraticInvariants (to the
/// threshold itself) and rebuilds the indicators from them.
EstimateReport bootstrap_indicators(const QuadratureRecordSet& records, const ModePair& pair,
                                    std::size_t resamples = 1000, std::uint64_t seed = 0,
                                    unsigned threads = 0);

/// V + n_det I: equal, uncorrelated classical noise on every quadrature.
CovarianceMatrix inject_detector_noise(const CovarianceMatrix& v, double n_det);
/// Per-channel variant, channels in (q₋, p₋, q₊, p₊) order.
CovarianceMatrix inject_detector_noise(const CovarianceMatrix& v, const Quadratures& n_det);

/// Zero-mean Gaussian samples x = V^{1/2} z via the symmetric square root.
QuadratureRecordSet sample_quadratures(const CovarianceMatrix& v, std::size_t count, std::uint64_t seed);

struct IndicatorSpread {
    double fdf_min = 0.0;
    double logneg = 0.0;  // of the unclamped −ln(2ν₋)
};

/// Delta-method standard errors of fdf_min and −ln(2ν₋) for a covariance
/// estimated from `count` Gaussian samples.
IndicatorSpread indicator_standard_errors(const CovarianceMatrix& v, std::size_t count);

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

nlohmann::json to_json(const EstimateReport& report);
nlohmann::json to_json(const CovarianceEstimate& estimate);

}  // namespace dce
