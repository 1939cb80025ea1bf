#include "dce/indicators.hpp"

#include "dce/errors.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace dce {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_half_turn(double angle) {
    double a = std::fmod(angle, kPi);
    if (a < 0.0) a += kPi;
    if (a >= kPi) a = 0.0;
    return a;
}

double quadrature_weight(const MomentSet& m, const ModePair& pair) {
    return pair.plus() * (2.0 * m.n_plus + 1.0) + pair.minus() * (2.0 * m.n_minus + 1.0);
}

}  // namespace

double fdf_theta(const MomentSet& m, double theta) {
    const Complex phase = std::polar(1.0, 2.0 * theta);
    return 2.0 * (m.n_minus + m.n_plus) - 4.0 * (phase * m.w).imag() +
           2.0 * (phase * (m.s_minus - m.s_plus)).real() + 4.0 * m.x.imag();
}

FdfMinimum fdf_min(const MomentSet& m) {
    // fdf(θ) = base + Re[e^{2iθ} z]
    const Complex z = 2.0 * (m.s_minus - m.s_plus) + Complex{0.0, 4.0} * m.w;
    const double base = 2.0 * (m.n_minus + m.n_plus) + 4.0 * m.x.imag();
    const double theta = (z == Complex{}) ? 0.0 : wrap_half_turn(0.5 * (kPi - std::arg(z)));
    return {theta, base - std::abs(z)};
}

double two_mode_squeezing(const MomentSet& m, const ModePair& pair, double phi) {
    const double root = std::sqrt(pair.plus() * pair.minus());
    return 4.0 * root * (std::polar(1.0, 2.0 * phi) * m.w).real() / quadrature_weight(m, pair);
}

SqueezingMaximum two_mode_squeezing_optimal(const MomentSet& m, const ModePair& pair) {
    const double root = std::sqrt(pair.plus() * pair.minus());
    const double phi = (m.w == Complex{}) ? 0.0 : wrap_half_turn(-0.5 * std::arg(m.w));
    return {phi, 4.0 * root * std::abs(m.w) / quadrature_weight(m, pair)};
}

double sigma2_threshold(const MomentSet& m, const ModePair& pair) {
    const double root = std::sqrt(pair.plus() * pair.minus());
    return 2.0 * root * (m.n_plus + m.n_minus) / quadrature_weight(m, pair);
}

double partial_transpose_nu_minus(const CovarianceMatrix& v) {
    const double det_a = v.block_minus().determinant();
    const double det_b = v.block_plus().determinant();
    const double det_c = v.block_cross().determinant();
    const double det_v = v.matrix().determinant();
    const double sigma = det_a + det_b - 2.0 * det_c;

    double disc = sigma * sigma - 4.0 * det_v;
    if (disc < -1e-12 * std::max(1.0, sigma * sigma)) {
        throw InvalidCovarianceError("logarithmic negativity: sigma^2 - 4 det V < 0");
    }
    disc = std::max(disc, 0.0);

    double nu_sq = 0.5 * sigma - 0.5 * std::sqrt(disc);
    if (nu_sq < 0.0 && nu_sq > -1e-12) nu_sq = 0.0;
    if (!(nu_sq > 0.0)) {
        throw InvalidCovarianceError("logarithmic negativity: partially transposed spectrum is not positive");
    }
    return std::sqrt(nu_sq);
}

double logarithmic_negativity(const CovarianceMatrix& v) {
    return std::max(0.0, -std::log(2.0 * partial_transpose_nu_minus(v)));
}

OnsetEstimates onset_estimates(const CircuitConfig& config, const ModePair& pair) {
    const double np = thermal_occupation(pair.plus(), config.temperature);
    const double nm = thermal_occupation(pair.minus(), config.temperature);
    const double coupling = (config.effective_length / config.line_speed) * std::sqrt(pair.plus() * pair.minus());
    return {
        0.5 * (np + nm) / coupling,
        2.0 / config.dimensionless_length() * std::sqrt(np * nm),
    };
}

QuadraticInvariants quadratic_invariants(const CovarianceMatrix& v) {
    const auto m = moments_from_covariance(v);
    const Complex z = 2.0 * (m.s_minus - m.s_plus) + Complex{0.0, 4.0} * m.w;
    QuadraticInvariants q;
    q.fdf_base = 2.0 * (m.n_minus + m.n_plus) + 4.0 * m.x.imag();
    q.fdf_pair_sq = std::norm(z);
    q.w_sq = std::norm(m.w);
    q.pt_sigma = v.block_minus().determinant() + v.block_plus().determinant() -
                 2.0 * v.block_cross().determinant();
    q.pt_discriminant = q.pt_sigma * q.pt_sigma - 4.0 * v.matrix().determinant();
    return q;
}

InvariantIndicators indicators_from_invariants(const QuadraticInvariants& q, const ModePair& pair, double weight) {
    InvariantIndicators out;
    out.fdf_min = q.fdf_base - std::sqrt(std::max(0.0, q.fdf_pair_sq));
    out.sigma2 = 4.0 * std::sqrt(pair.plus() * pair.minus()) * std::sqrt(std::max(0.0, q.w_sq)) / weight;
    const double nu_sq = 0.5 * (q.pt_sigma - std::sqrt(std::max(0.0, q.pt_discriminant)));
    out.logneg = nu_sq > 0.0 ? std::max(0.0, -0.5 * std::log(4.0 * nu_sq)) : std::numeric_limits<double>::infinity();
    return out;
}

namespace {

IndicatorReport assemble(const MomentSet& m, const CovarianceMatrix& v, const ModePair& pair) {
    IndicatorReport r;
    const auto fdf = fdf_min(m);
    r.fdf_min = fdf.value;
    r.theta_opt = fdf.theta_opt;
    const auto sq = two_mode_squeezing_optimal(m, pair);
    r.sigma2 = sq.value;
    r.phi_opt = sq.phi_opt;
    r.sigma2_threshold = sigma2_threshold(m, pair);
    r.logneg = logarithmic_negativity(v);
    r.nonclassical_by_fdf = r.fdf_min < 0.0;
    r.nonclassical_by_sigma2 = r.sigma2 > r.sigma2_threshold;
    r.entangled = r.logneg > 0.0;
    return r;
}

}  // namespace

IndicatorReport evaluate_indicators(const MomentSet& m, const ModePair& pair) {
    return assemble(m, covariance_matrix(m), pair);
}

IndicatorReport evaluate_indicators(const CovarianceMatrix& v, const ModePair& pair) {
    return assemble(moments_from_covariance(v), v, pair);
}

nlohmann::json to_json(const IndicatorReport& r) {
    return {
        {"fdf_min", r.fdf_min},
        {"theta_opt", r.theta_opt},
        {"sigma2", r.sigma2},
        {"phi_opt", r.phi_opt},
        {"sigma2_phi_convention", "optimal"},
        {"sigma2_threshold", r.sigma2_threshold},
        {"logneg", r.logneg},
        {"nonclassical_by_fdf", r.nonclassical_by_fdf},
        {"nonclassical_by_sigma2", r.nonclassical_by_sigma2},
        {"entangled", r.entangled},
    };
}

}  // namespace dce
