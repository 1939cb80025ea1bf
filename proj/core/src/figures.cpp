#include "dce/figures.hpp"

#include "dce/config_io.hpp"
#include "dce/errors.hpp"
#include "dce/estimator.hpp"
#include "dce/indicators.hpp"
#include "dce/parallel.hpp"
#include "dce/sweep.hpp"

#include <cmath>
#include <numbers>

namespace dce {

namespace {

double grid_value(double lo, double hi, int points, int i) {
    if (i == points - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
}

nlohmann::json base_metadata(std::string_view id, const FigureOptions& o) {
    return {
        {"generator", "dcesim figure"},
        {"figure", std::string(id)},
        {"version", std::string(kVersion)},
        {"config", config_to_json(o.config)},
        {"detuning_frac", o.detuning_fraction},
        {"method", std::string(to_string(o.method))},
        {"sigma2_phi", "optimal"},
    };
}

/// Moments along the ε axis, evaluated in parallel, stored in grid order.
std::vector<PointResult> epsilon_axis(const FigureOptions& o) {
    if (o.epsilon_points < 2) throw DomainError("figure: need at least 2 epsilon points");
    std::vector<PointResult> out(static_cast<std::size_t>(o.epsilon_points));
    parallel_for(
        out.size(),
        [&](std::size_t i) {
            CircuitConfig config = o.config;
            config.epsilon = grid_value(0.0, o.epsilon_max, o.epsilon_points, static_cast<int>(i));
            try {
                out[i] = evaluate_point(config, o.detuning_fraction, o.method);
            } catch (const std::exception& e) {
                throw SweepError("figure point epsilon = " + std::to_string(config.epsilon) + " failed: " + e.what(), i,
                                 config.epsilon);
            }
        },
        o.threads);
    return out;
}

double epsilon_at(const FigureOptions& o, std::size_t i) {
    return grid_value(0.0, o.epsilon_max, o.epsilon_points, static_cast<int>(i));
}

std::vector<Dataset> figure_1a(const FigureOptions& o) {
    const auto axis = epsilon_axis(o);
    Table family, optimal;
    family.columns = {"epsilon", "theta", "fdf"};
    optimal.columns = {"epsilon", "fdf_theta0", "fdf_min", "theta_opt"};
    for (std::size_t i = 0; i < axis.size(); ++i) {
        const double eps = epsilon_at(o, i);
        for (int k = 0; k <= o.theta_points; ++k) {
            const double theta = 2.0 * std::numbers::pi * k / o.theta_points;
            family.rows.push_back({eps, theta, fdf_theta(axis[i].moments, theta)});
        }
        optimal.rows.push_back({eps, fdf_theta(axis[i].moments, 0.0), axis[i].indicators.fdf_min,
                                axis[i].indicators.theta_opt});
    }
    family.metadata = base_metadata("fig1a", o);
    family.metadata["theta_points"] = o.theta_points;
    optimal.metadata = base_metadata("fig1a", o);
    return {{"fig1a", std::move(family)}, {"fig1a_optimal", std::move(optimal)}};
}

std::vector<Dataset> figure_1b(const FigureOptions& o) {
    const auto axis = epsilon_axis(o);
    Table t;
    t.columns = {"epsilon", "sigma2", "phi_opt", "sigma2_threshold", "nonclassical_by_sigma2"};
    for (std::size_t i = 0; i < axis.size(); ++i) {
        const auto& r = axis[i].indicators;
        t.rows.push_back({epsilon_at(o, i), r.sigma2, r.phi_opt, r.sigma2_threshold, r.nonclassical_by_sigma2 ? 1.0 : 0.0});
    }
    t.metadata = base_metadata("fig1b", o);
    return {{"fig1b", std::move(t)}};
}

std::vector<Dataset> figure_2(const FigureOptions& o) {
    const auto axis = epsilon_axis(o);
    Table t;
    t.columns = {"epsilon", "logneg"};
    for (std::size_t i = 0; i < axis.size(); ++i) t.rows.push_back({epsilon_at(o, i), axis[i].indicators.logneg});

    const ModePair pair = mode_pair_from_fraction(o.config.drive_angular_frequency, o.detuning_fraction);
    const auto onset = onset_estimates(o.config, pair);
    t.metadata = base_metadata("fig2", o);
    t.metadata["epsilon_zero_estimate"] = onset.epsilon_zero;

    CircuitConfig snapshot = o.config;
    snapshot.epsilon = o.covariance_epsilon;
    const auto point = evaluate_point(snapshot, o.detuning_fraction, o.method);
    Table cov;
    cov.columns = {"row", "q_minus", "p_minus", "q_plus", "p_plus"};
    for (int i = 0; i < 4; ++i) {
        cov.rows.push_back({static_cast<double>(i), point.covariance(i, 0), point.covariance(i, 1),
                            point.covariance(i, 2), point.covariance(i, 3)});
    }
    cov.metadata = base_metadata("fig2", o);
    cov.metadata["epsilon"] = o.covariance_epsilon;
    cov.metadata["ordering"] = {"q_minus", "p_minus", "q_plus", "p_plus"};
    return {{"fig2", std::move(t)}, {"fig2_covariance", std::move(cov)}};
}

std::vector<Dataset> figure_3(const FigureOptions& o) {
    if (o.map_points < 2) throw DomainError("figure: need at least 2 map points");
    const int n = o.map_points;
    Table t;
    t.columns = {"temperature_k", "detuning_frac", "neg_fdf_min", "logneg", "fdf_min_se", "logneg_se",
                 "fdf_one_sigma", "logneg_one_sigma"};
    t.rows.resize(static_cast<std::size_t>(n) * n);

    parallel_for(
        t.rows.size(),
        [&](std::size_t idx) {
            const int it = static_cast<int>(idx) / n;
            const int id = static_cast<int>(idx) % n;
            CircuitConfig config = o.config;
            config.epsilon = o.map_epsilon;
            config.temperature = grid_value(0.0, o.temperature_max, n, it);
            const double detuning = grid_value(o.detuning_min, o.detuning_max, n, id);
            PointResult point;
            try {
                point = evaluate_point(config, detuning, o.method);
            } catch (const std::exception& e) {
                throw SweepError("fig3 cell (" + std::to_string(it) + ", " + std::to_string(id) + ") failed: " + e.what(),
                                 idx, config.temperature);
            }
            const ModePair pair = mode_pair_from_fraction(config.drive_angular_frequency, detuning);
            const CovarianceMatrix observed = inject_detector_noise(point.covariance, o.noise_n_det);
            const auto spread = indicator_standard_errors(observed, o.contour_samples);
            const double observed_fdf = evaluate_indicators(observed, pair).fdf_min;
            const double observed_log = -std::log(2.0 * partial_transpose_nu_minus(observed));
            t.rows[idx] = {
                config.temperature, detuning, -point.indicators.fdf_min, point.indicators.logneg,
                spread.fdf_min, spread.logneg,
                -observed_fdf > spread.fdf_min ? 1.0 : 0.0, observed_log > spread.logneg ? 1.0 : 0.0,
            };
        },
        o.threads);

    t.metadata = base_metadata("fig3", o);
    t.metadata["epsilon"] = o.map_epsilon;
    t.metadata["grid_order"] = "row-major, temperature slowest";
    t.metadata["contour_model"] = {
        {"noise_n_det", o.noise_n_det},
        {"samples", o.contour_samples},
        {"description", "additive uncorrelated classical quadrature noise; delta-method standard errors"},
    };
    return {{"fig3", std::move(t)}};
}

}  // namespace

std::vector<Dataset> reproduce_figure(std::string_view id, const FigureOptions& options) {
    options.config.validate();
    if (id == "fig1a") return figure_1a(options);
    if (id == "fig1b") return figure_1b(options);
    if (id == "fig2") return figure_2(options);
    if (id == "fig3") return figure_3(options);
    throw DomainError("unknown figure id '" + std::string(id) + "' (expected fig1a, fig1b, fig2, fig3)");
}

}  // namespace dce
