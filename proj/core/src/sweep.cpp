#include "dce/sweep.hpp"

#include "dce/config_io.hpp"
#include "dce/errors.hpp"
#include "dce/estimator.hpp"
#include "dce/parallel.hpp"

#include <cmath>
#include <string>

namespace dce {

std::string_view to_string(SweepVariable variable) noexcept {
    switch (variable) {
        case SweepVariable::epsilon: return "epsilon";
        case SweepVariable::temperature: return "temperature";
        case SweepVariable::detuning: return "detuning";
    }
    return "epsilon";
}

SweepVariable sweep_variable_from_string(std::string_view name) {
    if (name == "epsilon") return SweepVariable::epsilon;
    if (name == "temperature") return SweepVariable::temperature;
    if (name == "detuning") return SweepVariable::detuning;
    throw DomainError("unknown sweep variable '" + std::string(name) + "'");
}

void SweepSpec::validate() const {
    if (points < 2) throw DomainError("sweep: need at least 2 points");
    if (!(start < stop)) throw DomainError("sweep: start must be < stop");
    config.validate();
    switch (variable) {
        case SweepVariable::epsilon:
            if (start < 0.0 || stop >= 1.0) throw DomainError("sweep: epsilon range must lie in [0, 1)");
            break;
        case SweepVariable::temperature:
            if (start < 0.0) throw DomainError("sweep: temperature must be >= 0");
            break;
        case SweepVariable::detuning:
            if (start < 0.0 || stop >= 0.5) throw DomainError("sweep: detuning fraction must lie in [0, 0.5)");
            break;
    }
    if (variable != SweepVariable::detuning && (detuning_fraction < 0.0 || detuning_fraction >= 0.5)) {
        throw DomainError("sweep: detuning fraction must lie in [0, 0.5)");
    }
    if (!(noise_n_det >= 0.0)) throw DomainError("sweep: detector noise must be >= 0");
}

double SweepSpec::value(int index) const {
    if (index == points - 1) return stop;
    return start + (stop - start) * static_cast<double>(index) / static_cast<double>(points - 1);
}

PointResult evaluate_point(const CircuitConfig& config, double detuning_fraction, Method method, double noise_n_det) {
    const ModePair pair = mode_pair_from_fraction(config.drive_angular_frequency, detuning_fraction);
    PointResult r;
    r.lambda = modulation_parameter(config, pair);
    r.moments = output_moments(config, pair, method);
    r.covariance = covariance_matrix(r.moments);
    const CovarianceMatrix observed = noise_n_det > 0.0 ? inject_detector_noise(r.covariance, noise_n_det) : r.covariance;
    r.indicators = evaluate_indicators(observed, pair);
    return r;
}

const std::vector<std::string>& sweep_columns() {
    static const std::vector<std::string> columns = {
        "epsilon", "temperature_k", "detuning_frac", "lambda",
        "n_plus", "n_minus", "w_re", "w_im",
        "s_plus_re", "s_plus_im", "s_minus_re", "s_minus_im", "x_re", "x_im",
        "fdf_min", "theta_opt", "sigma2", "phi_opt", "sigma2_threshold", "logneg",
        "nonclassical_by_fdf", "nonclassical_by_sigma2", "entangled",
    };
    return columns;
}

Table run_sweep(const SweepSpec& spec) {
    spec.validate();
    Table table;
    table.columns = sweep_columns();
    table.rows.resize(static_cast<std::size_t>(spec.points));

    parallel_for(
        table.rows.size(),
        [&](std::size_t i) {
            const double value = spec.value(static_cast<int>(i));
            CircuitConfig config = spec.config;
            double detuning = spec.detuning_fraction;
            switch (spec.variable) {
                case SweepVariable::epsilon: config.epsilon = value; break;
                case SweepVariable::temperature: config.temperature = value; break;
                case SweepVariable::detuning: detuning = value; break;
            }
            PointResult r;
            try {
                r = evaluate_point(config, detuning, spec.method, spec.noise_n_det);
            } catch (const std::exception& e) {
                throw SweepError("sweep point " + std::to_string(i) + " (" + std::string(to_string(spec.variable)) +
                                     " = " + std::to_string(value) + ") failed: " + e.what(),
                                 i, value);
            }
            const auto& m = r.moments;
            const auto& ind = r.indicators;
            table.rows[i] = {
                config.epsilon, config.temperature, detuning, r.lambda,
                m.n_plus, m.n_minus, m.w.real(), m.w.imag(),
                m.s_plus.real(), m.s_plus.imag(), m.s_minus.real(), m.s_minus.imag(), m.x.real(), m.x.imag(),
                ind.fdf_min, ind.theta_opt, ind.sigma2, ind.phi_opt, ind.sigma2_threshold, ind.logneg,
                ind.nonclassical_by_fdf ? 1.0 : 0.0, ind.nonclassical_by_sigma2 ? 1.0 : 0.0, ind.entangled ? 1.0 : 0.0,
            };
        },
        spec.threads);

    table.metadata = {
        {"generator", "dcesim sweep"},
        {"version", std::string(kVersion)},
        {"config", config_to_json(spec.config)},
        {"sweep",
         {{"variable", std::string(to_string(spec.variable))},
          {"start", spec.start},
          {"stop", spec.stop},
          {"points", spec.points},
          {"detuning_frac", spec.detuning_fraction},
          {"method", std::string(to_string(spec.method))},
          {"noise_n_det", spec.noise_n_det}}},
        {"sigma2_phi", "optimal"},
        {"grid_order", "row-major, slowest variable first"},
    };
    return table;
}

}  // namespace dce
