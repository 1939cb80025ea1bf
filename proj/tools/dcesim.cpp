// dcesim: parameter sweeps, figure datasets, single-point indicators and
// quadrature-record analysis for the driven SQUID waveguide.

#include "dce/config_io.hpp"
#include "dce/errors.hpp"
#include "dce/estimator.hpp"
#include "dce/figures.hpp"
#include "dce/indicators.hpp"
#include "dce/scattering.hpp"
#include "dce/sweep.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CommonOptions {
    std::optional<std::string> config_path;
    std::optional<double> epsilon;
    std::optional<double> temperature;
    std::optional<std::string> boundary;
    double detuning_frac = 0.15;
    std::string method = "numeric";
    std::string format = "csv";
    std::optional<std::string> output;
    std::uint64_t seed = 0;
    double noise_n_det = 0.0;
    std::optional<std::string> dump_ladder;
    unsigned threads = 0;
};

void add_common(CLI::App& app, CommonOptions& o) {
    app.add_option("--config", o.config_path, "JSON config file (CLI flags take precedence)");
    app.add_option("--epsilon", o.epsilon, "Normalized drive amplitude in [0, 1)");
    app.add_option("--temperature-k", o.temperature, "Input-field temperature in kelvin");
    app.add_option("--detuning-frac", o.detuning_frac, "Symmetric detuning dw / w_d in [0, 0.5)");
    app.add_option("--boundary-form", o.boundary, "josephson (default) or linear");
    app.add_option("--method", o.method, "numeric or perturbative")->check(CLI::IsMember({"numeric", "perturbative"}));
    app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output", o.output, "Output path (stdout when omitted; a directory for `figure`)");
    app.add_option("--seed", o.seed, "Random seed");
    app.add_option("--noise-n-det", o.noise_n_det, "Detector noise added to every quadrature variance");
    app.add_option("--dump-ladder", o.dump_ladder, "Write the ladder system at w_- in MatrixMarket form");
    app.add_option("--threads", o.threads, "Worker threads (0 = hardware concurrency)");
}

dce::CircuitConfig resolve_config(const CommonOptions& o) {
    dce::CircuitConfig config;
    if (o.config_path) config = dce::load_config(*o.config_path);
    if (o.epsilon) config.epsilon = *o.epsilon;
    if (o.temperature) config.temperature = *o.temperature;
    if (o.boundary) config.boundary = dce::boundary_form_from_string(*o.boundary);
    config.validate();
    return config;
}

void maybe_dump_ladder(const CommonOptions& o, const dce::CircuitConfig& config) {
    if (!o.dump_ladder) return;
    const auto pair = dce::mode_pair_from_fraction(config.drive_angular_frequency, o.detuning_frac);
    dce::write_ladder_matrix_market(dce::build_ladder_system(config, pair.minus(), config.truncation), *o.dump_ladder);
}

void write_text(const std::optional<std::string>& path, const std::string& text) {
    if (!path) {
        std::cout << text;
        return;
    }
    std::FILE* f = std::fopen(path->c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open " + *path + " for writing");
    const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
    std::fclose(f);
    if (!ok) throw std::runtime_error("failed writing " + *path);
}

std::string indicator_table(const dce::PointResult& r, const dce::ModePair& pair, const dce::CircuitConfig& config) {
    const auto& ind = r.indicators;
    const auto onset = dce::onset_estimates(config, pair);
    char buf[2048];
    std::snprintf(buf, sizeof buf,
                  "%-24s %.12g\n%-24s %.12g\n%-24s %.12g\n%-24s %.12g\n%-24s %.12g\n%-24s %.12g\n"
                  "%-24s %.12g\n%-24s %.12g\n%-24s %.12g\n%-24s %.12g\n%-24s %.12g\n"
                  "%-24s %s\n%-24s %s\n%-24s %s\n%-24s %.12g\n%-24s %.12g\n",
                  "epsilon", config.epsilon, "temperature_k", config.temperature, "lambda", r.lambda,
                  "n_plus", r.moments.n_plus, "n_minus", r.moments.n_minus,
                  "fdf_min", ind.fdf_min, "theta_opt", ind.theta_opt,
                  "sigma2", ind.sigma2, "phi_opt", ind.phi_opt,
                  "sigma2_threshold", ind.sigma2_threshold, "logneg", ind.logneg,
                  "nonclassical_by_fdf", ind.nonclassical_by_fdf ? "yes" : "no",
                  "nonclassical_by_sigma2", ind.nonclassical_by_sigma2 ? "yes" : "no",
                  "entangled", ind.entangled ? "yes" : "no",
                  "epsilon_star_estimate", onset.epsilon_star, "epsilon_zero_estimate", onset.epsilon_zero);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamical Casimir radiation from a SQUID-terminated waveguide: scattering, moments, "
                 "nonclassicality and entanglement indicators"};
    app.require_subcommand(1);

    CommonOptions common;

    auto* sweep = app.add_subcommand("sweep", "Sweep one parameter and tabulate moments and indicators");
    add_common(*sweep, common);
    std::string variable = "epsilon";
    double start = 0.0, stop = 0.5;
    int points = 6;
    sweep->add_option("--variable", variable, "epsilon, temperature or detuning")
        ->check(CLI::IsMember({"epsilon", "temperature", "detuning"}));
    sweep->add_option("--start", start, "First grid value");
    sweep->add_option("--stop", stop, "Last grid value");
    sweep->add_option("--points", points, "Number of grid points (>= 2)");

    auto* figure = app.add_subcommand("figure", "Write the datasets behind one figure");
    add_common(*figure, common);
    std::string figure_id;
    int figure_points = 0;
    std::size_t contour_samples = 1000000;
    figure->add_option("id", figure_id, "fig1a, fig1b, fig2 or fig3")->required();
    figure->add_option("--points", figure_points, "Epsilon points (fig1a/1b/2) or map side (fig3)");
    figure->add_option("--samples", contour_samples, "Sample count behind the fig3 one-sigma contour");

    auto* indicators = app.add_subcommand("indicators", "Evaluate every indicator at a single point");
    add_common(*indicators, common);

    auto* estimate = app.add_subcommand("estimate", "Analyse a quadrature record file with bootstrap intervals");
    add_common(*estimate, common);
    std::string records_path;
    std::optional<std::string> calibration_path;
    std::size_t resamples = 1000;
    estimate->add_option("records", records_path, "CSV with header i_minus,q_minus,i_plus,q_plus")->required();
    estimate->add_option("--calibration", calibration_path, "JSON sidecar with per-channel gain/offset");
    estimate->add_option("--bootstrap", resamples, "Bootstrap resamples (>= 100)");

    auto* sample = app.add_subcommand("sample", "Draw synthetic quadrature records from the model covariance");
    add_common(*sample, common);
    std::size_t sample_count = 100000;
    bool vacuum = false;
    sample->add_option("--samples", sample_count, "Number of samples");
    sample->add_flag("--vacuum", vacuum, "Sample the vacuum instead of the model state");

    CLI11_PARSE(app, argc, argv);

    try {
        const auto config = resolve_config(common);
        const auto method = dce::method_from_string(common.method);
        const auto format = dce::output_format_from_string(common.format);
        maybe_dump_ladder(common, config);

        if (sweep->parsed()) {
            dce::SweepSpec spec;
            spec.variable = dce::sweep_variable_from_string(variable);
            spec.start = start;
            spec.stop = stop;
            spec.points = points;
            spec.config = config;
            spec.detuning_fraction = common.detuning_frac;
            spec.method = method;
            spec.noise_n_det = common.noise_n_det;
            spec.threads = common.threads;
            const auto table = dce::run_sweep(spec);
            write_text(common.output, dce::render(table, format));
        } else if (figure->parsed()) {
            dce::FigureOptions options;
            options.config = config;
            options.detuning_fraction = common.detuning_frac;
            options.method = method;
            options.noise_n_det = common.noise_n_det;
            options.contour_samples = contour_samples;
            options.threads = common.threads;
            if (figure_points > 0) {
                options.epsilon_points = figure_points;
                options.map_points = figure_points;
            }
            const fs::path dir = common.output.value_or(".");
            fs::create_directories(dir);
            for (const auto& dataset : dce::reproduce_figure(figure_id, options)) {
                const fs::path path = dir / (dataset.name + "." + common.format);
                dce::emit(dataset.table, format, path);
                std::cout << path.string() << '\n';
            }
        } else if (indicators->parsed()) {
            const auto pair = dce::mode_pair_from_fraction(config.drive_angular_frequency, common.detuning_frac);
            const auto result = dce::evaluate_point(config, common.detuning_frac, method, common.noise_n_det);
            if (format == dce::OutputFormat::json) {
                nlohmann::json doc = {
                    {"config", dce::config_to_json(config)},
                    {"detuning_frac", common.detuning_frac},
                    {"method", common.method},
                    {"noise_n_det", common.noise_n_det},
                    {"lambda", result.lambda},
                    {"moments", dce::to_json(result.moments)},
                    {"covariance", dce::to_json(result.covariance)},
                    {"indicators", dce::to_json(result.indicators)},
                };
                write_text(common.output, doc.dump(2) + "\n");
            } else {
                write_text(common.output, indicator_table(result, pair, config));
            }
        } else if (estimate->parsed()) {
            const auto pair = dce::mode_pair_from_fraction(config.drive_angular_frequency, common.detuning_frac);
            std::optional<fs::path> cal;
            if (calibration_path) cal = *calibration_path;
            const auto records = dce::load_quadrature_records(records_path, cal);
            const auto cov = dce::estimate_covariance(records);
            const auto report = dce::bootstrap_indicators(records, pair, resamples, common.seed, common.threads);
            nlohmann::json doc = {
                {"records", records_path},
                {"sample_count", records.sample_count()},
                {"detuning_frac", common.detuning_frac},
                {"version", std::string(dce::kVersion)},
                {"covariance", dce::to_json(cov)},
                {"indicators", dce::to_json(report)},
            };
            write_text(common.output, doc.dump(2) + "\n");
        } else if (sample->parsed()) {
            dce::CovarianceMatrix v;
            if (!vacuum) v = dce::evaluate_point(config, common.detuning_frac, method).covariance;
            if (common.noise_n_det > 0.0) v = dce::inject_detector_noise(v, common.noise_n_det);
            const auto records = dce::sample_quadratures(v, sample_count, common.seed);
            std::ostringstream out;
            out << "# dcesim " << dce::kVersion << " sample seed=" << common.seed
                << (vacuum ? " vacuum" : "") << " config=" << dce::config_to_json(config).dump()
                << " detuning_frac=" << common.detuning_frac << '\n';
            dce::write_quadrature_records(out, records);
            write_text(common.output, out.str());
        }
    } catch (const dce::ConvergenceError& e) {
        std::cerr << "dcesim: " << e.what() << '\n';
        for (const auto& step : e.history()) {
            std::cerr << "  N=" << step.half_width << " defect=" << step.commutator_defect
                      << " change=" << step.max_amplitude_change << '\n';
        }
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "dcesim: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
