#include "dce/estimator.hpp"

#include "dce/errors.hpp"
#include "dce/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>

namespace dce {

namespace {

constexpr std::string_view kHeader[4] = {"i_minus", "q_minus", "i_plus", "q_plus"};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

double parse_number(std::string_view field, std::size_t line) {
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
        throw ParseError("line " + std::to_string(line) + ": cannot parse '" + std::string(field) + "' as a number",
                         line);
    }
    if (!std::isfinite(value)) {
        throw ParseError("line " + std::to_string(line) + ": non-finite value '" + std::string(field) + "'", line);
    }
    return value;
}

Quadratures json_quad(const nlohmann::json& doc, const char* key) {
    const auto& arr = doc.at(key);
    if (!arr.is_array() || arr.size() != 4) {
        throw ParseError(std::string("calibration '") + key + "' must be an array of 4 numbers", 0);
    }
    Quadratures q{};
    for (std::size_t i = 0; i < 4; ++i) {
        if (!arr[i].is_number()) throw ParseError(std::string("calibration '") + key + "' must hold numbers", 0);
        q[i] = arr[i].get<double>();
        if (!std::isfinite(q[i])) throw ParseError(std::string("calibration '") + key + "' must be finite", 0);
    }
    return q;
}

/// Sample covariance of the rows selected by `pick(k)` for k in [0, count).
template <typename Pick>
Eigen::Matrix4d sample_covariance(const std::vector<Quadratures>& rows, std::size_t count, Pick&& pick) {
    Eigen::Vector4d sum = Eigen::Vector4d::Zero();
    Eigen::Matrix4d outer = Eigen::Matrix4d::Zero();
    for (std::size_t k = 0; k < count; ++k) {
        const auto& r = rows[pick(k)];
        const Eigen::Vector4d x(r[0], r[1], r[2], r[3]);
        sum += x;
        outer.noalias() += x * x.transpose();
    }
    const double n = static_cast<double>(count);
    const Eigen::Vector4d mean = sum / n;
    return (outer - n * mean * mean.transpose()) / (n - 1.0);
}

IndicatorInterval summarize(double point, const std::vector<double>& values, double bias_corrected) {
    IndicatorInterval out;
    out.point = point;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size() > 1 ? values.size() - 1 : 1);
    out.mean = mean;
    out.stddev = std::sqrt(var);
    out.bias_corrected = bias_corrected;
    out.lower = std::min(point, bias_corrected) - out.stddev;
    out.upper = std::max(point, bias_corrected) + out.stddev;
    return out;
}

// 2 q̂ − mean(q*) for every invariant.
QuadraticInvariants debias(const QuadraticInvariants& point, const std::vector<QuadraticInvariants>& draws) {
    QuadraticInvariants mean;
    for (const auto& d : draws) {
        mean.fdf_base += d.fdf_base;
        mean.fdf_pair_sq += d.fdf_pair_sq;
        mean.w_sq += d.w_sq;
        mean.pt_sigma += d.pt_sigma;
        mean.pt_discriminant += d.pt_discriminant;
    }
    const double n = static_cast<double>(draws.size());
    return {
        2.0 * point.fdf_base - mean.fdf_base / n,
        2.0 * point.fdf_pair_sq - mean.fdf_pair_sq / n,
        2.0 * point.w_sq - mean.w_sq / n,
        2.0 * point.pt_sigma - mean.pt_sigma / n,
        2.0 * point.pt_discriminant - mean.pt_discriminant / n,
    };
}

nlohmann::json interval_json(const IndicatorInterval& i) {
    return {{"point", i.point}, {"mean", i.mean}, {"stddev", i.stddev}, {"bias_corrected", i.bias_corrected}, {"lower", i.lower}, {"upper", i.upper}};
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Calibration load_calibration(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open calibration file " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what(), 0);
    }
    Calibration cal;
    if (doc.contains("gain")) cal.gain = json_quad(doc, "gain");
    if (doc.contains("offset")) cal.offset = json_quad(doc, "offset");
    for (double g : cal.gain) {
        if (g == 0.0) throw ParseError("calibration gain must be nonzero", 0);
    }
    return cal;
}

QuadratureRecordSet parse_quadrature_records(std::istream& in, const Calibration& calibration) {
    QuadratureRecordSet set;
    set.calibration = calibration;
    std::string raw;
    std::size_t line = 0;
    bool have_header = false;
    while (std::getline(in, raw)) {
        ++line;
        const auto text = trim(raw);
        if (text.empty() || text.front() == '#') continue;
        const auto fields = split(text);
        if (!have_header) {
            bool ok = fields.size() == 4;
            for (std::size_t i = 0; ok && i < 4; ++i) ok = fields[i] == kHeader[i];
            if (!ok) {
                throw ParseError("line " + std::to_string(line) + ": expected header i_minus,q_minus,i_plus,q_plus",
                                 line);
            }
            have_header = true;
            continue;
        }
        if (fields.size() != 4) {
            throw ParseError("line " + std::to_string(line) + ": expected 4 columns, found " +
                                 std::to_string(fields.size()),
                             line);
        }
        Quadratures q{};
        for (std::size_t i = 0; i < 4; ++i) {
            q[i] = (parse_number(fields[i], line) - calibration.offset[i]) / calibration.gain[i];
        }
        set.samples.push_back(q);
    }
    if (!have_header) throw ParseError("missing header line", line);
    if (set.samples.size() < 2) throw ParseError("need at least 2 samples", line);
    return set;
}

QuadratureRecordSet load_quadrature_records(const std::filesystem::path& path,
                                            const std::optional<std::filesystem::path>& calibration) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open record file " + path.string());
    const Calibration cal = calibration ? load_calibration(*calibration) : Calibration{};
    return parse_quadrature_records(in, cal);
}

void write_quadrature_records(std::ostream& out, const QuadratureRecordSet& records) {
    out << "i_minus,q_minus,i_plus,q_plus\n";
    char buf[128];
    for (const auto& q : records.samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", q[0], q[1], q[2], q[3]);
        out << buf;
    }
}

void write_quadrature_records(const std::filesystem::path& path, const QuadratureRecordSet& records) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_quadrature_records(out, records);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

CovarianceEstimate estimate_covariance(const QuadratureRecordSet& records) {
    const std::size_t m = records.sample_count();
    if (m < 2) throw DegenerateDataError("estimate_covariance: need at least 2 samples");
    const Eigen::Matrix4d v = sample_covariance(records.samples, m, [](std::size_t k) { return k; });
    for (int i = 0; i < 4; ++i) {
        if (!(v(i, i) > 0.0)) {
            throw DegenerateDataError("estimate_covariance: channel " + std::to_string(i) + " has zero variance");
        }
    }
    CovarianceEstimate est{CovarianceMatrix(v), Eigen::Matrix4d::Zero(), m};
    const auto& s = est.covariance.matrix();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            est.standard_error(i, j) = std::sqrt((s(i, i) * s(j, j) + s(i, j) * s(i, j)) / static_cast<double>(m - 1));
        }
    }
    return est;
}

EstimateReport bootstrap_indicators(const QuadratureRecordSet& records, const ModePair& pair,
                                    std::size_t resamples, std::uint64_t seed, unsigned threads) {
    if (resamples < 100) throw DomainError("bootstrap_indicators: need at least 100 resamples");
    const auto full = estimate_covariance(records);
    const std::size_t m = records.sample_count();

    EstimateReport report;
    report.point = evaluate_indicators(full.covariance, pair);
    report.resamples = resamples;
    report.seed = seed;

    std::vector<IndicatorReport> draws(resamples);
    std::vector<QuadraticInvariants> invariants(resamples);
    parallel_for(
        resamples,
        [&](std::size_t k) {
            std::mt19937_64 rng(mix_seed(seed, k));
            std::uniform_int_distribution<std::size_t> pick(0, m - 1);
            const CovarianceMatrix v(sample_covariance(records.samples, m, [&](std::size_t) { return pick(rng); }));
            draws[k] = evaluate_indicators(v, pair);
            invariants[k] = quadratic_invariants(v);
        },
        threads);

    auto column = [&](auto member) {
        std::vector<double> values;
        values.reserve(draws.size());
        for (const auto& d : draws) values.push_back(d.*member);
        return values;
    };
    // fdf_min, σ₂ and 𝒩 take square roots of squared moduli whose sampling
    // noise is always positive; debias those before the root. The threshold
    // is smooth and gets the plain bootstrap correction.
    const auto moments = moments_from_covariance(full.covariance);
    const double weight = pair.plus() * (2.0 * moments.n_plus + 1.0) + pair.minus() * (2.0 * moments.n_minus + 1.0);
    const auto corrected =
        indicators_from_invariants(debias(quadratic_invariants(full.covariance), invariants), pair, weight);
    const auto thresholds = column(&IndicatorReport::sigma2_threshold);
    double threshold_mean = 0.0;
    for (double t : thresholds) threshold_mean += t;
    threshold_mean /= static_cast<double>(thresholds.size());

    report.fdf_min = summarize(report.point.fdf_min, column(&IndicatorReport::fdf_min), corrected.fdf_min);
    report.sigma2 = summarize(report.point.sigma2, column(&IndicatorReport::sigma2), corrected.sigma2);
    report.sigma2_threshold = summarize(report.point.sigma2_threshold, thresholds,
                                        2.0 * report.point.sigma2_threshold - threshold_mean);
    report.logneg = summarize(report.point.logneg, column(&IndicatorReport::logneg), corrected.logneg);
    return report;
}

CovarianceMatrix inject_detector_noise(const CovarianceMatrix& v, double n_det) {
    return inject_detector_noise(v, Quadratures{n_det, n_det, n_det, n_det});
}

CovarianceMatrix inject_detector_noise(const CovarianceMatrix& v, const Quadratures& n_det) {
    Eigen::Matrix4d out = v.matrix();
    for (int i = 0; i < 4; ++i) {
        if (!(n_det[i] >= 0.0) || !std::isfinite(n_det[i])) {
            throw DomainError("inject_detector_noise: noise must be finite and >= 0");
        }
        out(i, i) += n_det[i];
    }
    return CovarianceMatrix(out);
}

QuadratureRecordSet sample_quadratures(const CovarianceMatrix& v, std::size_t count, std::uint64_t seed) {
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(v.matrix());
    Eigen::Vector4d evals = eig.eigenvalues();
    if (evals.minCoeff() < -1e-12) throw DomainError("sample_quadratures: covariance is not positive semidefinite");
    evals = evals.cwiseMax(0.0);
    const Eigen::Matrix4d root = eig.eigenvectors() * evals.cwiseSqrt().asDiagonal() * eig.eigenvectors().transpose();

    QuadratureRecordSet set;
    set.samples.reserve(count);
    std::mt19937_64 rng(mix_seed(seed, 0));
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t k = 0; k < count; ++k) {
        Eigen::Vector4d z;
        for (int i = 0; i < 4; ++i) z[i] = normal(rng);
        const Eigen::Vector4d x = root * z;
        set.samples.push_back({x[0], x[1], x[2], x[3]});
    }
    return set;
}

IndicatorSpread indicator_standard_errors(const CovarianceMatrix& v, std::size_t count) {
    if (count < 2) throw DomainError("indicator_standard_errors: need at least 2 samples");
    const auto& base = v.matrix();

    std::vector<std::pair<int, int>> params;
    for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) params.emplace_back(i, j);
    }
    const std::size_t p = params.size();

    Eigen::MatrixXd sigma(p, p);
    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = 0; b < p; ++b) {
            const auto [i, j] = params[a];
            const auto [k, l] = params[b];
            sigma(a, b) = (base(i, k) * base(j, l) + base(i, l) * base(j, k)) / static_cast<double>(count);
        }
    }

    auto fdf = [&](const Eigen::Matrix4d& m) { return fdf_min(moments_from_covariance(CovarianceMatrix(m))).value; };
    auto neg_log = [&](const Eigen::Matrix4d& m) {
        return -std::log(2.0 * partial_transpose_nu_minus(CovarianceMatrix(m)));
    };

    constexpr double h = 1e-6;
    Eigen::VectorXd g_fdf(p), g_log(p);
    for (std::size_t a = 0; a < p; ++a) {
        const auto [i, j] = params[a];
        Eigen::Matrix4d up = base, down = base;
        up(i, j) += h;
        down(i, j) -= h;
        if (i != j) {
            up(j, i) += h;
            down(j, i) -= h;
        }
        g_fdf[a] = (fdf(up) - fdf(down)) / (2.0 * h);
        g_log[a] = (neg_log(up) - neg_log(down)) / (2.0 * h);
    }
    return {std::sqrt(std::max(0.0, g_fdf.dot(sigma * g_fdf))), std::sqrt(std::max(0.0, g_log.dot(sigma * g_log)))};
}

nlohmann::json to_json(const EstimateReport& r) {
    return {
        {"point", to_json(r.point)},
        {"fdf_min", interval_json(r.fdf_min)},
        {"sigma2", interval_json(r.sigma2)},
        {"sigma2_threshold", interval_json(r.sigma2_threshold)},
        {"logneg", interval_json(r.logneg)},
        {"resamples", r.resamples},
        {"seed", r.seed},
        {"interval", "point +/- bootstrap standard deviation"},
    };
}

nlohmann::json to_json(const CovarianceEstimate& e) {
    nlohmann::json out = to_json(e.covariance);
    std::vector<double> se;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) se.push_back(e.standard_error(i, j));
    }
    out["standard_error"] = se;
    out["sample_count"] = e.sample_count;
    return out;
}

}  // namespace dce
