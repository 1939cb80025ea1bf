#include "dce/moments.hpp"

#include "dce/errors.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <string>

namespace dce {

namespace {

double occupation(double frequency, double temperature) {
    return thermal_occupation(frequency, temperature);
}

bool same_frequency(double a, double b, double drive) {
    return std::abs(a - b) <= LadderIndexSet::kFrequencyTolerance * drive;
}

/// Σ over frequency-matched pairs of f(lhs, rhs, ν).
template <typename F>
Complex contract(const std::vector<SidebandAmplitude>& lhs, const std::vector<SidebandAmplitude>& rhs,
                 double drive, F&& term) {
    Complex sum{};
    for (const auto& l : lhs) {
        for (const auto& r : rhs) {
            if (same_frequency(l.frequency, r.frequency, drive)) sum += term(l.value, r.value, l.frequency);
        }
    }
    return sum;
}

}  // namespace

std::string_view to_string(Method method) noexcept {
    return method == Method::perturbative ? "perturbative" : "numeric";
}

Method method_from_string(std::string_view name) {
    if (name == "perturbative") return Method::perturbative;
    if (name == "numeric") return Method::numeric;
    throw DomainError("unknown method '" + std::string(name) + "'");
}

MomentSet moments_from_rows(const CircuitConfig& config, const RowPair& rows) {
    const double T = config.temperature;
    const double wd = config.drive_angular_frequency;
    const auto& p = rows.plus;
    const auto& m = rows.minus;

    auto flux = [&](const ScatteringRow& row) {
        double n = 0.0;
        for (const auto& e : row.normal) n += std::norm(e.value) * occupation(e.frequency, T);
        for (const auto& e : row.anomalous) n += std::norm(e.value) * (occupation(e.frequency, T) + 1.0);
        return n;
    };
    // ⟨(Σ α a + β a†)(Σ α' a + β' a†)⟩ = Σ α β' (n̄+1) + β α' n̄
    auto pairing = [&](const ScatteringRow& first, const ScatteringRow& second) {
        return contract(first.normal, second.anomalous, wd,
                        [&](Complex a, Complex b, double w) { return a * b * (occupation(w, T) + 1.0); }) +
               contract(first.anomalous, second.normal, wd,
                        [&](Complex b, Complex a, double w) { return b * a * occupation(w, T); });
    };
    // ⟨(Σ α a + β a†)† (Σ α' a + β' a†)⟩ = Σ α* α' n̄ + β* β' (n̄+1)
    auto mixing = [&](const ScatteringRow& first, const ScatteringRow& second) {
        return contract(first.normal, second.normal, wd,
                        [&](Complex a, Complex a2, double w) { return std::conj(a) * a2 * occupation(w, T); }) +
               contract(first.anomalous, second.anomalous, wd, [&](Complex b, Complex b2, double w) {
                   return std::conj(b) * b2 * (occupation(w, T) + 1.0);
               });
    };

    MomentSet out;
    out.n_plus = flux(p);
    out.n_minus = flux(m);
    out.w = pairing(p, m);
    out.s_plus = pairing(p, p);
    out.s_minus = pairing(m, m);
    out.x = mixing(p, m);
    return out;
}

MomentSet output_moments(const CircuitConfig& config, const ModePair& pair, Method method) {
    config.validate();
    if (method == Method::numeric) {
        return moments_from_rows(config, numeric_amplitudes(config, pair));
    }
    const double lambda = modulation_parameter(config, pair);
    const double np = occupation(pair.plus(), config.temperature);
    const double nm = occupation(pair.minus(), config.temperature);
    const double sum = 1.0 + np + nm;
    MomentSet out;
    out.n_plus = np + lambda * lambda * sum;
    out.n_minus = nm + lambda * lambda * sum;
    out.w = Complex{0.0, lambda * sum};
    return out;
}

CovarianceMatrix covariance_matrix(const MomentSet& m) {
    auto local = [](double n, Complex s) {
        Eigen::Matrix2d a;
        a << n + 0.5 + s.real(), s.imag(),
             s.imag(), n + 0.5 - s.real();
        return a;
    };
    Eigen::Matrix2d c;
    c << m.w.real() + m.x.real(), m.w.imag() - m.x.imag(),
         m.w.imag() + m.x.imag(), -m.w.real() + m.x.real();

    Eigen::Matrix4d v;
    v.topLeftCorner<2, 2>() = local(m.n_minus, m.s_minus);
    v.bottomRightCorner<2, 2>() = local(m.n_plus, m.s_plus);
    v.topRightCorner<2, 2>() = c;
    v.bottomLeftCorner<2, 2>() = c.transpose();
    return CovarianceMatrix(v);
}

MomentSet moments_from_covariance(const CovarianceMatrix& cov) {
    const auto& v = cov.matrix();
    MomentSet m;
    m.n_minus = 0.5 * (v(0, 0) + v(1, 1)) - 0.5;
    m.s_minus = {0.5 * (v(0, 0) - v(1, 1)), v(0, 1)};
    m.n_plus = 0.5 * (v(2, 2) + v(3, 3)) - 0.5;
    m.s_plus = {0.5 * (v(2, 2) - v(3, 3)), v(2, 3)};
    // C = [[ReW + ReX, ImW − ImX], [ImW + ImX, −ReW + ReX]]
    const double c00 = v(0, 2), c01 = v(0, 3), c10 = v(1, 2), c11 = v(1, 3);
    m.w = {0.5 * (c00 - c11), 0.5 * (c01 + c10)};
    m.x = {0.5 * (c00 + c11), 0.5 * (c10 - c01)};
    return m;
}

double pair_statistics(const MomentSet& m) {
    return m.n_plus * m.n_minus + std::norm(m.w) + std::norm(m.x);
}

std::array<double, 2> symplectic_eigenvalues(const CovarianceMatrix& v) {
    const double det_a = v.block_minus().determinant();
    const double det_b = v.block_plus().determinant();
    const double det_c = v.block_cross().determinant();
    const double det_v = v.matrix().determinant();
    const double delta = det_a + det_b + 2.0 * det_c;
    const double radicand = std::max(0.0, delta * delta - 4.0 * det_v);
    const double root = std::sqrt(radicand);
    const double lo = std::sqrt(std::max(0.0, 0.5 * (delta - root)));
    const double hi = std::sqrt(std::max(0.0, 0.5 * (delta + root)));
    return {lo, hi};
}

nlohmann::json to_json(const MomentSet& m) {
    return {
        {"n_plus", m.n_plus},        {"n_minus", m.n_minus},
        {"w_re", m.w.real()},        {"w_im", m.w.imag()},
        {"s_plus_re", m.s_plus.real()},   {"s_plus_im", m.s_plus.imag()},
        {"s_minus_re", m.s_minus.real()}, {"s_minus_im", m.s_minus.imag()},
        {"x_re", m.x.real()},        {"x_im", m.x.imag()},
    };
}

nlohmann::json to_json(const CovarianceMatrix& v) {
    std::vector<double> flat;
    flat.reserve(16);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) flat.push_back(v(i, j));
    }
    return {{"ordering", {"q_minus", "p_minus", "q_plus", "p_plus"}}, {"v", flat}};
}

MomentSet moment_set_from_json(const nlohmann::json& doc) {
    MomentSet m;
    m.n_plus = doc.at("n_plus").get<double>();
    m.n_minus = doc.at("n_minus").get<double>();
    m.w = {doc.at("w_re").get<double>(), doc.at("w_im").get<double>()};
    m.s_plus = {doc.at("s_plus_re").get<double>(), doc.at("s_plus_im").get<double>()};
    m.s_minus = {doc.at("s_minus_re").get<double>(), doc.at("s_minus_im").get<double>()};
    m.x = {doc.at("x_re").get<double>(), doc.at("x_im").get<double>()};
    return m;
}

CovarianceMatrix covariance_from_json(const nlohmann::json& doc) {
    const auto flat = doc.at("v").get<std::vector<double>>();
    if (flat.size() != 16) throw ParseError("covariance 'v' must have 16 entries", 0);
    Eigen::Matrix4d v;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) v(i, j) = flat[4 * i + j];
    }
    return CovarianceMatrix(v);
}

}  // namespace dce
