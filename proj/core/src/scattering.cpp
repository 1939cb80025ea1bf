#include "dce/scattering.hpp"

#include "dce/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

namespace dce {

namespace {

constexpr Complex kI{0.0, 1.0};

/// iⁿ for the quarter-period time shift.
Complex quarter_period_phase(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

/// −r(ω₀)* for the static reflection r = −(1 + iκ)/(1 − iκ).
Complex mirror_reference(double kappa) {
    const Complex r = -(1.0 + kI * kappa) / (1.0 - kI * kappa);
    return -std::conj(r);
}

std::optional<Complex> find_amplitude(const std::vector<SidebandAmplitude>& entries, double frequency) {
    for (const auto& entry : entries) {
        const double scale = std::max(std::abs(frequency), std::abs(entry.frequency));
        if (std::abs(entry.frequency - frequency) <= LadderIndexSet::kFrequencyTolerance * scale) {
            return entry.value;
        }
    }
    return std::nullopt;
}

ScatteringRow static_mirror_row(double output_frequency, int half_width) {
    ScatteringRow row;
    row.output_frequency = output_frequency;
    row.normal.push_back({0, output_frequency, Complex{-1.0, 0.0}});
    row.truncation = half_width;
    row.defect = 0.0;
    return row;
}

void check_output_frequency(const CircuitConfig& config, double output_frequency) {
    const double wd = config.drive_angular_frequency;
    const double tol = LadderIndexSet::kFrequencyTolerance * wd;
    if (!(output_frequency > tol) || !(output_frequency < wd - tol)) {
        throw DomainError("scattering: output frequency must lie strictly inside (0, w_d)");
    }
}

}  // namespace

LadderIndexSet::LadderIndexSet(double base_frequency, double drive_frequency, int half_width)
    : base_(base_frequency), drive_(drive_frequency), half_width_(half_width) {
    if (!(drive_frequency > 0.0)) throw DomainError("ladder: drive frequency must be positive");
    if (half_width < 1) throw DomainError("ladder: half width must be >= 1");
    const double tol = kFrequencyTolerance * drive_frequency;
    for (int n = -half_width; n <= half_width; ++n) {
        if (std::abs(frequency(n)) < tol) {
            throw DomainError("ladder: frequency " + std::to_string(n) +
                              " collides with zero (base frequency on the drive comb)");
        }
    }
}

LadderSystem build_ladder_system(const CircuitConfig& config, double base_frequency, int half_width) {
    config.validate();
    LadderIndexSet ladder(base_frequency, config.drive_angular_frequency, half_width);
    const int size = ladder.size();
    const double eps = config.epsilon;
    const double length_over_speed = config.effective_length / config.line_speed;

    std::vector<double> root(size), kappa(size);
    for (int n = -half_width; n <= half_width; ++n) {
        const double w = ladder.frequency(n);
        root[ladder.slot(n)] = std::sqrt(std::abs(w));
        kappa[ladder.slot(n)] = length_over_speed * w;
    }

    LadderSystem sys{ladder, {}, {}, {}, {}, {}, {}};
    sys.m_diag.resize(size);
    sys.r_diag.resize(size);
    sys.m_lower.resize(size - 1);
    sys.m_upper.resize(size - 1);
    sys.r_lower.resize(size - 1);
    sys.r_upper.resize(size - 1);

    for (int i = 0; i < size; ++i) {
        sys.m_diag[i] = 1.0 - kI * kappa[i];
        sys.r_diag[i] = -(1.0 + kI * kappa[i]);
    }
    for (int i = 0; i + 1 < size; ++i) {
        // Row i couples to i+1 (upper), row i+1 couples to i (lower).
        Complex up, down;
        if (config.boundary == BoundaryForm::josephson) {
            up = (eps / (2.0 * kI)) * (root[i] / root[i + 1]);
            down = -(eps / (2.0 * kI)) * (root[i + 1] / root[i]);
            sys.m_upper[i] = up;
            sys.r_upper[i] = -up;
            sys.m_lower[i] = down;
            sys.r_lower[i] = -down;
        } else {
            up = 0.5 * eps * (root[i] / root[i + 1]) * kappa[i + 1];
            down = -0.5 * eps * (root[i + 1] / root[i]) * kappa[i];
            sys.m_upper[i] = -up;
            sys.r_upper[i] = -up;
            sys.m_lower[i] = -down;
            sys.r_lower[i] = -down;
        }
    }
    return sys;
}

LadderSolution solve_ladder(const CircuitConfig& config, double base_frequency, int half_width) {
    const LadderSystem sys = build_ladder_system(config, base_frequency, half_width);
    const int size = sys.ladder.size();
    // Only row `out` of M⁻¹R is needed: solve Mᵀy = e_out once, then take Rᵀy.
    const TridiagonalLU lu_t(sys.m_upper, sys.m_diag, sys.m_lower);

    const int out = sys.ladder.slot(0);
    std::vector<Complex> y(size);
    y[out] = 1.0;
    lu_t.solve(y);
    LadderSolution sol{sys.ladder, std::vector<Complex>(size)};
    for (int j = 0; j < size; ++j) {
        Complex r = y[j] * sys.r_diag[j];
        if (j > 0) r += y[j - 1] * sys.r_upper[j - 1];
        if (j + 1 < size) r += y[j + 1] * sys.r_lower[j];
        sol.response[j] = r;
    }
    return sol;
}

std::optional<Complex> ScatteringRow::normal_at(double frequency) const {
    return find_amplitude(normal, frequency);
}

std::optional<Complex> ScatteringRow::anomalous_at(double frequency) const {
    return find_amplitude(anomalous, frequency);
}

double commutator_defect(const ScatteringRow& row) {
    double normal = 0.0, anomalous = 0.0;
    for (const auto& e : row.normal) normal += std::norm(e.value);
    for (const auto& e : row.anomalous) anomalous += std::norm(e.value);
    return std::abs(normal - anomalous - 1.0);
}

ScatteringRow solve_scattering_fixed(const CircuitConfig& config, double output_frequency, int half_width) {
    config.validate();
    check_output_frequency(config, output_frequency);
    if (config.epsilon == 0.0) {
        // Validates the ladder even though the static row is known exactly.
        LadderIndexSet(output_frequency, config.drive_angular_frequency, half_width);
        return static_mirror_row(output_frequency, half_width);
    }

    const LadderSolution sol = solve_ladder(config, output_frequency, half_width);
    const Complex reference =
        mirror_reference(config.effective_length / config.line_speed * output_frequency);

    ScatteringRow row;
    row.output_frequency = output_frequency;
    row.truncation = half_width;
    for (int n = -half_width; n <= half_width; ++n) {
        const Complex value = sol.response[sol.ladder.slot(n)] * reference * quarter_period_phase(n);
        if (value == Complex{}) continue;
        const double w = sol.ladder.frequency(n);
        if (w > 0.0) {
            row.normal.push_back({n, w, value});
        } else {
            row.anomalous.push_back({n, -w, value});
        }
    }
    row.defect = commutator_defect(row);
    return row;
}

ScatteringRow solve_scattering(const CircuitConfig& config, double output_frequency) {
    config.validate();
    check_output_frequency(config, output_frequency);
    if (config.epsilon == 0.0) return solve_scattering_fixed(config, output_frequency, config.truncation);

    auto dense = [](const ScatteringRow& row, int half_width) {
        std::vector<Complex> v(2 * half_width + 1);
        for (const auto& e : row.normal) v[e.index + half_width] = e.value;
        for (const auto& e : row.anomalous) v[e.index + half_width] = e.value;
        return v;
    };

    std::vector<TruncationStep> history;
    int width = config.truncation;
    ScatteringRow previous = solve_scattering_fixed(config, output_frequency, width);
    history.push_back({width, previous.defect, 0.0});

    while (2 * width <= config.max_truncation) {
        const int next_width = 2 * width;
        ScatteringRow next = solve_scattering_fixed(config, output_frequency, next_width);

        const auto a = dense(previous, next_width);
        const auto b = dense(next, next_width);
        double change = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) change = std::max(change, std::abs(a[i] - b[i]));
        const double defect_change = std::abs(next.defect - previous.defect);
        history.push_back({next_width, next.defect, change});

        if (change < config.tolerance && defect_change < config.tolerance &&
            next.defect < config.tolerance) {
            next.amplitude_change = change;
            return next;
        }
        previous = std::move(next);
        width = next_width;
    }
    throw ConvergenceError("scattering: ladder did not converge at w0 = " +
                               std::to_string(output_frequency) + " rad/s before N_max = " +
                               std::to_string(config.max_truncation),
                           std::move(history));
}

RowPair perturbative_amplitudes(const CircuitConfig& config, const ModePair& pair) {
    config.validate();
    const double lambda = modulation_parameter(config, pair);
    auto make = [&](double out, double partner) {
        ScatteringRow row;
        row.output_frequency = out;
        row.normal.push_back({0, out, Complex{-1.0, 0.0}});
        if (lambda != 0.0) row.anomalous.push_back({-1, partner, Complex{0.0, -lambda}});
        row.truncation = 1;
        row.defect = commutator_defect(row);
        return row;
    };
    return {make(pair.plus(), pair.minus()), make(pair.minus(), pair.plus())};
}

RowPair numeric_amplitudes(const CircuitConfig& config, const ModePair& pair) {
    return {solve_scattering(config, pair.plus()), solve_scattering(config, pair.minus())};
}

void write_ladder_matrix_market(const LadderSystem& system, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.precision(17);
    const int size = system.ladder.size();

    auto write = [&](const char* name, const std::vector<Complex>& lower, const std::vector<Complex>& diag,
                     const std::vector<Complex>& upper) {
        out << "%%MatrixMarket matrix coordinate complex general\n";
        out << "% " << name << " of M b = R a; row/column k is ladder index k - 1 - N\n";
        out << "% base_frequency_rad_s " << system.ladder.base() << " drive_rad_s "
            << system.ladder.drive() << " half_width " << system.ladder.half_width() << "\n";
        out << size << ' ' << size << ' ' << (3 * size - 2) << '\n';
        for (int i = 0; i < size; ++i) {
            if (i > 0) out << i + 1 << ' ' << i << ' ' << lower[i - 1].real() << ' ' << lower[i - 1].imag() << '\n';
            out << i + 1 << ' ' << i + 1 << ' ' << diag[i].real() << ' ' << diag[i].imag() << '\n';
            if (i + 1 < size) out << i + 1 << ' ' << i + 2 << ' ' << upper[i].real() << ' ' << upper[i].imag() << '\n';
        }
    };
    write("M", system.m_lower, system.m_diag, system.m_upper);
    write("R", system.r_lower, system.r_diag, system.r_upper);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace dce
