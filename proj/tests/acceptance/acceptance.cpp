// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "dce/estimator.hpp"
#include "dce/figures.hpp"
#include "dce/indicators.hpp"
#include "dce/scattering.hpp"
#include "dce/sweep.hpp"

#include <Eigen/Core>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace dce;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

CircuitConfig defaults(double eps, double temperature = 0.05) {
    CircuitConfig c;
    c.epsilon = eps;
    c.temperature = temperature;
    return c;
}

ModePair pair_at(double frac) {
    return mode_pair_from_fraction(CircuitConfig{}.drive_angular_frequency, frac);
}

Table epsilon_sweep(double stop, int points, CircuitConfig base = {}, double frac = 0.15) {
    SweepSpec spec;
    spec.start = 0.0;
    spec.stop = stop;
    spec.points = points;
    spec.config = base;
    spec.detuning_fraction = frac;
    return run_sweep(spec);
}

// ε where `value − level` first changes sign, by linear interpolation.
double crossing(const Table& t, const std::function<double(std::size_t)>& value) {
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        const double a = value(i - 1), b = value(i);
        if ((a > 0) != (b > 0)) {
            const double ea = t.at(i - 1, "epsilon"), eb = t.at(i, "epsilon");
            return ea + (eb - ea) * a / (a - b);
        }
    }
    return std::nan("");
}

Outcome entanglement_onset() {
    const auto t = epsilon_sweep(0.2, 201);
    double first = std::nan("");
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (t.at(i, "logneg") > 0.0) {
            first = t.at(i, "epsilon");
            break;
        }
    }
    return {first >= 0.05 && first <= 0.07, fmt("first eps with N > 0 = %.4f (grid step 0.001), target [0.05, 0.07]", first)};
}

Outcome logneg_slope() {
    auto slope_at = [](double frac) {
        const auto hi = evaluate_point(defaults(0.01, 0.0), frac, Method::numeric).indicators.logneg;
        const auto lo = evaluate_point(defaults(0.005, 0.0), frac, Method::numeric).indicators.logneg;
        return (hi - lo) / 0.005;
    };
    const double target = CircuitConfig{}.dimensionless_length();
    const double near = slope_at(0.01);
    const double operating = slope_at(0.15);
    const double rel = std::abs(near - target) / target;
    return {rel <= 0.05, fmt("dN/deps = %.4f at dw/wd = 0.01 (rel. err %.2f%% vs %.2f); %.4f at dw/wd = 0.15",
                             near, 100 * rel, target, operating)};
}

Outcome squeezing_boundary() {
    const auto t = epsilon_sweep(0.5, 101);
    const double eps_b = crossing(t, [&](std::size_t i) { return t.at(i, "sigma2") - t.at(i, "sigma2_threshold"); });
    double lo = 1e9, hi = -1e9, at_boundary = std::nan("");
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double e = t.at(i, "epsilon"), th = t.at(i, "sigma2_threshold");
        if (e >= 0.06 && e <= 0.3) lo = std::min(lo, th), hi = std::max(hi, th);
        if (i > 0 && t.at(i - 1, "epsilon") <= eps_b && e >= eps_b) {
            const double w = (eps_b - t.at(i - 1, "epsilon")) / (e - t.at(i - 1, "epsilon"));
            at_boundary = (1 - w) * t.at(i - 1, "sigma2_threshold") + w * th;
        }
    }
    const bool pass = at_boundary >= 0.03 && at_boundary <= 0.05 && lo >= 0.03 && hi <= 0.05;
    return {pass, fmt("threshold %.4f at the sigma2 crossing (eps = %.4f); range %.4f..%.4f over eps in [0.06, 0.3]",
                      at_boundary, eps_b, lo, hi)};
}

Outcome nonclassicality_crossing() {
    const auto t = epsilon_sweep(0.3, 301);
    const double numeric = crossing(t, [&](std::size_t i) { return t.at(i, "fdf_min"); });
    const double star = onset_estimates(defaults(0.1), pair_at(0.15)).epsilon_star;
    const double rel = std::abs(numeric - star) / star;
    return {rel <= 0.2, fmt("numeric fdf_min crossing %.4f vs eps_star %.4f (rel. %.1f%%)", numeric, star, 100 * rel)};
}

Outcome unitarity() {
    double worst = 0.0;
    int rows = 0;
    for (double eps : {0.1, 0.3, 0.5}) {
        for (double frac : {0.05, 0.15, 0.3}) {
            const auto c = defaults(eps);
            const auto p = pair_at(frac);
            for (double w : {p.plus(), p.minus()}) {
                worst = std::max(worst, commutator_defect(solve_scattering(c, w)));
                ++rows;
            }
        }
    }
    return {worst < 1e-9, fmt("max commutator defect %.2e over %d converged rows", worst, rows)};
}

double relative_moment_error(const MomentSet& a, const MomentSet& ref) {
    double worst = std::abs(a.n_plus - ref.n_plus) / std::abs(ref.n_plus);
    worst = std::max(worst, std::abs(a.n_minus - ref.n_minus) / std::abs(ref.n_minus));
    worst = std::max(worst, std::abs(a.w - ref.w) / std::abs(ref.w));
    return worst;
}

double absolute_moment_error(const MomentSet& a, const MomentSet& ref) {
    return std::max({std::abs(a.n_plus - ref.n_plus), std::abs(a.n_minus - ref.n_minus), std::abs(a.w - ref.w)});
}

Outcome perturbative_equivalence() {
    const auto p = pair_at(0.15);
    bool within = true;
    double worst_ratio = 0.0, min_order = 1e9, prev_dev = 0.0;
    std::string orders;
    for (double eps : {0.02, 0.01, 0.005, 0.0025}) {
        const auto c = defaults(eps);
        const auto num = output_moments(c, p, Method::numeric);
        const auto pert = output_moments(c, p, Method::perturbative);
        const double lam = modulation_parameter(c, p);
        const double rel = relative_moment_error(num, pert);
        within = within && rel <= 3 * lam * lam;
        worst_ratio = std::max(worst_ratio, rel / (lam * lam));
        const double dev = absolute_moment_error(num, pert);
        if (prev_dev > 0) {
            const double order = std::log2(prev_dev / dev);
            min_order = std::min(min_order, order);
            orders += fmt("%s%.3f", orders.empty() ? "" : ",", order);
        }
        prev_dev = dev;
    }
    return {within && min_order >= 1.8,
            fmt("max rel. error / lambda^2 = %.3g (need <= 3); deviation orders on halving [%s] (need >= 1.8)",
                worst_ratio, orders.c_str())};
}

Outcome gaussian_oracles() {
    double worst = 0.0;
    for (double r : {0.1, 0.5, 1.0}) {
        Eigen::Matrix4d v = Eigen::Matrix4d::Zero();
        v.diagonal().setConstant(0.5 * std::cosh(2 * r));
        v(0, 2) = v(2, 0) = 0.5 * std::sinh(2 * r);
        v(1, 3) = v(3, 1) = -0.5 * std::sinh(2 * r);
        worst = std::max(worst, std::abs(logarithmic_negativity(CovarianceMatrix(v)) - 2 * r));
    }
    const double vac = logarithmic_negativity(CovarianceMatrix::vacuum());
    double thermal_min = 1e9;
    for (double temperature : {0.0, 0.02, 0.05, 0.1, 0.5}) {
        const auto c = defaults(0.0, temperature);
        thermal_min = std::min(thermal_min, fdf_min(output_moments(c, pair_at(0.15), Method::numeric)).value);
    }
    return {worst <= 1e-10 && vac == 0.0 && thermal_min >= 0.0,
            fmt("|N(TMSV) - 2r| max %.2e; N(vacuum) = %g; min thermal fdf_min = %.3e", worst, vac, thermal_min)};
}

Outcome region_containment() {
    FigureOptions opt;
    opt.map_points = 20;
    opt.map_epsilon = 0.15;
    const auto map = reproduce_figure("fig3", opt).front().table;
    int nonclassical = 0, entangled = 0, violations = 0;
    for (std::size_t i = 0; i < map.rows.size(); ++i) {
        const bool f = map.at(i, "neg_fdf_min") > 0.0;
        const bool n = map.at(i, "logneg") > 0.0;
        nonclassical += f;
        entangled += n;
        violations += f && !n;
    }
    return {violations == 0 && entangled > nonclassical && map.rows.size() == 400,
            fmt("%zu cells: fdf_min < 0 in %d, N > 0 in %d, fdf-only cells %d", map.rows.size(), nonclassical,
                entangled, violations)};
}

Outcome estimator_round_trip() {
    const auto pair = pair_at(0.15);
    const auto model = evaluate_point(defaults(0.3), 0.15, Method::numeric);
    const auto& truth = model.indicators;
    int fdf = 0, s2 = 0, th = 0, ln = 0;
    const int reps = 20;
    for (int k = 0; k < reps; ++k) {
        const auto records = sample_quadratures(model.covariance, 100000, 1000 + k);
        const auto rep = bootstrap_indicators(records, pair, 1000, 5000 + k);
        fdf += rep.fdf_min.contains(truth.fdf_min);
        s2 += rep.sigma2.contains(truth.sigma2);
        th += rep.sigma2_threshold.contains(truth.sigma2_threshold);
        ln += rep.logneg.contains(truth.logneg);
    }
    const int need = (6 * reps + 9) / 10;
    return {fdf >= need && s2 >= need && th >= need && ln >= need,
            fmt("one-sigma coverage over %d repetitions: fdf_min %d, sigma2 %d, threshold %d, logneg %d (need >= %d each)",
                reps, fdf, s2, th, ln, need)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
        {"entanglement onset", entanglement_onset},
        {"log-negativity slope", logneg_slope},
        {"sigma2 boundary", squeezing_boundary},
        {"nonclassicality crossing", nonclassicality_crossing},
        {"Bogoliubov unitarity", unitarity},
        {"perturbative-oracle equivalence", perturbative_equivalence},
        {"analytic Gaussian oracles", gaussian_oracles},
        {"region containment", region_containment},
        {"estimator round trip", estimator_round_trip},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.pass;
        std::printf("criterion %zu %-32s %s  %s  [%.2fs]\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failures);
    return failures == 0 ? 0 : 1;
}
