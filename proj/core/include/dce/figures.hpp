#pragma once

#include "dce/model.hpp"
#include "dce/moments.hpp"
#include "dce/table.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace dce {

struct FigureOptions {
    CircuitConfig config;
    double detuning_fraction = 0.15;
    Method method = Method::numeric;

    // fig1a / fig1b / fig2: drive-amplitude axis
    int epsilon_points = 51;
    double epsilon_max = 0.5;
    int theta_points = 16;                 // θ grid over [0, 2π]
    double covariance_epsilon = 0.5;       // fig2 covariance snapshot

    // fig3: (T, δω) map
    double map_epsilon = 0.15;
    int map_points = 20;
    double temperature_max = 0.1;          // K, grid starts at 0
    double detuning_min = 0.025;           // δω / ω_d
    double detuning_max = 0.475;
    double noise_n_det = 0.0;              // detector noise for the one-σ contour
    std::size_t contour_samples = 1000000; // sample count behind the one-σ contour

    unsigned threads = 0;
};

struct Dataset {
    std::string name;
    Table table;
};

inline constexpr std::string_view kFigureIds[] = {"fig1a", "fig1b", "fig2", "fig3"};

/// Datasets behind one figure. Throws DomainError for an unknown id.
std::vector<Dataset> reproduce_figure(std::string_view id, const FigureOptions& options);

}  // namespace dce
