#include "dce/model.hpp"

#include "dce/errors.hpp"

#include <cmath>
#include <string>

namespace dce {

void CircuitConfig::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw DomainError(std::string("invalid circuit config: ") + what);
    };
    require(std::isfinite(drive_angular_frequency) && drive_angular_frequency > 0.0,
            "drive frequency must be positive");
    require(std::isfinite(epsilon) && epsilon >= 0.0 && epsilon < 1.0,
            "epsilon must lie in [0, 1)");
    require(std::isfinite(temperature) && temperature >= 0.0, "temperature must be >= 0");
    require(std::isfinite(line_speed) && line_speed > 0.0, "line speed must be positive");
    require(std::isfinite(effective_length) && effective_length > 0.0,
            "effective length must be positive");
    require(std::isfinite(impedance) && impedance > 0.0, "impedance must be positive");
    require(truncation >= 1, "truncation must be >= 1");
    require(max_truncation >= truncation, "max_truncation must be >= truncation");
    require(std::isfinite(tolerance) && tolerance > 0.0, "tolerance must be positive");
    require(std::isfinite(dimensionless_length()), "L_eff * omega_d / v must be finite");
}

ModePair mode_pair(double drive_angular_frequency, double detuning) {
    if (!(drive_angular_frequency > 0.0) || !std::isfinite(drive_angular_frequency)) {
        throw DomainError("mode_pair: drive frequency must be positive");
    }
    if (!(detuning >= 0.0) || !(detuning < 0.5 * drive_angular_frequency)) {
        throw DomainError("mode_pair: detuning must satisfy 0 <= dw < w_d/2");
    }
    const double plus = 0.5 * drive_angular_frequency + detuning;
    // plus lies in [w_d/2, w_d), so this subtraction is exact (Sterbenz) and
    // plus + minus rounds back to w_d exactly.
    const double minus = drive_angular_frequency - plus;
    if (!(minus > 0.0)) {
        throw DomainError("mode_pair: lower frequency is not positive");
    }
    return ModePair(plus, minus, detuning);
}

double thermal_occupation(double angular_frequency, double temperature) {
    if (!(angular_frequency > 0.0)) {
        throw DomainError("thermal_occupation: frequency must be positive");
    }
    if (!(temperature >= 0.0)) {
        throw DomainError("thermal_occupation: temperature must be >= 0");
    }
    if (temperature == 0.0) return 0.0;
    const double x = kHbar * angular_frequency / (kBoltzmann * temperature);
    if (x > 700.0) return 0.0;
    return 1.0 / std::expm1(x);
}

double modulation_parameter(const CircuitConfig& config, const ModePair& pair) {
    return config.epsilon * (config.effective_length / config.line_speed) *
           std::sqrt(pair.plus() * pair.minus());
}

}  // namespace dce
