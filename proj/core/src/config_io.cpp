#include "dce/config_io.hpp"

#include "dce/errors.hpp"

#include <fstream>
#include <numbers>
#include <string>

namespace dce {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double number(const nlohmann::json& value, const std::string& key) {
    if (!value.is_number()) throw ParseError("config key '" + key + "' must be a number", 0);
    return value.get<double>();
}

int integer(const nlohmann::json& value, const std::string& key) {
    if (!value.is_number_integer()) {
        throw ParseError("config key '" + key + "' must be an integer", 0);
    }
    return value.get<int>();
}

}  // namespace

std::string_view to_string(BoundaryForm form) noexcept {
    switch (form) {
        case BoundaryForm::josephson: return "josephson";
        case BoundaryForm::linear: return "linear";
    }
    return "josephson";
}

BoundaryForm boundary_form_from_string(std::string_view name) {
    if (name == "josephson") return BoundaryForm::josephson;
    if (name == "linear") return BoundaryForm::linear;
    throw ParseError("unknown boundary_form '" + std::string(name) + "'", 0);
}

CircuitConfig config_from_json(const nlohmann::json& doc, CircuitConfig base) {
    if (!doc.is_object()) throw ParseError("config document must be a JSON object", 0);
    for (const auto& [key, value] : doc.items()) {
        if (key == "drive_frequency_hz") {
            base.drive_angular_frequency = kTwoPi * number(value, key);
        } else if (key == "epsilon") {
            base.epsilon = number(value, key);
        } else if (key == "temperature_k") {
            base.temperature = number(value, key);
        } else if (key == "line_speed_m_per_s") {
            base.line_speed = number(value, key);
        } else if (key == "effective_length_m") {
            base.effective_length = number(value, key);
        } else if (key == "impedance_ohm") {
            base.impedance = number(value, key);
        } else if (key == "truncation") {
            base.truncation = integer(value, key);
        } else if (key == "max_truncation") {
            base.max_truncation = integer(value, key);
        } else if (key == "tolerance") {
            base.tolerance = number(value, key);
        } else if (key == "boundary_form") {
            if (!value.is_string()) throw ParseError("config key 'boundary_form' must be a string", 0);
            base.boundary = boundary_form_from_string(value.get<std::string>());
        } else {
            throw ParseError("unknown config key '" + key + "'", 0);
        }
    }
    base.validate();
    return base;
}

CircuitConfig load_config(const std::filesystem::path& path, CircuitConfig base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what(), 0);
    }
    return config_from_json(doc, base);
}

nlohmann::json config_to_json(const CircuitConfig& config) {
    return {
        {"drive_frequency_hz", config.drive_angular_frequency / kTwoPi},
        {"epsilon", config.epsilon},
        {"temperature_k", config.temperature},
        {"line_speed_m_per_s", config.line_speed},
        {"effective_length_m", config.effective_length},
        {"impedance_ohm", config.impedance},
        {"truncation", config.truncation},
        {"max_truncation", config.max_truncation},
        {"tolerance", config.tolerance},
        {"boundary_form", std::string(to_string(config.boundary))},
    };
}

}  // namespace dce
