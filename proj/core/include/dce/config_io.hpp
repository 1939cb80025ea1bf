#pragma once

#include "dce/model.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string_view>

namespace dce {

// Flat JSON config document. Recognized keys:
//   drive_frequency_hz, epsilon, temperature_k, line_speed_m_per_s,
//   effective_length_m, impedance_ohm, truncation, tolerance,
//   max_truncation, boundary_form ("josephson" | "linear").
// Keys absent from the document keep the value already in `base`.

CircuitConfig config_from_json(const nlohmann::json& doc, CircuitConfig base = {});
CircuitConfig load_config(const std::filesystem::path& path, CircuitConfig base = {});
nlohmann::json config_to_json(const CircuitConfig& config);

std::string_view to_string(BoundaryForm form) noexcept;
BoundaryForm boundary_form_from_string(std::string_view name);

}  // namespace dce
