#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dce {

/// Rectangular numeric result set with a self-describing metadata block.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    nlohmann::json metadata = nlohmann::json::object();

    /// Index of a named column; throws std::out_of_range if absent.
    std::size_t column(std::string_view name) const;
    double at(std::size_t row, std::string_view name) const { return rows.at(row).at(column(name)); }
};

enum class OutputFormat { csv, json };

std::string_view to_string(OutputFormat format) noexcept;
OutputFormat output_format_from_string(std::string_view name);

/// Numbers are written with 12 significant digits. CSV carries the metadata
/// as `#` comment lines above the header; JSON wraps rows as
/// {"metadata": …, "columns": […], "rows": [{…}, …]}.
std::string render(const Table& table, OutputFormat format);
void emit(const Table& table, OutputFormat format, const std::filesystem::path& path);

/// Reads back a file produced by emit (either format).
Table read_table(const std::filesystem::path& path);

}  // namespace dce
