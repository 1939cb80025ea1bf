#include "dce/table.hpp"

#include "dce/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dce {

namespace {

std::string format_number(double v) {
    if (!std::isfinite(v)) throw std::runtime_error("emit: non-finite value in table");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double rounded(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

}  // namespace

std::size_t Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    throw std::out_of_range("table has no column '" + std::string(name) + "'");
}

std::string_view to_string(OutputFormat format) noexcept { return format == OutputFormat::csv ? "csv" : "json"; }

OutputFormat output_format_from_string(std::string_view name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw DomainError("unknown output format '" + std::string(name) + "'");
}

std::string render(const Table& table, OutputFormat format) {
    std::ostringstream out;
    if (format == OutputFormat::csv) {
        out << "# metadata: " << table.metadata.dump() << '\n';
        for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
        out << '\n';
        for (const auto& row : table.rows) {
            if (row.size() != table.columns.size()) throw std::runtime_error("emit: ragged table row");
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
            out << '\n';
        }
        return out.str();
    }

    nlohmann::ordered_json doc;
    doc["metadata"] = nlohmann::ordered_json::parse(table.metadata.dump());
    doc["columns"] = table.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) throw std::runtime_error("emit: ragged table row");
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = rounded(row[i]);
        doc["rows"].push_back(std::move(obj));
    }
    out << doc.dump(2) << '\n';
    return out.str();
}

void emit(const Table& table, OutputFormat format, const std::filesystem::path& path) {
    const std::string text = render(table, format);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

Table read_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    Table table;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        const auto doc = nlohmann::json::parse(text);
        table.metadata = doc.at("metadata");
        table.columns = doc.at("columns").get<std::vector<std::string>>();
        for (const auto& obj : doc.at("rows")) {
            std::vector<double> row;
            for (const auto& c : table.columns) row.push_back(obj.at(c).get<double>());
            table.rows.push_back(std::move(row));
        }
        return table;
    }

    std::istringstream lines(text);
    std::string line;
    std::size_t number = 0;
    bool header = false;
    while (std::getline(lines, line)) {
        ++number;
        if (line.empty()) continue;
        if (line.front() == '#') {
            constexpr std::string_view tag = "# metadata: ";
            if (line.rfind(tag, 0) == 0) table.metadata = nlohmann::json::parse(line.substr(tag.size()));
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!header) {
            table.columns = std::move(fields);
            header = true;
            continue;
        }
        if (fields.size() != table.columns.size()) throw ParseError("ragged CSV row", number);
        std::vector<double> row;
        for (const auto& f : fields) {
            char* end = nullptr;
            row.push_back(std::strtod(f.c_str(), &end));
            if (end == f.c_str()) throw ParseError("bad number '" + f + "'", number);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace dce
