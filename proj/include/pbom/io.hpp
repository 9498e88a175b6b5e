#pragma once

// JSON config parsing/serialization and CSV output. Formats are frozen in
// docs/formats.md.

#include <string>
#include <vector>

#include <json.hpp>

#include "pbom/becmodel.hpp"
#include "pbom/sweep.hpp"

namespace pbom {

// Shortest round-trip decimal representation (locale independent).
std::string format_double(double x);

// Strict parse: unknown keys rejected, values type-checked.
PhysicalParams<double> params_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const PhysicalParams<double>& p);

SweepConfig sweep_config_from_json(const nlohmann::json& j);
nlohmann::json sweep_config_to_json(const SweepConfig& c);

FigurePreset figure_preset_from_json(const nlohmann::json& j);
nlohmann::json figure_preset_to_json(const FigurePreset& p);

// Parses JSON text, mapping parse failures to ConfigError with line/column
// diagnostics.
nlohmann::json parse_json_text(const std::string& text, const std::string& origin);
nlohmann::json load_json_file(const std::string& path);

// CSV with a header row; cells are format_double output, or verbatim strings
// for the optional trailing status column.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string to_string() const;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace pbom
