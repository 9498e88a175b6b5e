#pragma once

// In-memory rendering of figure presets to CSV + manifest; the CLI writes the
// results to disk. Kept in the library so determinism tests can compare bytes
// without touching the filesystem.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pbom/sweep.hpp"

namespace pbom {

struct FigureOutput {
  // filename -> file content, one entry per curve, in preset order
  std::vector<std::pair<std::string, std::string>> files;
  nlohmann::json manifest;
  std::string manifest_filename;
};

FigureOutput render_figure(const FigurePreset& preset, int workers);

// CSV for a plain sweep result: axis columns, observable columns, status.
std::string sweep_result_csv(const SweepResult& result);

}  // namespace pbom
