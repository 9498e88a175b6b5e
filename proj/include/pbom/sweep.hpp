#pragma once

// Scalar observables of the full pipeline evaluated over 1-D/2-D parameter
// grids, plus the built-in figure presets.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pbom/becmodel.hpp"

namespace pbom {

struct Axis {
  std::string name;            // a PhysicalParams field name
  std::vector<double> values;  // non-empty, finite
  bool operator==(const Axis&) const = default;
};

struct SweepConfig {
  PhysicalParams<double> base;
  Axis axis1;
  std::optional<Axis> axis2;
  std::vector<std::string> observables;
};

enum class PointStatus { ok, unstable, below_threshold, error };
std::string to_string(PointStatus s);

struct SweepPoint {
  std::vector<double> axis;    // axis1 value [, axis2 value]
  std::vector<double> values;  // one per observable; NaN where unavailable
  PointStatus status = PointStatus::ok;
  std::string error_code;      // non-empty when status == error
};

struct SweepResult {
  std::vector<std::string> axis_names;
  std::vector<std::string> observable_names;
  std::vector<SweepPoint> rows;  // grid order, axis1 major
};

// Closed set of sweepable parameter names (PhysicalParams fields).
const std::vector<std::string>& parameter_names();
void set_parameter(PhysicalParams<double>& p, const std::string& name, double value);
double get_parameter(const PhysicalParams<double>& p, const std::string& name);

// Supported observable names.
const std::vector<std::string>& observable_names();

// Evaluates every grid point independently; failed points are recorded in
// their row status, never aborting the sweep. Output is deterministic and
// identical for any worker count.
SweepResult run_sweep(const SweepConfig& config, int workers = 1);

// ---------------------------------------------------------------------------
// Figure presets
// ---------------------------------------------------------------------------

struct SpectrumRequest {
  std::string kind;  // displacement | output | squeezing | response
  double omega_min_over_Omega = 0.2;
  double omega_max_over_Omega = 1.8;
  int points = 2001;
  bool operator==(const SpectrumRequest&) const = default;
};

// How a sweep axis is reported in figure CSV files.
struct AxisOutput {
  std::string column;   // e.g. "T_over_omega_t", "delta_offset_over_Omega"
  double scale = 1.0;   // reported = (raw - offset) / scale
  double offset = 0.0;
  bool operator==(const AxisOutput&) const = default;
};

struct PresetCurve {
  std::string label;
  PhysicalParams<double> params;
};

struct FigurePreset {
  std::string name;
  std::optional<SpectrumRequest> spectrum;  // spectrum presets
  std::optional<Axis> axis;                 // sweep presets
  AxisOutput axis_output;
  std::vector<std::string> observables;
  std::vector<PresetCurve> curves;
};

const std::vector<std::string>& figure_preset_names();
FigurePreset figure_preset(const std::string& name);  // ConfigError for unknown names

// Worker-count default: PBOM_WORKERS environment variable, else 1.
int default_workers();

// Deterministic parallel index loop; results must go to disjoint slots.
void parallel_for_index(std::size_t n, int workers,
                        const std::function<void(std::size_t)>& body);

}  // namespace pbom
