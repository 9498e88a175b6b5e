#include "pbom/figures.hpp"

#include <cmath>

#include "pbom/dynamics.hpp"
#include "pbom/errors.hpp"
#include "pbom/io.hpp"
#include "pbom/spectra.hpp"

namespace pbom {

namespace {

std::vector<double> preset_grid(const SpectrumRequest& req, double Omega) {
  std::vector<double> grid(req.points);
  for (int i = 0; i < req.points; ++i)
    grid[i] = Omega * (req.omega_min_over_Omega +
                       (req.omega_max_over_Omega - req.omega_min_over_Omega) *
                           static_cast<double>(i) / static_cast<double>(req.points - 1));
  return grid;
}

// Columns for the "response" kind: the effective mechanical damping and
// frequency versus probe frequency. Defined for unstable models too.
CsvTable response_csv(const LinearModel<double>& m, const std::vector<double>& grid) {
  CsvTable t;
  t.header = {"omega_over_Omega", "gamma_eff_over_gamma", "Omega_eff_over_Omega"};
  for (double w : grid) {
    const auto r = mechanical_response(m, w);
    const double oeff = r.frequency_softened ? -std::sqrt(-r.Omega_eff_sq)
                                             : std::sqrt(r.Omega_eff_sq);
    t.rows.push_back({format_double(w / m.Omega), format_double(r.gamma_eff / m.gamma),
                      format_double(oeff / m.Omega)});
  }
  return t;
}

CsvTable series_csv(const SpectrumSeries<double>& s, double Omega) {
  CsvTable t;
  t.header = {"omega_over_Omega"};
  for (const auto& [name, col] : s.columns) t.header.push_back(name);
  for (std::size_t i = 0; i < s.omega_grid.size(); ++i) {
    std::vector<std::string> row;
    row.push_back(format_double(s.omega_grid[i] / Omega));
    for (const auto& [name, col] : s.columns) row.push_back(format_double(col[i]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable spectrum_header_only(const std::string& kind) {
  CsvTable t;
  if (kind == "displacement")
    t.header = {"omega_over_Omega", "S_x_closed", "S_x_engine"};
  else if (kind == "output")
    t.header = {"omega_over_Omega", "S_out", "S_out_sym", "S_out_engine"};
  else if (kind == "squeezing")
    t.header = {"omega_over_Omega", "S_opt_scan", "S_opt_printed", "phi_opt"};
  else
    t.header = {"omega_over_Omega"};
  return t;
}

}  // namespace

std::string sweep_result_csv(const SweepResult& result) {
  CsvTable t;
  t.header = result.axis_names;
  t.header.insert(t.header.end(), result.observable_names.begin(),
                  result.observable_names.end());
  t.header.push_back("status");
  for (const auto& row : result.rows) {
    std::vector<std::string> cells;
    for (double a : row.axis) cells.push_back(format_double(a));
    for (double v : row.values) cells.push_back(format_double(v));
    cells.push_back(row.status == PointStatus::error ? "error:" + row.error_code
                                                     : to_string(row.status));
    t.rows.push_back(std::move(cells));
  }
  return t.to_string();
}

FigureOutput render_figure(const FigurePreset& preset, int workers) {
  FigureOutput out;
  out.manifest_filename = preset.name + "_manifest.json";
  nlohmann::json curves = nlohmann::json::array();

  for (const auto& curve : preset.curves) {
    const std::string filename = preset.name + "_" + curve.label + ".csv";
    nlohmann::json entry{{"label", curve.label},
                         {"file", filename},
                         {"params", params_to_json(curve.params)}};
    std::string content;
    std::string status = "ok";

    if (preset.spectrum) {
      const auto& req = *preset.spectrum;
      LinearModel<double> model;
      try {
        model = build_linear_model(curve.params);
      } catch (const ThresholdError& e) {
        status = "below-threshold";
        content = spectrum_header_only(req.kind).to_string();
        entry["status"] = status;
        entry["error"] = e.what();
        curves.push_back(entry);
        out.files.emplace_back(filename, std::move(content));
        continue;
      }
      const auto grid = preset_grid(req, model.Omega);
      if (req.kind == "response") {
        content = response_csv(model, grid).to_string();
      } else {
        try {
          SpectrumSeries<double> series;
          if (req.kind == "displacement")
            series = displacement_spectrum(model, grid);
          else if (req.kind == "output")
            series = output_intensity_spectrum(model, grid);
          else if (req.kind == "squeezing")
            series = squeezing_spectrum(model, grid);
          else
            throw ConfigError("unknown spectrum kind: " + req.kind);
          content = series_csv(series, model.Omega).to_string();
        } catch (const StabilityError&) {
          status = "unstable";
          content = spectrum_header_only(req.kind).to_string();
          const auto rep = stability(drift_matrix(model));
          auto eigs = nlohmann::json::array();
          for (const auto& ev : rep.eigenvalues)
            eigs.push_back({ev.real(), ev.imag()});
          entry["eigenvalues"] = eigs;
        }
      }
    } else if (preset.axis) {
      SweepConfig cfg;
      cfg.base = curve.params;
      cfg.axis1 = *preset.axis;
      cfg.observables = preset.observables;
      const SweepResult res = run_sweep(cfg, workers);
      CsvTable t;
      t.header = {preset.axis_output.column};
      t.header.insert(t.header.end(), res.observable_names.begin(),
                      res.observable_names.end());
      t.header.push_back("status");
      for (const auto& row : res.rows) {
        std::vector<std::string> cells;
        cells.push_back(format_double((row.axis[0] - preset.axis_output.offset) /
                                      preset.axis_output.scale));
        for (double v : row.values) cells.push_back(format_double(v));
        cells.push_back(row.status == PointStatus::error ? "error:" + row.error_code
                                                         : to_string(row.status));
        t.rows.push_back(std::move(cells));
      }
      content = t.to_string();
      bool any_ok = false, any_bad = false;
      for (const auto& row : res.rows)
        (row.status == PointStatus::ok ? any_ok : any_bad) = true;
      if (any_bad) status = any_ok ? "partial" : to_string(res.rows.front().status);
    } else {
      throw ConfigError("figure preset '" + preset.name + "' has no spectrum or axis");
    }

    entry["status"] = status;
    curves.push_back(entry);
    out.files.emplace_back(filename, std::move(content));
  }

  nlohmann::json manifest{{"figure", preset.name}, {"curves", curves}};
  if (preset.spectrum)
    manifest["spectrum"] = {{"kind", preset.spectrum->kind},
                            {"omega_min_over_Omega", preset.spectrum->omega_min_over_Omega},
                            {"omega_max_over_Omega", preset.spectrum->omega_max_over_Omega},
                            {"points", preset.spectrum->points}};
  if (preset.axis)
    manifest["axis"] = {{"name", preset.axis->name},
                        {"points", preset.axis->values.size()},
                        {"column", preset.axis_output.column}};
  auto files = nlohmann::json::array();
  for (const auto& [name, content] : out.files) {
    (void)content;
    files.push_back(name);
  }
  manifest["files"] = files;
  out.manifest = manifest;
  return out;
}

}  // namespace pbom
