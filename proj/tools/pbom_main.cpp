// pbom — photon-BEC optomechanics simulator CLI.
//
// Subcommands: model, steady, spectrum, fig, sweep. Exit codes: 0 ok,
// 2 config error, 3 model-threshold error, 4 instability, 5 numerical error.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pbom/becmodel.hpp"
#include "pbom/dynamics.hpp"
#include "pbom/entanglement.hpp"
#include "pbom/errors.hpp"
#include "pbom/figures.hpp"
#include "pbom/io.hpp"
#include "pbom/spectra.hpp"
#include "pbom/sweep.hpp"

namespace {

using pbom::ConfigError;

void apply_set_overrides(pbom::PhysicalParams<double>& p,
                         const std::vector<std::string>& sets) {
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--set expects key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string val = kv.substr(eq + 1);
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(val, &used);
    } catch (const std::exception&) {
      throw ConfigError("--set " + key + ": value '" + val + "' is not a number");
    }
    if (used != val.size())
      throw ConfigError("--set " + key + ": value '" + val + "' is not a number");
    pbom::set_parameter(p, key, x);
  }
}

pbom::PhysicalParams<double> load_params(const std::string& config_path,
                                         const std::vector<std::string>& sets) {
  pbom::PhysicalParams<double> p;
  if (!config_path.empty()) p = pbom::params_from_json(pbom::load_json_file(config_path));
  apply_set_overrides(p, sets);
  return p;
}

std::string eigenvalue_string(const pbom::StabilityReport<double>& rep) {
  std::ostringstream os;
  for (int i = 0; i < 4; ++i) {
    if (i) os << ", ";
    os << pbom::format_double(rep.eigenvalues[i].real()) << (rep.eigenvalues[i].imag() < 0 ? "-" : "+")
       << pbom::format_double(std::abs(rep.eigenvalues[i].imag())) << "i";
  }
  return os.str();
}

void require_stable_or_throw(const pbom::LinearModel<double>& m) {
  const auto rep = pbom::stability(pbom::drift_matrix(m));
  if (!rep.solvable())
    throw pbom::StabilityError("model is not strictly stable; eigenvalues: " +
                               eigenvalue_string(rep));
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    pbom::write_text_file(out_path, content);
}

int cmd_model(const std::string& config, const std::vector<std::string>& sets,
              const std::string& out_path) {
  const auto p = load_params(config, sets);
  const auto m = pbom::build_linear_model(p);
  nlohmann::json j{{"N0", m.N0},
                   {"u", m.u},
                   {"v", m.v},
                   {"omega_tilde", m.omega_tilde},
                   {"g_bar", m.g_bar},
                   {"n_th", m.n_th},
                   {"n_c", m.n_c},
                   {"N_c", p.T > 0 ? pbom::critical_photon_number(p.T) : 0.0},
                   {"mode_degeneracy", pbom::mode_degeneracy(p.s)},
                   {"strong_coupling_ratio", 2.0 * m.g_bar / m.kappa},
                   {"params", pbom::params_to_json(p)}};
  emit(out_path, j.dump(2) + "\n");
  return 0;
}

int cmd_steady(const std::string& config, const std::vector<std::string>& sets,
               const std::string& out_path) {
  const auto p = load_params(config, sets);
  const auto m = pbom::build_linear_model(p);
  require_stable_or_throw(m);
  const auto A = pbom::drift_matrix(m);
  const auto rep = pbom::stability(A);
  const auto V = pbom::solve_lyapunov(A, pbom::diffusion_matrix(m));
  const auto Vp = pbom::cavity_basis_covariance(V, m.u, m.v);
  const auto occ = pbom::steady_state_occupations(V, Vp);
  const auto resp = pbom::mechanical_response(m, m.Omega);
  double T_eff = std::numeric_limits<double>::quiet_NaN();
  if (occ.n_phonon == 0.0)
    T_eff = 0.0;
  else if (!resp.frequency_softened)
    T_eff = pbom::effective_temperature(occ.n_phonon, std::sqrt(resp.Omega_eff_sq));
  auto eigs = nlohmann::json::array();
  for (const auto& ev : rep.eigenvalues) eigs.push_back({ev.real(), ev.imag()});
  nlohmann::json j{{"n_phonon", occ.n_phonon},
                   {"n_photon", occ.n_photon},
                   {"T_eff", T_eff},
                   {"T_eff_over_Tm", p.T_m > 0 ? T_eff / p.T_m : 0.0},
                   {"E_N", pbom::log_negativity(Vp)},
                   {"stable", true},
                   {"eigenvalues", eigs},
                   {"params", pbom::params_to_json(p)}};
  emit(out_path, j.dump(2) + "\n");
  return 0;
}

int cmd_spectrum(const std::string& kind, const std::string& config,
                 const std::vector<std::string>& sets, const std::string& out_path,
                 double omega_min, double omega_max, int points) {
  if (kind != "displacement" && kind != "output" && kind != "squeezing")
    throw ConfigError("spectrum kind must be displacement, output or squeezing");
  if (points < 2) throw ConfigError("--points must be >= 2");
  if (!(omega_max > omega_min)) throw ConfigError("--omega-max must exceed --omega-min");
  const auto p = load_params(config, sets);
  const auto m = pbom::build_linear_model(p);
  require_stable_or_throw(m);

  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i)
    grid[i] = m.Omega * (omega_min + (omega_max - omega_min) * i / double(points - 1));

  pbom::SpectrumSeries<double> series;
  if (kind == "displacement")
    series = pbom::displacement_spectrum(m, grid);
  else if (kind == "output")
    series = pbom::output_intensity_spectrum(m, grid);
  else
    series = pbom::squeezing_spectrum(m, grid);

  pbom::CsvTable t;
  t.header = {"omega_over_Omega"};
  for (const auto& [name, col] : series.columns) t.header.push_back(name);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<std::string> row{pbom::format_double(grid[i] / m.Omega)};
    for (const auto& [name, col] : series.columns) row.push_back(pbom::format_double(col[i]));
    t.rows.push_back(std::move(row));
  }
  emit(out_path, t.to_string());
  return 0;
}

int cmd_fig(const std::string& name, const std::string& out_dir, int workers) {
  const auto preset = pbom::figure_preset(name);
  const auto rendered = pbom::render_figure(preset, workers);
  std::filesystem::create_directories(out_dir.empty() ? "." : out_dir);
  const std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
  for (const auto& [file, content] : rendered.files)
    pbom::write_text_file((dir / file).string(), content);
  pbom::write_text_file((dir / rendered.manifest_filename).string(),
                        rendered.manifest.dump(2) + "\n");
  std::cerr << "wrote " << rendered.files.size() << " curves + manifest to " << dir.string()
            << "\n";
  return 0;
}

int cmd_sweep(const std::string& config, const std::vector<std::string>& sets,
              const std::string& out_path, int workers) {
  if (config.empty()) throw ConfigError("sweep requires --config");
  auto cfg = pbom::sweep_config_from_json(pbom::load_json_file(config));
  apply_set_overrides(cfg.base, sets);
  const auto result = pbom::run_sweep(cfg, workers);
  emit(out_path, pbom::sweep_result_csv(result));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pbom: steady state, spectra and entanglement of a photon-BEC optomechanical cavity"};
  app.require_subcommand(1);

  std::string config, out_path, kind, fig_name;
  std::vector<std::string> sets;
  double omega_min = 0.2, omega_max = 1.8;
  int points = 2001;
  int workers = pbom::default_workers();

  auto add_common = [&](CLI::App* sub, bool with_out = true) {
    sub->add_option("--config", config, "JSON parameter file");
    sub->add_option("--set", sets, "override parameter, key=value")->take_all();
    if (with_out) sub->add_option("--out", out_path, "output path (default: stdout)");
  };

  auto* model = app.add_subcommand("model", "derive and print the linear model");
  add_common(model);
  auto* steady = app.add_subcommand("steady", "steady-state occupations, T_eff, entanglement");
  add_common(steady);
  auto* spectrum = app.add_subcommand("spectrum", "spectra on a frequency grid (CSV)");
  add_common(spectrum);
  spectrum->add_option("--kind", kind, "displacement | output | squeezing")->required();
  spectrum->add_option("--omega-min", omega_min, "grid start, units Omega (default 0.2)");
  spectrum->add_option("--omega-max", omega_max, "grid end, units Omega (default 1.8)");
  spectrum->add_option("--points", points, "grid points (default 2001)");
  auto* fig = app.add_subcommand("fig", "emit CSV curves for a named figure preset");
  fig->add_option("name", fig_name, "preset name, e.g. fig2a")->required();
  fig->add_option("--out", out_path, "output directory (default: .)");
  fig->add_option("--workers", workers, "parallel workers (default: PBOM_WORKERS or 1)");
  auto* sweep = app.add_subcommand("sweep", "evaluate observables over a parameter grid (CSV)");
  add_common(sweep);
  sweep->add_option("--workers", workers, "parallel workers (default: PBOM_WORKERS or 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(pbom::ExitCode::config_error);
  }

  const auto guarded = [&](auto&& fn) -> int {
    try {
      return fn();
    } catch (const pbom::ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return static_cast<int>(pbom::ExitCode::config_error);
    } catch (const pbom::DomainError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return static_cast<int>(pbom::ExitCode::config_error);
    } catch (const pbom::ThresholdError& e) {
      std::cerr << "model error: " << e.what() << "\n";
      return static_cast<int>(pbom::ExitCode::threshold_error);
    } catch (const pbom::StabilityError& e) {
      std::cerr << "instability: " << e.what() << "\n";
      return static_cast<int>(pbom::ExitCode::stability_error);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return static_cast<int>(pbom::ExitCode::numerical_error);
    }
  };

  if (model->parsed()) return guarded([&] { return cmd_model(config, sets, out_path); });
  if (steady->parsed()) return guarded([&] { return cmd_steady(config, sets, out_path); });
  if (spectrum->parsed())
    return guarded([&] {
      return cmd_spectrum(kind, config, sets, out_path, omega_min, omega_max, points);
    });
  if (fig->parsed()) return guarded([&] { return cmd_fig(fig_name, out_path, workers); });
  if (sweep->parsed()) return guarded([&] { return cmd_sweep(config, sets, out_path, workers); });
  return 0;
}
