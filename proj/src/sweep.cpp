#include "pbom/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "pbom/dynamics.hpp"
#include "pbom/entanglement.hpp"
#include "pbom/errors.hpp"
#include "pbom/spectra.hpp"

namespace pbom {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}
}  // namespace

std::string to_string(PointStatus s) {
  switch (s) {
    case PointStatus::ok: return "ok";
    case PointStatus::unstable: return "unstable";
    case PointStatus::below_threshold: return "below-threshold";
    case PointStatus::error: return "error";
  }
  return "error";
}

const std::vector<std::string>& parameter_names() {
  static const std::vector<std::string> names = {
      "omega_t", "Omega", "kappa_ex", "kappa_0", "gamma",   "g",
      "N_t",     "zeta",  "T",        "T_m",     "s",       "delta_tilde"};
  return names;
}

void set_parameter(PhysicalParams<double>& p, const std::string& name, double value) {
  if (name == "omega_t") p.omega_t = value;
  else if (name == "Omega") p.Omega = value;
  else if (name == "kappa_ex") p.kappa_ex = value;
  else if (name == "kappa_0") p.kappa_0 = value;
  else if (name == "gamma") p.gamma = value;
  else if (name == "g") p.g = value;
  else if (name == "N_t") p.N_t = value;
  else if (name == "zeta") p.zeta = value;
  else if (name == "T") p.T = value;
  else if (name == "T_m") p.T_m = value;
  else if (name == "s") p.s = static_cast<int>(value);
  else if (name == "delta_tilde") p.delta_tilde = value;
  else throw ConfigError("unknown parameter name: " + name);
}

double get_parameter(const PhysicalParams<double>& p, const std::string& name) {
  if (name == "omega_t") return p.omega_t;
  if (name == "Omega") return p.Omega;
  if (name == "kappa_ex") return p.kappa_ex;
  if (name == "kappa_0") return p.kappa_0;
  if (name == "gamma") return p.gamma;
  if (name == "g") return p.g;
  if (name == "N_t") return p.N_t;
  if (name == "zeta") return p.zeta;
  if (name == "T") return p.T;
  if (name == "T_m") return p.T_m;
  if (name == "s") return p.s;
  if (name == "delta_tilde") return p.delta_tilde;
  throw ConfigError("unknown parameter name: " + name);
}

const std::vector<std::string>& observable_names() {
  static const std::vector<std::string> names = {
      "n_phonon",       "n_photon",   "T_eff",       "T_eff_over_Tm", "E_N",
      "stability",      "g_bar",      "omega_plus",  "omega_minus",   "n_th",
      "n_c",            "N0",         "u",           "v",             "omega_tilde",
      "gamma_eff_at_Omega", "Omega_eff_at_Omega"};
  return names;
}

namespace {

// Everything a single grid point can report.
struct PointEvaluation {
  PointStatus status = PointStatus::ok;
  std::string error_code;
  bool have_model = false;
  bool have_covariance = false;
  LinearModel<double> model;
  StabilityReport<double> report;
  SteadyOccupations<double> occ;
  double E_N = kNaN;
  double T_eff = kNaN;
  double omega_plus = kNaN, omega_minus = kNaN;
  double gamma_eff = kNaN, Omega_eff = kNaN;
};

PointEvaluation evaluate_point(const PhysicalParams<double>& params) {
  PointEvaluation ev;
  try {
    ev.model = build_linear_model(params);
    ev.have_model = true;
  } catch (const ThresholdError&) {
    ev.status = PointStatus::below_threshold;
    return ev;
  } catch (const std::exception& e) {
    ev.status = PointStatus::error;
    ev.error_code = e.what();
    return ev;
  }

  const auto A = drift_matrix(ev.model);
  ev.report = stability(A);
  if (ev.model.delta_tilde > 0 && ev.model.Omega > 0) {
    const auto nm = normal_mode_frequencies(ev.model);
    ev.omega_plus = nm.omega_plus.imag() == 0 ? nm.omega_plus.real() : kNaN;
    ev.omega_minus = nm.soft_mode ? kNaN : nm.omega_minus.real();
  }
  const auto resp = mechanical_response(ev.model, ev.model.Omega);
  ev.gamma_eff = resp.gamma_eff;
  ev.Omega_eff = resp.frequency_softened ? kNaN : std::sqrt(resp.Omega_eff_sq);

  if (!ev.report.solvable()) {
    ev.status = PointStatus::unstable;
    return ev;
  }
  try {
    const auto V = solve_lyapunov(A, diffusion_matrix(ev.model));
    const auto Vp = cavity_basis_covariance(V, ev.model.u, ev.model.v);
    ev.occ = steady_state_occupations(V, Vp);
    ev.have_covariance = true;
    ev.E_N = log_negativity(Vp);
    if (ev.occ.n_phonon > 0 && ev.Omega_eff > 0)
      ev.T_eff = effective_temperature(ev.occ.n_phonon, ev.Omega_eff);
    else if (ev.occ.n_phonon == 0)
      ev.T_eff = 0.0;
  } catch (const std::exception& e) {
    ev.status = PointStatus::error;
    ev.error_code = e.what();
  }
  return ev;
}

double extract_observable(const PointEvaluation& ev, const PhysicalParams<double>& params,
                          const std::string& name) {
  if (name == "stability") return ev.have_model ? (ev.report.solvable() ? 1.0 : 0.0) : kNaN;
  if (!ev.have_model) return kNaN;
  if (name == "g_bar") return ev.model.g_bar;
  if (name == "n_th") return ev.model.n_th;
  if (name == "n_c") return ev.model.n_c;
  if (name == "N0") return ev.model.N0;
  if (name == "u") return ev.model.u;
  if (name == "v") return ev.model.v;
  if (name == "omega_tilde") return ev.model.omega_tilde;
  if (name == "omega_plus") return ev.omega_plus;
  if (name == "omega_minus") return ev.omega_minus;
  if (name == "gamma_eff_at_Omega") return ev.gamma_eff;
  if (name == "Omega_eff_at_Omega") return ev.Omega_eff;
  if (!ev.have_covariance) return kNaN;
  if (name == "n_phonon") return ev.occ.n_phonon;
  if (name == "n_photon") return ev.occ.n_photon;
  if (name == "E_N") return ev.E_N;
  if (name == "T_eff") return ev.T_eff;
  if (name == "T_eff_over_Tm")
    return params.T_m > 0 ? ev.T_eff / params.T_m : kNaN;
  throw ConfigError("unknown observable: " + name);
}

void validate_axis(const Axis& axis) {
  const auto& names = parameter_names();
  if (std::find(names.begin(), names.end(), axis.name) == names.end())
    throw ConfigError("unknown sweep parameter: " + axis.name);
  if (axis.values.empty()) throw ConfigError("empty sweep axis: " + axis.name);
  for (double v : axis.values)
    if (!std::isfinite(v)) throw ConfigError("non-finite value in sweep axis: " + axis.name);
}

}  // namespace

void parallel_for_index(std::size_t n, int workers,
                        const std::function<void(std::size_t)>& body) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::size_t k = std::min<std::size_t>(workers, n);
  std::vector<std::thread> pool;
  pool.reserve(k);
  for (std::size_t t = 0; t < k; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += k) body(i);
    });
  for (auto& th : pool) th.join();
}

int default_workers() {
  if (const char* env = std::getenv("PBOM_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

SweepResult run_sweep(const SweepConfig& config, int workers) {
  validate_axis(config.axis1);
  if (config.axis2) validate_axis(*config.axis2);
  if (config.observables.empty()) throw ConfigError("sweep: no observables requested");
  {
    const auto& known = observable_names();
    for (const auto& obs : config.observables)
      if (std::find(known.begin(), known.end(), obs) == known.end())
        throw ConfigError("unknown observable: " + obs);
  }

  SweepResult out;
  out.axis_names.push_back(config.axis1.name);
  if (config.axis2) out.axis_names.push_back(config.axis2->name);
  out.observable_names = config.observables;

  const std::size_t n1 = config.axis1.values.size();
  const std::size_t n2 = config.axis2 ? config.axis2->values.size() : 1;
  out.rows.resize(n1 * n2);

  parallel_for_index(n1 * n2, workers, [&](std::size_t idx) {
    const std::size_t i1 = idx / n2, i2 = idx % n2;
    PhysicalParams<double> p = config.base;
    SweepPoint& row = out.rows[idx];
    row.axis.push_back(config.axis1.values[i1]);
    set_parameter(p, config.axis1.name, config.axis1.values[i1]);
    if (config.axis2) {
      row.axis.push_back(config.axis2->values[i2]);
      set_parameter(p, config.axis2->name, config.axis2->values[i2]);
    }
    const PointEvaluation ev = evaluate_point(p);
    row.status = ev.status;
    row.error_code = ev.error_code;
    row.values.reserve(config.observables.size());
    for (const auto& name : config.observables)
      row.values.push_back(extract_observable(ev, p, name));
  });
  return out;
}

// ---------------------------------------------------------------------------
// Figure presets
// ---------------------------------------------------------------------------

namespace {

PhysicalParams<double> fig2_base() {
  PhysicalParams<double> p;  // defaults are the fig2 set
  p.Omega = 7e-4;
  p.kappa_ex = 1e-5;
  p.kappa_0 = 5 * p.kappa_ex;
  p.gamma = 0.001 * p.kappa_ex;
  p.g = 4.2e-7;
  p.N_t = 1e6;
  p.zeta = 4e-4;
  p.T = 150.0;
  p.T_m = 0.05;
  p.s = 2;
  p.delta_tilde = p.Omega;
  return p;
}

PresetCurve curve(std::string label, PhysicalParams<double> p) {
  return PresetCurve{std::move(label), p};
}

}  // namespace

const std::vector<std::string>& figure_preset_names() {
  static const std::vector<std::string> names = {
      "fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b", "fig5",
      "fig6a", "fig6b", "fig7a", "fig7b", "fig7c", "fig8",  "fig9"};
  return names;
}

FigurePreset figure_preset(const std::string& name) {
  FigurePreset fp;
  fp.name = name;
  const PhysicalParams<double> base = fig2_base();

  auto with = [&](double zeta, double T, double g,
                  double delta = -1.0) {
    PhysicalParams<double> p = base;
    p.zeta = zeta;
    p.T = T;
    p.g = g;
    if (delta >= 0) p.delta_tilde = delta;
    return p;
  };

  if (name == "fig2a" || name == "fig3a" || name == "fig3b") {
    fp.spectrum = SpectrumRequest{name == "fig2a" ? "displacement" : "response", 0.2, 1.8, 2001};
    fp.curves = {curve("zeta4e-4", with(4e-4, 150, base.g)),
                 curve("zeta10e-4", with(10e-4, 150, base.g))};
  } else if (name == "fig2b") {
    fp.spectrum = SpectrumRequest{"displacement", 0.2, 1.8, 2001};
    fp.curves = {curve("T150", with(4e-4, 150, base.g)),
                 curve("T50", with(4e-4, 50, base.g))};
  } else if (name == "fig4a" || name == "fig4b") {
    fp.axis = Axis{"T", linspace(1.0, 150.0, 150)};
    fp.axis_output = AxisOutput{"T_over_omega_t", 1.0, 0.0};
    fp.observables = {name == "fig4a" ? "n_phonon" : "T_eff_over_Tm"};
    fp.curves = {curve("zeta4e-4", with(4e-4, 150, base.g)),
                 curve("zeta10e-4", with(10e-4, 150, base.g))};
  } else if (name == "fig5") {
    fp.axis = Axis{"T", linspace(1.0, 150.0, 150)};
    fp.axis_output = AxisOutput{"T_over_omega_t", 1.0, 0.0};
    fp.observables = {"n_photon"};
    fp.curves = {curve("zeta4e-4_g8.4e-7", with(4e-4, 150, 8.4e-7)),
                 curve("zeta10e-4_g8.4e-7", with(10e-4, 150, 8.4e-7)),
                 curve("zeta4e-4_g0", with(4e-4, 150, 0.0))};
  } else if (name == "fig6a") {
    fp.spectrum = SpectrumRequest{"output", 0.2, 1.8, 2001};
    fp.curves = {curve("zeta4e-4", with(4e-4, 150, 8.4e-7)),
                 curve("zeta10e-4", with(10e-4, 150, 8.4e-7))};
  } else if (name == "fig6b") {
    fp.spectrum = SpectrumRequest{"output", 0.2, 1.8, 2001};
    fp.curves = {curve("T150", with(4e-4, 150, 8.4e-7)),
                 curve("T50", with(4e-4, 50, 8.4e-7))};
  } else if (name == "fig7a") {
    fp.spectrum = SpectrumRequest{"squeezing", 0.0, 2.0, 2001};
    fp.curves = {curve("zeta4e-4", with(4e-4, 150, 8.4e-7)),
                 curve("zeta10e-4", with(10e-4, 150, 8.4e-7))};
  } else if (name == "fig7b") {
    fp.spectrum = SpectrumRequest{"squeezing", 0.0, 2.0, 2001};
    fp.curves = {curve("T150", with(4e-4, 150, 8.4e-7)),
                 curve("T50", with(4e-4, 50, 8.4e-7))};
  } else if (name == "fig7c") {
    fp.spectrum = SpectrumRequest{"squeezing", 0.0, 2.0, 2001};
    fp.curves = {curve("g8.4e-7", with(10e-4, 150, 8.4e-7)),
                 curve("g0", with(10e-4, 150, 0.0))};
  } else if (name == "fig8") {
    const double Om = base.Omega;
    std::vector<double> deltas;
    for (double off : linspace(-0.5, 3.0, 281)) deltas.push_back(Om * (1.0 + off));
    fp.axis = Axis{"delta_tilde", deltas};
    fp.axis_output = AxisOutput{"delta_offset_over_Omega", Om, Om};
    fp.observables = {"E_N"};
    fp.curves = {curve("zeta3e-4", with(3e-4, 1.5, 8.4e-7)),
                 curve("zeta4e-4", with(4e-4, 1.5, 8.4e-7)),
                 curve("zeta5e-4", with(5e-4, 1.5, 8.4e-7))};
  } else if (name == "fig9") {
    fp.axis = Axis{"T", linspace(0.5, 30.0, 60)};
    fp.axis_output = AxisOutput{"T_over_omega_t", 1.0, 0.0};
    fp.observables = {"E_N"};
    fp.curves = {curve("zeta3e-4", with(3e-4, 1.5, 8.4e-7, 0.8 * base.Omega)),
                 curve("zeta4e-4", with(4e-4, 1.5, 8.4e-7, 0.8 * base.Omega)),
                 curve("zeta5e-4", with(5e-4, 1.5, 8.4e-7, 0.8 * base.Omega))};
  } else {
    std::string valid;
    for (const auto& n : figure_preset_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw ConfigError("unknown figure preset '" + name + "'; valid presets: " + valid);
  }
  return fp;
}

}  // namespace pbom
