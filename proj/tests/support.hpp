#pragma once

// Shared helpers for the test suites: deterministic random model draws and
// the Fig. 2 reference parameter set.

#include <cmath>
#include <random>

#include "pbom/becmodel.hpp"
#include "pbom/dynamics.hpp"

namespace pbom::testing {

inline PhysicalParams<double> fig2_params() {
  PhysicalParams<double> p;
  p.Omega = 7e-4;
  p.kappa_ex = 1e-5;
  p.kappa_0 = 5e-5;
  p.gamma = 1e-8;
  p.g = 4.2e-7;
  p.N_t = 1e6;
  p.zeta = 4e-4;
  p.T = 150.0;
  p.T_m = 0.05;
  p.s = 2;
  p.delta_tilde = 7e-4;
  return p;
}

// A synthetic linear model with moderate rate ratios; not tied to any
// physical parameter chain. Useful for property tests where wildly separated
// time scales would only slow the oracles down.
inline LinearModel<double> random_model(std::mt19937_64& rng, bool force_stable = true) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    LinearModel<double> m;
    m.Omega = 0.5 + 1.5 * uni(rng);
    m.delta_tilde = (uni(rng) < 0.2 ? -1.0 : 1.0) * (0.2 + 1.8 * uni(rng)) * m.Omega;
    m.kappa_ex = 0.01 + 0.15 * uni(rng);
    m.kappa_0 = 0.01 + 0.15 * uni(rng);
    m.kappa = m.kappa_ex + m.kappa_0;
    m.gamma = 1e-3 + 0.1 * uni(rng);
    const double y = 100.0 * uni(rng);
    const double root = std::sqrt(1.0 + 2.0 * y);
    m.u = std::sqrt(0.5 * (1.0 + y) / root + 0.5);
    m.v = -std::sqrt(0.5 * (1.0 + y) / root - 0.5);
    m.omega_tilde = root;  // eps = 1
    m.N0 = 1e4 + 1e6 * uni(rng);
    m.n_th = 5.0 * uni(rng);
    m.n_c = 5.0 * uni(rng);
    m.g_bar = 0.6 * m.Omega * uni(rng);
    if (!force_stable) return m;
    if (stability(drift_matrix(m)).solvable()) return m;
  }
  throw std::runtime_error("random_model: no stable draw found");
}

}  // namespace pbom::testing
