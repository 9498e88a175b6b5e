#pragma once

// Derivation of the effective linear photon-BEC/membrane model.
//
// Everything is computed in trap units: hbar = k_B = 1 and omega_t = 1, so
// rates and frequencies are multiples of the trap frequency and temperatures
// are k_B T / (hbar omega_t).

#include <cmath>
#include <string>

#include "pbom/errors.hpp"

namespace pbom {

inline constexpr double speed_of_light = 299792458.0;  // m/s

// User-facing physical inputs. All rates in units of omega_t.
template <class Scalar = double>
struct PhysicalParams {
  Scalar omega_t = Scalar(1);      // absolute trap frequency (rad/s), reporting only
  Scalar Omega = Scalar(7e-4);     // mechanical frequency
  Scalar kappa_ex = Scalar(1e-5);  // input-mirror decay rate
  Scalar kappa_0 = Scalar(5e-5);   // internal loss rate
  Scalar gamma = Scalar(1e-8);     // mechanical damping rate
  Scalar g = Scalar(4.2e-7);       // bare single-photon optomechanical coupling
  Scalar N_t = Scalar(1e6);        // total photon number
  Scalar zeta = Scalar(4e-4);      // dimensionless photon-photon interaction
  Scalar T = Scalar(150);          // photon-gas temperature
  Scalar T_m = Scalar(0.05);       // mechanical bath temperature
  int s = 2;                       // transverse mode index, >= 2
  Scalar delta_tilde = Scalar(7e-4);  // effective detuning (any sign)

  void validate() const {
    if (!(omega_t >= Scalar(0)) || !(Omega >= Scalar(0)) ||
        !(kappa_ex >= Scalar(0)) || !(kappa_0 >= Scalar(0)) ||
        !(g >= Scalar(0)) || !(T >= Scalar(0)) || !(T_m >= Scalar(0)) ||
        !(zeta >= Scalar(0)))
      throw DomainError("PhysicalParams: rates, frequencies, temperatures and zeta must be >= 0");
    if (!(N_t >= Scalar(1))) throw DomainError("PhysicalParams: N_t must be >= 1");
    if (s < 2) throw DomainError("PhysicalParams: transverse mode index s must be >= 2");
    if (!(kappa_ex + kappa_0 > Scalar(0)))
      throw DomainError("PhysicalParams: kappa_ex + kappa_0 must be > 0 (steady state needs dissipation)");
    if (!(gamma > Scalar(0)))
      throw DomainError("PhysicalParams: gamma must be > 0 (steady state needs dissipation)");
  }
};

// The five-rate linear system everything downstream consumes.
template <class Scalar = double>
struct LinearModel {
  Scalar kappa_ex{}, kappa_0{}, kappa{};  // kappa = kappa_ex + kappa_0
  Scalar gamma{};
  Scalar Omega{};
  Scalar delta_tilde{};
  Scalar g_bar{};        // effective coupling 2 sqrt(N0) g (u+v)
  Scalar u{}, v{};       // Bogoliubov coefficients, u^2 - v^2 = 1, v <= 0
  Scalar n_th{};         // thermal occupation of the Bogoliubov mode
  Scalar n_c{};          // thermal occupation of the mechanical bath
  Scalar N0{};           // condensate population
  Scalar omega_tilde{};  // Bogoliubov excitation frequency
};

// omega_t = c / sqrt(R L / 2) for mirror curvature R and cavity length L,
// in rad/s. Sets *warn_nonparaxial when L > R/10 (informational only).
template <class Scalar>
Scalar trap_frequency(Scalar R, Scalar L, bool* warn_nonparaxial = nullptr) {
  if (!(R > Scalar(0)) || !(L > Scalar(0)))
    throw DomainError("trap_frequency: R and L must be > 0");
  if (warn_nonparaxial) *warn_nonparaxial = (L > R / Scalar(10));
  return Scalar(speed_of_light) / std::sqrt(R * L / Scalar(2));
}

// Transverse excitation energy of mode s relative to the condensate mode,
// eps_s = (s - 1) in units hbar omega_t.
template <class Scalar = double>
Scalar transverse_excitation_energy(int s) {
  if (s < 1) throw DomainError("transverse_excitation_energy: s must be >= 1");
  return Scalar(s - 1);
}

// Number of (l, m) pairs with 2l + |m| + 1 = s.
inline long mode_degeneracy(int s) {
  if (s < 1) throw DomainError("mode_degeneracy: s must be >= 1");
  return s;
}

// Critical photon number N_c = (pi^2/3) T^2.
template <class Scalar>
Scalar critical_photon_number(Scalar T) {
  if (!(T > Scalar(0))) throw DomainError("critical_photon_number: T must be > 0");
  const Scalar pi = Scalar(3.14159265358979323846L);
  return pi * pi / Scalar(3) * T * T;
}

template <class Scalar>
struct CondensateResult {
  Scalar N0{};
  bool below_threshold = false;  // thermal sum exceeded N_t - 1; N0 clamped to 1
};

// Thermal population of the excited modes, sum_{s>=2} s / (e^{(s-1)/T} - 1).
template <class Scalar>
Scalar excited_state_population(Scalar T) {
  if (T == Scalar(0)) return Scalar(0);
  Scalar total = Scalar(0);
  const long cap = static_cast<long>(std::max(Scalar(1e6), Scalar(1000) * T));
  for (long s = 2; s <= cap; ++s) {
    const Scalar x = Scalar(s - 1) / T;
    const Scalar term = Scalar(s) / std::expm1(x);
    total += term;
    // Once (s-1)/T > 30 the terms fall off at least geometrically with ratio
    // e^{-1/T} (1 + 1/s) < 1, so term < rel_tol * total bounds the whole tail
    // by rel_tol * total / (1 - ratio).
    if (term < Scalar(1e-12) * total && x > Scalar(30)) break;
  }
  return total;
}

// N0 = N_t - excited population of the noninteracting gas; clamps at N0 = 1
// with the below-threshold flag set when the excited population exceeds N_t - 1.
// T = 0 short-circuits to N0 = N_t.
template <class Scalar>
CondensateResult<Scalar> condensate_occupation(Scalar N_t, Scalar T) {
  if (!(N_t >= Scalar(1))) throw DomainError("condensate_occupation: N_t must be >= 1");
  if (!(T >= Scalar(0))) throw DomainError("condensate_occupation: T must be >= 0");
  if (T == Scalar(0)) return {N_t, false};
  const Scalar excited = excited_state_population(T);
  if (excited > N_t - Scalar(1)) return {Scalar(1), true};
  return {N_t - excited, false};
}

// Two-body interaction potential V0 = zeta / (2 pi) in units hbar omega_t.
template <class Scalar>
Scalar interaction_potential(Scalar zeta) {
  if (!(zeta >= Scalar(0))) throw DomainError("interaction_potential: zeta must be >= 0");
  const Scalar two_pi = Scalar(6.28318530717958647692L);
  return zeta / two_pi;
}

template <class Scalar>
struct BogoliubovCoefficients {
  Scalar u{}, v{};
  Scalar omega_tilde{};
};

// Bogoliubov coefficients and dispersion at excitation energy eps:
//   y = N0 V0 / eps
//   u = [ (1+y)/(2 sqrt(1+2y)) + 1/2 ]^{1/2},  v = -[ (1+y)/(2 sqrt(1+2y)) - 1/2 ]^{1/2}
//   omega_tilde = eps sqrt(1+2y)
// Closed identities: u^2 - v^2 = 1 and (u+v)^2 = (1+2y)^{-1/2} = eps/omega_tilde.
template <class Scalar>
BogoliubovCoefficients<Scalar> bogoliubov_coefficients(Scalar N0, Scalar V0, Scalar eps) {
  if (!(N0 >= Scalar(0))) throw DomainError("bogoliubov_coefficients: N0 must be >= 0");
  if (!(V0 >= Scalar(0))) throw DomainError("bogoliubov_coefficients: V0 must be >= 0");
  if (!(eps > Scalar(0)))
    throw DomainError("bogoliubov_coefficients: eps must be > 0 (coefficients diverge at zero energy)");
  const Scalar y = N0 * V0 / eps;
  const Scalar root = std::sqrt(Scalar(1) + Scalar(2) * y);
  const Scalar a = (Scalar(1) + y) / (Scalar(2) * root);
  BogoliubovCoefficients<Scalar> out;
  out.u = std::sqrt(a + Scalar(0.5));
  out.v = -std::sqrt(a - Scalar(0.5));
  out.omega_tilde = eps * root;
  return out;
}

// Effective coupling g_bar = 2 sqrt(N0) g (u+v).
template <class Scalar>
Scalar effective_coupling(Scalar N0, Scalar g, Scalar u, Scalar v) {
  if (!(N0 >= Scalar(0))) throw DomainError("effective_coupling: N0 must be >= 0");
  if (!(g >= Scalar(0))) throw DomainError("effective_coupling: g must be >= 0");
  if (std::abs(u * u - v * v - Scalar(1)) > Scalar(1e-9))
    throw DomainError("effective_coupling: (u, v) violate u^2 - v^2 = 1");
  return Scalar(2) * std::sqrt(N0) * g * (u + v);
}

// Bose occupation 1/(e^{omega/T} - 1); 0 at T = 0.
template <class Scalar>
Scalar thermal_occupation(Scalar omega, Scalar T) {
  if (!(omega > Scalar(0))) throw DomainError("thermal_occupation: omega must be > 0");
  if (!(T >= Scalar(0))) throw DomainError("thermal_occupation: T must be >= 0");
  if (T == Scalar(0)) return Scalar(0);
  return Scalar(1) / std::expm1(omega / T);
}

// Full derivation chain. Below-threshold becomes a hard error here: the
// Bogoliubov reduction assumes a macroscopically occupied condensate.
template <class Scalar>
LinearModel<Scalar> build_linear_model(const PhysicalParams<Scalar>& p) {
  p.validate();
  const auto cond = condensate_occupation(p.N_t, p.T);
  if (cond.below_threshold)
    throw ThresholdError("build_linear_model: photon gas below condensation threshold (N_t too small for T)");
  const Scalar V0 = interaction_potential(p.zeta);
  const Scalar eps = transverse_excitation_energy<Scalar>(p.s);
  const auto bog = bogoliubov_coefficients(cond.N0, V0, eps);

  LinearModel<Scalar> m;
  m.kappa_ex = p.kappa_ex;
  m.kappa_0 = p.kappa_0;
  m.kappa = p.kappa_ex + p.kappa_0;
  m.gamma = p.gamma;
  m.Omega = p.Omega;
  m.delta_tilde = p.delta_tilde;
  m.u = bog.u;
  m.v = bog.v;
  m.omega_tilde = bog.omega_tilde;
  m.N0 = cond.N0;
  m.g_bar = effective_coupling(cond.N0, p.g, bog.u, bog.v);
  m.n_th = thermal_occupation(bog.omega_tilde, p.T);
  m.n_c = thermal_occupation(p.Omega, p.T_m);
  return m;
}

}  // namespace pbom
