#pragma once

// Noise spectra of the linearized system, computed two ways:
//
//  1. closed forms: the literature expressions for the displacement spectrum,
//     the output intensity spectrum (alpha/beta coefficient families) and the
//     optimal quadrature-squeezing spectrum, kept structurally as printed
//     (see BathConvention for the one knob we expose);
//  2. a first-principles linear-response engine that solves
//     (-i omega I - A) u(omega) = n(omega) and assembles any power spectrum
//     from the primitive noise correlation matrix. The engine is the
//     canonical route; the closed forms are cross-checked against it.
//
// Conventions (frozen here and in docs/conventions.md):
//  - Fourier transform f(omega) = (2 pi)^{-1/2} int f(t) e^{-i omega t} dt,
//    so d/dt -> -i omega and B^dagger(omega) = [B(-omega)]^dagger.
//  - Hermitian-observable spectra (S_x, and internally S_phi before
//    rescaling) carry the 1/(4 pi) prefactor applied to the *symmetrized*
//    correlator (1/2)<O(omega) O(omega') + O(omega') O(omega)>. With this
//    choice variances recover as V_33 = 2 int S_x(omega) d omega.
//  - The output intensity spectrum is the delta-coefficient of
//    <A_out^dagger(omega) A_out(-omega)> (no extra 1/(2 pi)).
//  - Quadrature spectra S_phi are reported in shot-noise units: vacuum input
//    gives S_phi = 1 for every phi, and S_phi < 1 marks squeezing. This is
//    4 pi times the Eq.-style normalization used for S_x.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pbom/algebra.hpp"
#include "pbom/becmodel.hpp"
#include "pbom/dynamics.hpp"
#include "pbom/errors.hpp"

namespace pbom {

template <class Scalar>
struct MechanicalResponse {
  Scalar omega{};
  Scalar Omega_eff_sq{};  // may be negative; reported as-is
  Scalar gamma_eff{};
  std::complex<Scalar> chi_m{};
  bool frequency_softened = false;  // Omega_eff_sq < 0
};

// chi_m = Omega / (Omega_eff^2 - omega^2 - i omega gamma_eff) with
//   Omega_eff^2 = gamma^2 + Omega^2
//                 - 4 g_bar^2 Omega delta (kappa^2 - omega^2 + delta^2) / Dnm
//   gamma_eff   = 2 gamma + 8 g_bar^2 Omega delta kappa / Dnm
//   Dnm         = (kappa^2 - omega^2 + delta^2)^2 + 4 kappa^2 omega^2.
template <class Scalar>
MechanicalResponse<Scalar> mechanical_response(const LinearModel<Scalar>& m, Scalar omega) {
  const Scalar k = m.kappa, d = m.delta_tilde, G = m.g_bar, O = m.Omega, g = m.gamma;
  const Scalar base = k * k - omega * omega + d * d;
  const Scalar Dnm = base * base + Scalar(4) * k * k * omega * omega;
  MechanicalResponse<Scalar> r;
  r.omega = omega;
  r.Omega_eff_sq = g * g + O * O - Scalar(4) * G * G * O * d * base / Dnm;
  r.gamma_eff = Scalar(2) * g + Scalar(8) * G * G * O * d * k / Dnm;
  r.frequency_softened = r.Omega_eff_sq < Scalar(0);
  r.chi_m = O / std::complex<Scalar>(r.Omega_eff_sq - omega * omega, -omega * r.gamma_eff);
  return r;
}

template <class Scalar>
struct NormalModes {
  std::complex<Scalar> omega_plus{}, omega_minus{};
  bool soft_mode = false;  // omega_minus^2 < 0, instability-adjacent
};

// omega_pm^2 = [ (delta^2 + Omega^2) +/- sqrt((delta^2 - Omega^2)^2
//                + 16 g_bar^2 Omega delta) ] / 2.
template <class Scalar>
NormalModes<Scalar> normal_mode_frequencies(const LinearModel<Scalar>& m) {
  if (!(m.delta_tilde > Scalar(0)) || !(m.Omega > Scalar(0)))
    throw DomainError("normal_mode_frequencies: requires delta_tilde > 0 and Omega > 0");
  const Scalar d2 = m.delta_tilde * m.delta_tilde, O2 = m.Omega * m.Omega;
  const Scalar rad = (d2 - O2) * (d2 - O2) +
                     Scalar(16) * m.g_bar * m.g_bar * m.Omega * m.delta_tilde;
  const Scalar s = std::sqrt(rad);
  const Scalar wp2 = (d2 + O2 + s) / Scalar(2);
  const Scalar wm2 = (d2 + O2 - s) / Scalar(2);
  NormalModes<Scalar> nm;
  nm.omega_plus = std::sqrt(std::complex<Scalar>(wp2, 0));
  nm.omega_minus = std::sqrt(std::complex<Scalar>(wm2, 0));
  nm.soft_mode = wm2 < Scalar(0);
  return nm;
}

// ---------------------------------------------------------------------------
// Closed-form displacement spectrum.
// ---------------------------------------------------------------------------

template <class Scalar>
Scalar displacement_spectrum_closed(const LinearModel<Scalar>& m, Scalar omega) {
  const Scalar k = m.kappa, d = m.delta_tilde, G = m.g_bar, O = m.Omega, g = m.gamma;
  const Scalar base = k * k - omega * omega + d * d;
  const Scalar Dnm = base * base + Scalar(4) * k * k * omega * omega;
  const auto resp = mechanical_response(m, omega);
  const Scalar chi2 = std::norm(resp.chi_m);
  const Scalar upv = m.u + m.v, umv = m.u - m.v;
  const Scalar pi = Scalar(3.14159265358979323846L);
  const Scalar thermal = g * (Scalar(2) * m.n_c + Scalar(1)) *
                         (O * O + g * g + omega * omega) / (O * O);
  const Scalar bath = Scalar(4) * G * G * m.kappa_0 * (Scalar(2) * m.n_th + Scalar(1)) *
                      (d * d + k * k + omega * omega) / Dnm;
  const Scalar input = Scalar(4) * G * G *
                       (m.kappa_ex * d * d * upv * upv +
                        m.kappa_ex * (k * k + omega * omega) * umv * umv) / Dnm;
  return chi2 * (thermal + bath + input) / (Scalar(4) * pi);
}

// ---------------------------------------------------------------------------
// Frequency-domain response coefficients of the Bogoliubov mode,
// B(omega) = a1 xi_B + a2 xi_B^dag + a3 xi_c + a4 xi_c^dag.
// ---------------------------------------------------------------------------

template <class Scalar>
struct AlphaCoefficients {
  std::complex<Scalar> a1{}, a2{}, a3{}, a4{};
  std::complex<Scalar> d{};  // shared denominator
};

template <class Scalar>
AlphaCoefficients<Scalar> alpha_coefficients(const LinearModel<Scalar>& m, Scalar omega) {
  using C = std::complex<Scalar>;
  const Scalar k = m.kappa, dl = m.delta_tilde, G = m.g_bar, O = m.Omega, g = m.gamma;
  const C gi = C(g, -omega);   // gamma - i omega
  const C ki = C(k, -omega);   // kappa - i omega
  const C Cm = gi * gi + O * O;
  const C Kp = ki * ki + dl * dl;
  AlphaCoefficients<Scalar> a;
  a.d = -Cm * Kp + Scalar(4) * G * G * dl * O;
  if (std::abs(a.d) < Scalar(1e-300))
    throw NumericalError("alpha_coefficients: response pole (undamped resonance)");
  a.a1 = (Cm * C(-k, dl + omega) - C(0, Scalar(2) * G * G * O)) / a.d;
  a.a2 = C(0, -Scalar(2) * G * G * O) / a.d;
  a.a3 = C(0, G) * C(dl + omega, k) * C(O + omega, g) / a.d;
  a.a4 = C(0, -G) * C(dl + omega, k) * C(O - omega, -g) / a.d;
  return a;
}

// Bath-weighting convention for the beta functions. `printed` keeps the
// literature form verbatim, including its kappa-vs-kappa_0 asymmetry in the
// (n_th + 1) weights; `corrected` uses the weights implied by the input-noise
// correlators (2 kappa_ex u^2 + 2 kappa_0 (n_th + 1)), which the engine
// reproduces to machine precision.
enum class BathConvention { printed, corrected };

template <class Scalar>
struct BetaFunctions {
  Scalar beta1{}, beta2{};
  std::complex<Scalar> beta3{};
};

template <class Scalar>
BetaFunctions<Scalar> beta_functions(const LinearModel<Scalar>& m, Scalar omega,
                                     BathConvention conv = BathConvention::printed) {
  const auto aw = alpha_coefficients(m, omega);
  const auto am = alpha_coefficients(m, -omega);
  const Scalar kex = m.kappa_ex, k0 = m.kappa_0;
  const Scalar u = m.u, v = m.v, nth = m.n_th, nc = m.n_c, g = m.gamma;
  const Scalar w_plus = (conv == BathConvention::printed)
                            ? Scalar(2) * kex * u * u + Scalar(2) * m.kappa * (nth + Scalar(1))
                            : Scalar(2) * kex * u * u + Scalar(2) * k0 * (nth + Scalar(1));
  const Scalar w_minus = Scalar(2) * kex * v * v + Scalar(2) * k0 * nth;

  BetaFunctions<Scalar> b;
  b.beta1 = w_minus * std::norm(am.a1) + w_plus * std::norm(am.a2) -
            Scalar(4) * kex * u * v * std::real(std::conj(am.a1) * am.a2) +
            Scalar(2) * g * nc * std::norm(am.a3) +
            Scalar(2) * g * (nc + Scalar(1)) * std::norm(am.a4);
  b.beta2 = w_plus * std::norm(aw.a1) + w_minus * std::norm(aw.a2) -
            Scalar(4) * kex * u * v * std::real(aw.a1 * std::conj(aw.a2)) +
            Scalar(2) * g * (nc + Scalar(1)) * std::norm(aw.a3) +
            Scalar(2) * g * nc * std::norm(aw.a4);
  // beta3 carries kappa_0 weights in both conventions.
  const Scalar w3_plus = Scalar(2) * kex * u * u + Scalar(2) * k0 * (nth + Scalar(1));
  b.beta3 = w3_plus * aw.a1 * am.a2 + w_minus * aw.a2 * am.a1 -
            Scalar(2) * kex * u * v * (aw.a1 * am.a1 + aw.a2 * am.a2) +
            Scalar(2) * g * (nc + Scalar(1)) * aw.a3 * am.a4 +
            Scalar(2) * g * nc * am.a3 * aw.a4;
  return b;
}

// S_out(omega) = 2 kappa_ex { u^2 beta1 + v^2 beta2 + 2 u v Re beta3 }.
template <class Scalar>
Scalar output_intensity_closed(const LinearModel<Scalar>& m, Scalar omega,
                               BathConvention conv = BathConvention::printed) {
  const auto b = beta_functions(m, omega, conv);
  return Scalar(2) * m.kappa_ex *
         (m.u * m.u * b.beta1 + m.v * m.v * b.beta2 +
          Scalar(2) * m.u * m.v * std::real(b.beta3));
}

// Symmetrized (over +/- omega) correlators of the output field entering the
// squeezing spectrum: S_phi = S_out_sym + C_AAdag_sym + 2 Re[e^{-2 i phi} C_AA_sym].
template <class Scalar>
struct OutputCorrelators {
  Scalar S_out_sym{};
  Scalar C_AAdag_sym{};
  std::complex<Scalar> C_AA_sym{};
};

template <class Scalar>
OutputCorrelators<Scalar> output_correlators(const LinearModel<Scalar>& m, Scalar omega,
                                             BathConvention conv = BathConvention::printed) {
  const Scalar kex = m.kappa_ex, u = m.u, v = m.v;
  const auto assemble = [&](Scalar w) {
    const auto b = beta_functions(m, w, conv);
    const auto aw = alpha_coefficients(m, w);
    const auto am = alpha_coefficients(m, -w);
    struct Parts {
      Scalar Sout, C1, C2;
      std::complex<Scalar> C3, C4;
    } p;
    p.Sout = Scalar(2) * kex * (u * u * b.beta1 + v * v * b.beta2 +
                                Scalar(2) * u * v * std::real(b.beta3));
    p.C1 = Scalar(2) * kex * (u * u * b.beta2 + v * v * b.beta1 +
                              Scalar(2) * u * v * std::real(b.beta3));
    p.C2 = Scalar(4) * kex * std::real(aw.a1);
    p.C3 = Scalar(2) * kex * (u * u * b.beta3 + v * v * std::conj(b.beta3) +
                              u * v * (b.beta1 + b.beta2));
    p.C4 = Scalar(2) * kex * (u * u * am.a2 - v * v * std::conj(aw.a2) -
                              u * v * am.a1 + u * v * std::conj(aw.a1));
    return p;
  };
  const auto pw = assemble(omega);
  const auto pm = assemble(-omega);
  OutputCorrelators<Scalar> oc;
  oc.S_out_sym = (pw.Sout + pm.Sout) / Scalar(2);
  oc.C_AAdag_sym = (pw.C1 - pw.C2 + pm.C1 - pm.C2) / Scalar(2) + Scalar(1);
  oc.C_AA_sym = (pw.C3 - pw.C4 + pm.C3 - pm.C4) / Scalar(2);
  return oc;
}

// Analytic optimum: S_opt = S_out_sym + C_AAdag_sym - 2 |C_AA_sym|.
template <class Scalar>
Scalar squeezing_optimum_closed(const LinearModel<Scalar>& m, Scalar omega,
                                BathConvention conv = BathConvention::corrected) {
  const auto oc = output_correlators(m, omega, conv);
  return oc.S_out_sym + oc.C_AAdag_sym - Scalar(2) * std::abs(oc.C_AA_sym);
}

// The literature variant with the squared |C_AA|^2 term, emitted as the
// S_opt_printed column and pinned by regression tests; can go negative.
template <class Scalar>
Scalar squeezing_optimum_printed(const LinearModel<Scalar>& m, Scalar omega) {
  const auto oc = output_correlators(m, omega, BathConvention::printed);
  return oc.S_out_sym + oc.C_AAdag_sym - Scalar(2) * std::norm(oc.C_AA_sym);
}

// ---------------------------------------------------------------------------
// First-principles linear-response engine.
// ---------------------------------------------------------------------------

// Primitive noise channels, as Hermitian quadratures:
//   w = (X_a, P_a, X_F, P_F, X_c, P_c)
// X_a/P_a: vacuum input at the coupling mirror; X_F/P_F: thermalization
// reservoir at occupation n_th; X_c/P_c: mechanical bath noise (rates folded
// in, so <X_c X_c> = gamma (2 n_c + 1)).
template <class Scalar>
struct NoiseBasis {
  CMat6<Scalar> correlation;             // delta-coefficient matrix, Hermitian PSD
  Eigen::Matrix<Scalar, 4, 6> injection; // (xi_X, xi_P, xi_x, xi_p) = injection * w

  // White noise: the correlation matrix is frequency independent.
  CMat6<Scalar> correlation_matrix(Scalar /*omega*/) const { return correlation; }

  Eigen::Matrix<Scalar, 6, 6> symmetrized() const { return correlation.real(); }

  static NoiseBasis standard(const LinearModel<Scalar>& m) {
    using C = std::complex<Scalar>;
    NoiseBasis nb;
    nb.correlation = CMat6<Scalar>::Zero();
    const auto pair_block = [&](int i, Scalar diag, Scalar cross) {
      nb.correlation(i, i) = nb.correlation(i + 1, i + 1) = diag;
      nb.correlation(i, i + 1) = C(0, cross);
      nb.correlation(i + 1, i) = C(0, -cross);
    };
    pair_block(0, Scalar(0.5), Scalar(0.5));
    pair_block(2, (Scalar(2) * m.n_th + Scalar(1)) / Scalar(2), Scalar(0.5));
    pair_block(4, m.gamma * (Scalar(2) * m.n_c + Scalar(1)), m.gamma);

    nb.injection = Eigen::Matrix<Scalar, 4, 6>::Zero();
    const Scalar rex = std::sqrt(Scalar(2) * m.kappa_ex);
    const Scalar r0 = std::sqrt(Scalar(2) * m.kappa_0);
    nb.injection(0, 0) = rex * (m.u - m.v);
    nb.injection(0, 2) = r0;
    nb.injection(1, 1) = rex * (m.u + m.v);
    nb.injection(1, 3) = r0;
    nb.injection(2, 4) = Scalar(1);
    nb.injection(3, 5) = Scalar(1);
    return nb;
  }
};

// Observable for the engine: a linear form over the system quadratures plus a
// direct feed-through onto the primitive channels, or the named composite
// "output intensity".
template <class Scalar>
struct Observable {
  enum class Kind { hermitian_form, output_intensity };
  Kind kind = Kind::hermitian_form;
  Vec4<Scalar> system = Vec4<Scalar>::Zero();
  Vec6<Scalar> direct = Vec6<Scalar>::Zero();
  std::string name = "observable";

  static Observable mechanical_position() {
    Observable o;
    o.system(2) = Scalar(1);
    o.name = "x";
    return o;
  }
  static Observable hermitian(const Vec4<Scalar>& system_row,
                              const Vec6<Scalar>& direct_row = Vec6<Scalar>::Zero(),
                              std::string label = "observable") {
    Observable o;
    o.system = system_row;
    o.direct = direct_row;
    o.name = std::move(label);
    return o;
  }
  static Observable output_intensity() {
    Observable o;
    o.kind = Kind::output_intensity;
    o.name = "A_out_intensity";
    return o;
  }
};

// (-i omega I - A)^{-1}
template <class Scalar>
CMat4<Scalar> transfer_matrix(const Mat4<Scalar>& A, Scalar omega) {
  CMat4<Scalar> M = -A.template cast<std::complex<Scalar>>();
  for (int i = 0; i < 4; ++i) M(i, i) -= std::complex<Scalar>(0, omega);
  return M.inverse();
}

namespace detail {

template <class Scalar, class Mat>
std::complex<Scalar> bilinear(const CVec6<Scalar>& a, const Mat& M, const CVec6<Scalar>& b) {
  const CVec6<Scalar> Mb = M * b;
  std::complex<Scalar> acc{};
  for (int i = 0; i < 6; ++i) acc += a(i) * Mb(i);
  return acc;
}

// Transfer row of a linear form: c(omega) = r^T T(omega) L + s^T.
template <class Scalar>
CVec6<Scalar> response_row(const Mat4<Scalar>& A, const NoiseBasis<Scalar>& nb,
                           const Vec4<Scalar>& system, const Vec6<Scalar>& direct,
                           Scalar omega) {
  const CMat4<Scalar> T = transfer_matrix(A, omega);
  const CVec4<Scalar> rT = T.transpose() * system.template cast<std::complex<Scalar>>();
  CVec6<Scalar> c = nb.injection.transpose().template cast<std::complex<Scalar>>() * rT;
  c += direct.template cast<std::complex<Scalar>>();
  return c;
}

// Output-field quadrature rows: X_out = sqrt(2 kex)(u+v) X - X_a and
// P_out = sqrt(2 kex)(u-v) P - P_a (the cavity mode A = u B + v B^dag scales
// the Bogoliubov quadratures by u +/- v).
template <class Scalar>
std::pair<CVec6<Scalar>, CVec6<Scalar>> output_rows(const LinearModel<Scalar>& m,
                                                    const Mat4<Scalar>& A,
                                                    const NoiseBasis<Scalar>& nb,
                                                    Scalar omega) {
  const Scalar rex = std::sqrt(Scalar(2) * m.kappa_ex);
  Vec4<Scalar> rX = Vec4<Scalar>::Zero(), rP = Vec4<Scalar>::Zero();
  rX(0) = rex * (m.u + m.v);
  rP(1) = rex * (m.u - m.v);
  Vec6<Scalar> dX = Vec6<Scalar>::Zero(), dP = Vec6<Scalar>::Zero();
  dX(0) = Scalar(-1);
  dP(1) = Scalar(-1);
  return {response_row(A, nb, rX, dX, omega), response_row(A, nb, rP, dP, omega)};
}

}  // namespace detail

// Symmetrized PSD of a Hermitian linear form, 1/(4 pi) normalization:
//   S(omega) = (1/4 pi) c(omega)^T M_sym c(-omega).
template <class Scalar>
Scalar engine_hermitian_psd(const LinearModel<Scalar>& m, const NoiseBasis<Scalar>& nb,
                            const Observable<Scalar>& obs, Scalar omega) {
  const Mat4<Scalar> A = drift_matrix(m);
  const CVec6<Scalar> cw = detail::response_row(A, nb, obs.system, obs.direct, omega);
  const CVec6<Scalar> cm = detail::response_row(A, nb, obs.system, obs.direct, -omega);
  const auto Ms = nb.symmetrized().template cast<std::complex<Scalar>>().eval();
  const std::complex<Scalar> val = detail::bilinear(cw, Ms, cm);
  const Scalar pi = Scalar(3.14159265358979323846L);
  return std::real(val) / (Scalar(4) * pi);
}

// Normally-ordered output intensity spectrum,
//   S_out(omega) = delta-coefficient of <A_out^dag(omega) A_out(-omega)>
//               = (1/2) (c_X(omega) - i c_P(omega))^T M (c_X(-omega) + i c_P(-omega)).
template <class Scalar>
Scalar engine_output_intensity(const LinearModel<Scalar>& m, const NoiseBasis<Scalar>& nb,
                               Scalar omega) {
  const Mat4<Scalar> A = drift_matrix(m);
  const auto [cXw, cPw] = detail::output_rows(m, A, nb, omega);
  const auto [cXm, cPm] = detail::output_rows(m, A, nb, -omega);
  using CV = CVec6<Scalar>;
  const std::complex<Scalar> i1(0, 1);
  const CV left = cXw - i1 * cPw;
  const CV right = cXm + i1 * cPm;
  const std::complex<Scalar> val = detail::bilinear(left, nb.correlation, right) / Scalar(2);
  if (std::abs(val.imag()) > Scalar(1e-8) * std::abs(val.real()) + Scalar(1e-12))
    throw NumericalError("engine_output_intensity: non-real spectrum value");
  return val.real();
}

// Quadrature spectrum S_phi in shot-noise units (vacuum = 1):
//   X_phi = sqrt(2) (cos phi X_out + sin phi P_out), S_phi = c_phi(omega)^T M_sym c_phi(-omega).
template <class Scalar>
Scalar engine_output_quadrature(const LinearModel<Scalar>& m, const NoiseBasis<Scalar>& nb,
                                Scalar omega, Scalar phi) {
  const Mat4<Scalar> A = drift_matrix(m);
  const auto [cXw, cPw] = detail::output_rows(m, A, nb, omega);
  const auto [cXm, cPm] = detail::output_rows(m, A, nb, -omega);
  const Scalar c = std::cos(phi), s = std::sin(phi);
  const std::complex<Scalar> cc(c, 0), ss(s, 0);
  const Scalar r2 = std::sqrt(Scalar(2));
  const CVec6<Scalar> cw = r2 * (cc * cXw + ss * cPw);
  const CVec6<Scalar> cm = r2 * (cc * cXm + ss * cPm);
  const auto Ms = nb.symmetrized().template cast<std::complex<Scalar>>().eval();
  return std::real(detail::bilinear(cw, Ms, cm));
}

template <class Scalar>
struct SqueezingOptimum {
  Scalar S_opt{};
  Scalar phi_opt{};        // NaN when S_phi is phi-independent
  bool phi_defined = true;
};

// Canonical optimum: direct scan over phi in [0, pi) (64 points) followed by
// golden-section refinement. S_phi(phi) is exactly pi-periodic.
template <class Scalar>
SqueezingOptimum<Scalar> engine_optimal_squeezing(const LinearModel<Scalar>& m,
                                                  const NoiseBasis<Scalar>& nb,
                                                  Scalar omega) {
  const Mat4<Scalar> A = drift_matrix(m);
  const auto [cXw, cPw] = detail::output_rows(m, A, nb, omega);
  const auto [cXm, cPm] = detail::output_rows(m, A, nb, -omega);
  const auto MsC = nb.symmetrized().template cast<std::complex<Scalar>>().eval();
  // S_phi is a quadratic form in (cos phi, sin phi); precompute its three
  // coefficients so the scan is cheap.
  const auto form = [&](const CVec6<Scalar>& a, const CVec6<Scalar>& b) {
    return std::real(detail::bilinear(a, MsC, b));
  };
  const Scalar aXX = Scalar(2) * form(cXw, cXm);
  const Scalar aPP = Scalar(2) * form(cPw, cPm);
  const Scalar aXP = Scalar(2) * (form(cXw, cPm) + form(cPw, cXm));
  const auto S_of = [&](Scalar phi) {
    const Scalar c = std::cos(phi), s = std::sin(phi);
    return aXX * c * c + aPP * s * s + aXP * s * c;
  };

  const Scalar pi = Scalar(3.14159265358979323846L);
  constexpr int n_scan = 64;
  int best = 0;
  Scalar best_val = std::numeric_limits<Scalar>::infinity();
  Scalar worst_val = -std::numeric_limits<Scalar>::infinity();
  for (int i = 0; i < n_scan; ++i) {
    const Scalar val = S_of(pi * Scalar(i) / Scalar(n_scan));
    if (val < best_val) { best_val = val; best = i; }
    worst_val = std::max(worst_val, val);
  }
  SqueezingOptimum<Scalar> out;
  if (worst_val - best_val <= Scalar(1e-12) * std::max(Scalar(1), std::abs(worst_val))) {
    out.S_opt = best_val;
    out.phi_opt = std::numeric_limits<Scalar>::quiet_NaN();
    out.phi_defined = false;
    return out;
  }
  // golden-section refinement on the bracketing interval
  const Scalar gr = (std::sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
  Scalar lo = pi * Scalar(best - 1) / Scalar(n_scan);
  Scalar hi = pi * Scalar(best + 1) / Scalar(n_scan);
  Scalar x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  Scalar f1 = S_of(x1), f2 = S_of(x2);
  for (int it = 0; it < 80 && (hi - lo) > Scalar(1e-12); ++it) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - gr * (hi - lo); f1 = S_of(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + gr * (hi - lo); f2 = S_of(x2);
    }
  }
  const Scalar xm = (lo + hi) / Scalar(2);
  out.S_opt = S_of(xm);
  out.phi_opt = xm < Scalar(0) ? xm + pi : (xm >= pi ? xm - pi : xm);
  return out;
}

// ---------------------------------------------------------------------------
// Spectrum series over a grid.
// ---------------------------------------------------------------------------

template <class Scalar>
struct SpectrumSeries {
  std::vector<Scalar> omega_grid;  // units omega_t, strictly increasing
  std::vector<std::pair<std::string, std::vector<Scalar>>> columns;
  LinearModel<Scalar> model;  // parameter echo
  std::string kind;

  const std::vector<Scalar>& column(const std::string& name) const {
    for (const auto& [n, col] : columns)
      if (n == name) return col;
    throw ConfigError("SpectrumSeries: no column named " + name);
  }
};

namespace detail {
template <class Scalar>
void require_grid(const std::vector<Scalar>& grid) {
  if (grid.empty()) throw DomainError("spectrum: empty frequency grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw DomainError("spectrum: omega grid must be strictly increasing");
}

template <class Scalar>
void require_stable(const LinearModel<Scalar>& m) {
  const auto rep = stability(drift_matrix(m));
  if (!rep.solvable())
    throw StabilityError("spectrum: model is not strictly stable");
}
}  // namespace detail

// Columns: S_x_closed (closed form) and S_x_engine (linear-response engine).
template <class Scalar>
SpectrumSeries<Scalar> displacement_spectrum(const LinearModel<Scalar>& m,
                                             const std::vector<Scalar>& omega_grid) {
  detail::require_grid(omega_grid);
  detail::require_stable(m);
  const auto nb = NoiseBasis<Scalar>::standard(m);
  const auto obs = Observable<Scalar>::mechanical_position();
  SpectrumSeries<Scalar> s;
  s.omega_grid = omega_grid;
  s.model = m;
  s.kind = "displacement";
  std::vector<Scalar> closed(omega_grid.size()), engine(omega_grid.size());
  for (std::size_t i = 0; i < omega_grid.size(); ++i) {
    closed[i] = displacement_spectrum_closed(m, omega_grid[i]);
    engine[i] = engine_hermitian_psd(m, nb, obs, omega_grid[i]);
  }
  s.columns.emplace_back("S_x_closed", std::move(closed));
  s.columns.emplace_back("S_x_engine", std::move(engine));
  return s;
}

// Columns: S_out (printed beta path), S_out_sym, S_out_engine.
template <class Scalar>
SpectrumSeries<Scalar> output_intensity_spectrum(const LinearModel<Scalar>& m,
                                                 const std::vector<Scalar>& omega_grid) {
  detail::require_grid(omega_grid);
  detail::require_stable(m);
  const auto nb = NoiseBasis<Scalar>::standard(m);
  SpectrumSeries<Scalar> s;
  s.omega_grid = omega_grid;
  s.model = m;
  s.kind = "output";
  std::vector<Scalar> sout(omega_grid.size()), ssym(omega_grid.size()), seng(omega_grid.size());
  for (std::size_t i = 0; i < omega_grid.size(); ++i) {
    const Scalar w = omega_grid[i];
    sout[i] = output_intensity_closed(m, w);
    ssym[i] = (output_intensity_closed(m, w) + output_intensity_closed(m, -w)) / Scalar(2);
    seng[i] = engine_output_intensity(m, nb, w);
  }
  s.columns.emplace_back("S_out", std::move(sout));
  s.columns.emplace_back("S_out_sym", std::move(ssym));
  s.columns.emplace_back("S_out_engine", std::move(seng));
  return s;
}

// Columns: S_opt_scan (canonical, engine scan), S_opt_printed, phi_opt.
template <class Scalar>
SpectrumSeries<Scalar> squeezing_spectrum(const LinearModel<Scalar>& m,
                                          const std::vector<Scalar>& omega_grid) {
  detail::require_grid(omega_grid);
  detail::require_stable(m);
  const auto nb = NoiseBasis<Scalar>::standard(m);
  SpectrumSeries<Scalar> s;
  s.omega_grid = omega_grid;
  s.model = m;
  s.kind = "squeezing";
  std::vector<Scalar> sopt(omega_grid.size()), sprt(omega_grid.size()), phio(omega_grid.size());
  for (std::size_t i = 0; i < omega_grid.size(); ++i) {
    const auto opt = engine_optimal_squeezing(m, nb, omega_grid[i]);
    sopt[i] = opt.S_opt;
    phio[i] = opt.phi_opt;
    sprt[i] = squeezing_optimum_printed(m, omega_grid[i]);
  }
  s.columns.emplace_back("S_opt_scan", std::move(sopt));
  s.columns.emplace_back("S_opt_printed", std::move(sprt));
  s.columns.emplace_back("phi_opt", std::move(phio));
  return s;
}

// PSD of a user-supplied observable through the engine; the repository's
// ground truth for cross-checking the closed forms.
template <class Scalar>
SpectrumSeries<Scalar> linear_response_psd(const LinearModel<Scalar>& m,
                                           const NoiseBasis<Scalar>& nb,
                                           const Observable<Scalar>& obs,
                                           const std::vector<Scalar>& omega_grid) {
  detail::require_grid(omega_grid);
  detail::require_stable(m);
  SpectrumSeries<Scalar> s;
  s.omega_grid = omega_grid;
  s.model = m;
  s.kind = "psd:" + obs.name;
  std::vector<Scalar> col(omega_grid.size());
  for (std::size_t i = 0; i < omega_grid.size(); ++i)
    col[i] = (obs.kind == Observable<Scalar>::Kind::output_intensity)
                 ? engine_output_intensity(m, nb, omega_grid[i])
                 : engine_hermitian_psd(m, nb, obs, omega_grid[i]);
  s.columns.emplace_back(obs.name, std::move(col));
  return s;
}

}  // namespace pbom
