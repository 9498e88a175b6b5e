#pragma once

// Drift/diffusion matrices of the quadrature Langevin system, stability,
// steady-state covariance (Lyapunov equation) and derived occupations.

#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "pbom/algebra.hpp"
#include "pbom/becmodel.hpp"
#include "pbom/errors.hpp"

namespace pbom {

template <class Scalar>
using DriftMatrix = Mat4<Scalar>;
// Diffusion matrix is diagonal; stored as its diagonal (D_XX, D_PP, D_xx, D_pp).
template <class Scalar>
using DiffusionDiagonal = Vec4<Scalar>;
template <class Scalar>
using CovarianceMatrix = Mat4<Scalar>;

// Treated as unstable for solving purposes when max Re(lambda) > -margin.
inline constexpr double stability_margin = 1e-9;

template <class Scalar>
struct StabilityReport {
  std::array<std::complex<Scalar>, 4> eigenvalues{};
  bool stable_eigen = false;
  bool stable_routh_hurwitz = false;
  Scalar margin{};            // max real part of the spectrum
  bool near_marginal = false; // |margin| < stability_margin
  bool solvable() const { return stable_eigen && !near_marginal; }
};

// Drift matrix over (X, P, x, p):
//   [ -kappa   delta    0      0   ]
//   [ -delta  -kappa   2g_bar  0   ]
//   [   0       0     -gamma  Omega]
//   [  2g_bar   0     -Omega -gamma]
template <class Scalar>
DriftMatrix<Scalar> drift_matrix(const LinearModel<Scalar>& m) {
  DriftMatrix<Scalar> A = DriftMatrix<Scalar>::Zero();
  A(0, 0) = -m.kappa;
  A(0, 1) = m.delta_tilde;
  A(1, 0) = -m.delta_tilde;
  A(1, 1) = -m.kappa;
  A(1, 2) = Scalar(2) * m.g_bar;
  A(2, 2) = -m.gamma;
  A(2, 3) = m.Omega;
  A(3, 0) = Scalar(2) * m.g_bar;
  A(3, 2) = -m.Omega;
  A(3, 3) = -m.gamma;
  return A;
}

// D = diag( kappa_ex (u-v)^2 + kappa_0 (2 n_th + 1),
//           kappa_ex (u+v)^2 + kappa_0 (2 n_th + 1),
//           gamma (2 n_c + 1), gamma (2 n_c + 1) ).
template <class Scalar>
DiffusionDiagonal<Scalar> diffusion_matrix(const LinearModel<Scalar>& m) {
  DiffusionDiagonal<Scalar> d;
  const Scalar umv = m.u - m.v, upv = m.u + m.v;
  const Scalar th = m.kappa_0 * (Scalar(2) * m.n_th + Scalar(1));
  d(0) = m.kappa_ex * umv * umv + th;
  d(1) = m.kappa_ex * upv * upv + th;
  d(2) = m.gamma * (Scalar(2) * m.n_c + Scalar(1));
  d(3) = d(2);
  return d;
}

// Coefficients of det(lambda I - A) = lambda^4 + a3 l^3 + a2 l^2 + a1 l + a0,
// via Newton's identities on the traces of powers of A.
template <class Scalar>
std::array<Scalar, 4> characteristic_coefficients(const Mat4<Scalar>& A) {
  const Mat4<Scalar> A2 = A * A;
  const Mat4<Scalar> A3 = A2 * A;
  const Scalar p1 = A.trace();
  const Scalar p2 = A2.trace();
  const Scalar p3 = A3.trace();
  const Scalar p4 = (A2 * A2).trace();
  const Scalar e1 = p1;
  const Scalar e2 = (e1 * p1 - p2) / Scalar(2);
  const Scalar e3 = (e2 * p1 - e1 * p2 + p3) / Scalar(3);
  const Scalar e4 = (e3 * p1 - e2 * p2 + e1 * p3 - p4) / Scalar(4);
  return {-e1, e2, -e3, e4};  // {a3, a2, a1, a0}
}

// Both verdicts: eigenvalue test and the Routh-Hurwitz conditions
//   a3 > 0, a0 > 0, a3 a2 - a1 > 0, (a3 a2 - a1) a1 - a3^2 a0 > 0.
template <class Scalar>
StabilityReport<Scalar> stability(const Mat4<Scalar>& A) {
  StabilityReport<Scalar> r;
  Eigen::EigenSolver<Mat4<Scalar>> es(A, /*computeEigenvectors=*/false);
  Scalar maxre = -std::numeric_limits<Scalar>::infinity();
  for (int i = 0; i < 4; ++i) {
    r.eigenvalues[i] = es.eigenvalues()(i);
    maxre = std::max(maxre, r.eigenvalues[i].real());
  }
  r.margin = maxre;
  r.stable_eigen = maxre < Scalar(0);
  r.near_marginal = std::abs(maxre) < Scalar(stability_margin);

  const auto c = characteristic_coefficients(A);
  const Scalar a3 = c[0], a2 = c[1], a1 = c[2], a0 = c[3];
  r.stable_routh_hurwitz = (a3 > Scalar(0)) && (a0 > Scalar(0)) &&
                           (a3 * a2 - a1 > Scalar(0)) &&
                           ((a3 * a2 - a1) * a1 - a3 * a3 * a0 > Scalar(0));
  return r;
}

// Steady-state covariance from A V + V A^T = -D, solved exactly by
// vectorizing into a 16x16 system with partial pivoting. Refuses unstable
// (or marginal) drift matrices, and checks the residual against
// 1e-10 * max|D| before returning.
template <class Scalar>
CovarianceMatrix<Scalar> solve_lyapunov(const Mat4<Scalar>& A,
                                        const DiffusionDiagonal<Scalar>& Ddiag) {
  const auto rep = stability(A);
  if (!rep.solvable())
    throw StabilityError("solve_lyapunov: drift matrix is not strictly stable");

  using Mat16 = Eigen::Matrix<Scalar, 16, 16>;
  using Vec16 = Eigen::Matrix<Scalar, 16, 1>;
  Mat16 K = Mat16::Zero();
  // vec(A V) = (I (x) A) vec V, vec(V A^T) = (A (x) I) vec V  (column-major vec)
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) {
        K(4 * j + i, 4 * j + k) += A(i, k);
        K(4 * j + i, 4 * k + i) += A(j, k);
      }
  Vec16 rhs = Vec16::Zero();
  for (int i = 0; i < 4; ++i) rhs(4 * i + i) = -Ddiag(i);

  Eigen::PartialPivLU<Mat16> lu(K);
  const Vec16 x = lu.solve(rhs);
  if (!x.allFinite())
    throw NumericalError("solve_lyapunov: singular vectorized system (marginal stability)");

  Mat4<Scalar> V;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) V(i, j) = x(4 * j + i);
  V = ((V + V.transpose()) / Scalar(2)).eval();

  Mat4<Scalar> D = Ddiag.asDiagonal();
  const Scalar resid = (A * V + V * A.transpose() + D).template lpNorm<Eigen::Infinity>();
  const Scalar scale = D.template lpNorm<Eigen::Infinity>();
  if (!(resid <= Scalar(1e-10) * scale))
    throw NumericalError("solve_lyapunov: residual exceeds 1e-10 * max|D|");
  return V;
}

// Fixed-step RK4 integration of dV/dt = A V + V A^T + D. Independent relaxation
// oracle for solve_lyapunov; also usable for transients.
template <class Scalar>
CovarianceMatrix<Scalar> evolve_covariance(const Mat4<Scalar>& A,
                                           const DiffusionDiagonal<Scalar>& Ddiag,
                                           const CovarianceMatrix<Scalar>& V_init,
                                           Scalar t_final, Scalar dt) {
  if (!(dt > Scalar(0))) throw DomainError("evolve_covariance: dt must be > 0");
  if (!(t_final >= Scalar(0))) throw DomainError("evolve_covariance: t_final must be >= 0");
  if (t_final == Scalar(0)) return V_init;

  const Mat4<Scalar> D = Ddiag.asDiagonal();
  const auto rhs = [&](const Mat4<Scalar>& V) -> Mat4<Scalar> {
    return A * V + V * A.transpose() + D;
  };
  const long n = static_cast<long>(std::ceil(t_final / dt));
  const Scalar h = t_final / Scalar(n);
  const Scalar blowup = Scalar(1e60) * std::max(Scalar(1), V_init.template lpNorm<Eigen::Infinity>() +
                                                               D.template lpNorm<Eigen::Infinity>());
  Mat4<Scalar> V = V_init;
  for (long i = 0; i < n; ++i) {
    const Mat4<Scalar> k1 = rhs(V);
    const Mat4<Scalar> k2 = rhs(V + (h / Scalar(2)) * k1);
    const Mat4<Scalar> k3 = rhs(V + (h / Scalar(2)) * k2);
    const Mat4<Scalar> k4 = rhs(V + h * k3);
    V += (h / Scalar(6)) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
    if (!(V.template lpNorm<Eigen::Infinity>() < blowup))
      throw NumericalError("evolve_covariance: norm blow-up (step size unstable)");
  }
  return V;
}

// Covariance of the symmetric cavity mode A = u B + v B^dagger: the optical
// rows/columns of V pick up (u+v) on X and (u-v) on P, mechanical block unchanged.
template <class Scalar>
CovarianceMatrix<Scalar> cavity_basis_covariance(const CovarianceMatrix<Scalar>& V,
                                                 Scalar u, Scalar v) {
  if (std::abs(u * u - v * v - Scalar(1)) > Scalar(1e-9))
    throw DomainError("cavity_basis_covariance: (u, v) violate u^2 - v^2 = 1");
  Vec4<Scalar> s;
  s << u + v, u - v, Scalar(1), Scalar(1);
  return (s.asDiagonal() * V * s.asDiagonal()).eval();
}

template <class Scalar>
struct SteadyOccupations {
  Scalar n_phonon{};
  Scalar n_photon{};
  bool clamped = false;  // negative round-off clamped to zero
};

// n_phonon = (V_33 + V_44 - 1)/2 from the Bogoliubov-basis covariance,
// n_photon = (V'_11 + V'_22 - 1)/2 from the cavity-basis covariance.
template <class Scalar>
SteadyOccupations<Scalar> steady_state_occupations(const CovarianceMatrix<Scalar>& V,
                                                   const CovarianceMatrix<Scalar>& V_prime) {
  SteadyOccupations<Scalar> out;
  out.n_phonon = (V(2, 2) + V(3, 3) - Scalar(1)) / Scalar(2);
  out.n_photon = (V_prime(0, 0) + V_prime(1, 1) - Scalar(1)) / Scalar(2);
  for (Scalar* n : {&out.n_phonon, &out.n_photon}) {
    if (*n < Scalar(0)) {
      if (*n < Scalar(-1e-6))
        throw NumericalError("steady_state_occupations: occupation below -1e-6 (unconverged input?)");
      if (*n < Scalar(-1e-9)) out.clamped = true;
      *n = Scalar(0);
    }
  }
  return out;
}

// T_eff from inverting the Bose factor at Omega_eff: T = Omega_eff / ln(1 + 1/n).
template <class Scalar>
Scalar effective_temperature(Scalar n_phonon, Scalar Omega_eff) {
  if (n_phonon == Scalar(0)) return Scalar(0);
  if (!(n_phonon > Scalar(0)))
    throw DomainError("effective_temperature: n_phonon must be >= 0");
  if (!(Omega_eff > Scalar(0)))
    throw DomainError("effective_temperature: Omega_eff must be > 0");
  return Omega_eff / std::log1p(Scalar(1) / n_phonon);
}

}  // namespace pbom
