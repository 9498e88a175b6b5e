#include <cmath>
#include <random>

#include <doctest.h>

#include "pbom/becmodel.hpp"
#include "support.hpp"

using namespace pbom;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("trap frequency from mirror geometry") {
  CHECK(trap_frequency(1.0, 2.0) == doctest::Approx(speed_of_light).epsilon(1e-15));
  // R = 6 m, L = 1.5 um is close to 2 pi x 2.25e10 rad/s
  const double w = trap_frequency(6.0, 1.5e-6);
  CHECK(w == doctest::Approx(2 * kPi * 2.25e10).epsilon(2e-3));
  CHECK_THROWS_AS(trap_frequency(6.0, 0.0), DomainError);
  CHECK_THROWS_AS(trap_frequency(-1.0, 1.0), DomainError);

  bool warn = false;
  trap_frequency(1.0, 2.0, &warn);  // L >> R/10
  CHECK(warn);
  trap_frequency(6.0, 1.5e-6, &warn);
  CHECK_FALSE(warn);
}

TEST_CASE("transverse excitation energy is the (s-1) ladder") {
  CHECK(transverse_excitation_energy<double>(1) == 0.0);
  CHECK(transverse_excitation_energy<double>(2) == 1.0);
  CHECK(transverse_excitation_energy<double>(5) == 4.0);
  CHECK_THROWS_AS(transverse_excitation_energy<double>(0), DomainError);
}

TEST_CASE("mode degeneracy matches direct (l, m) enumeration") {
  // oracle: count integer pairs l >= 0, m in Z with 2l + |m| + 1 = s
  for (int s = 1; s <= 12; ++s) {
    long count = 0;
    for (int l = 0; 2 * l + 1 <= s; ++l)
      for (int m = -s; m <= s; ++m)
        if (2 * l + std::abs(m) + 1 == s) ++count;
    CHECK(mode_degeneracy(s) == count);
  }
  CHECK(mode_degeneracy(1) == 1);
  CHECK(mode_degeneracy(2) == 2);
  CHECK(mode_degeneracy(4) == 4);
  CHECK_THROWS_AS(mode_degeneracy(0), DomainError);
}

TEST_CASE("critical photon number") {
  CHECK(critical_photon_number(150.0) == doctest::Approx(74022.03300817018).epsilon(1e-12));
  CHECK(critical_photon_number(50.0) == doctest::Approx(8224.670334241133).epsilon(1e-12));
  // compatible with the measured room-temperature value (6.3 +/- 2.4) x 1e4
  CHECK(std::abs(critical_photon_number(150.0) - 6.3e4) < 2.4e4);
  CHECK_THROWS_AS(critical_photon_number(0.0), DomainError);
  CHECK_THROWS_AS(critical_photon_number(-1.0), DomainError);
}

TEST_CASE("condensate occupation: frozen sums, threshold, limits") {
  CHECK(condensate_occupation(1e6, 0.0).N0 == 1e6);

  // independently computed by summing s/(e^{(s-1)/T}-1) to convergence
  const auto r150 = condensate_occupation(1e6, 150.0);
  CHECK_FALSE(r150.below_threshold);
  CHECK(r150.N0 == doctest::Approx(962225.5142317595).epsilon(1e-10));
  const auto r50 = condensate_occupation(1e6, 50.0);
  CHECK(r50.N0 == doctest::Approx(995687.9113715923).epsilon(1e-10));

  // N_t = 1e3 at T = 150: thermal population ~3.8e4 exceeds N_t
  const auto below = condensate_occupation(1e3, 150.0);
  CHECK(below.below_threshold);
  CHECK(below.N0 == 1.0);
  CHECK(excited_state_population(150.0) == doctest::Approx(37774.48576824058).epsilon(1e-10));

  CHECK_THROWS_AS(condensate_occupation(0.5, 10.0), DomainError);
  CHECK_THROWS_AS(condensate_occupation(1e6, -1.0), DomainError);
}

TEST_CASE("condensate occupation is monotone in T and N_t") {
  double prev = 1e18;
  for (double T : {1.0, 10.0, 50.0, 100.0, 150.0, 250.0}) {
    const double N0 = condensate_occupation(1e6, T).N0;
    CHECK(N0 < prev);
    prev = N0;
  }
  prev = 0.0;
  for (double Nt : {1e5, 3e5, 1e6, 3e6}) {
    const double N0 = condensate_occupation(Nt, 150.0).N0;
    CHECK(N0 > prev);
    prev = N0;
  }
}

TEST_CASE("interaction potential") {
  CHECK(interaction_potential(0.0) == 0.0);
  CHECK(interaction_potential(7e-4) == doctest::Approx(1.114084602e-4).epsilon(1e-9));
  CHECK(interaction_potential(4e-4) == doctest::Approx(6.366197723675814e-5).epsilon(1e-12));
  CHECK_THROWS_AS(interaction_potential(-1e-4), DomainError);
}

TEST_CASE("Bogoliubov coefficients: limits and identities") {
  const auto id = bogoliubov_coefficients(1e6, 0.0, 1.0);
  CHECK(id.u == 1.0);
  CHECK(id.v == 0.0);
  CHECK(id.omega_tilde == 1.0);

  // zeta = 4e-4, N0 = 9.6e5, eps = 1: y ~ 61.1, (u+v)^2 ~ 0.0902, omega ~ 11.1
  const double V0 = interaction_potential(4e-4);
  const auto b = bogoliubov_coefficients(9.6e5, V0, 1.0);
  const double y = 9.6e5 * V0;
  CHECK(y == doctest::Approx(61.1).epsilon(1e-3));
  const double upv2 = (b.u + b.v) * (b.u + b.v);
  CHECK(upv2 == doctest::Approx(1.0 / std::sqrt(1.0 + 2.0 * y)).epsilon(1e-12));
  CHECK(upv2 == doctest::Approx(0.0902).epsilon(2e-3));
  CHECK(b.omega_tilde == doctest::Approx(11.1).epsilon(2e-3));
  CHECK(b.v <= 0.0);

  CHECK_THROWS_AS(bogoliubov_coefficients(1e6, 1e-4, 0.0), DomainError);
  CHECK_THROWS_AS(bogoliubov_coefficients(-1.0, 1e-4, 1.0), DomainError);
}

TEST_CASE("Bogoliubov identities hold over random draws") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> uN(1.0, 1e7), uz(0.0, 1e-2);
  std::uniform_int_distribution<int> us(2, 10);
  for (int i = 0; i < 1000; ++i) {
    const double N0 = uN(rng);
    const double V0 = interaction_potential(uz(rng));
    const double eps = transverse_excitation_energy<double>(us(rng));
    const auto b = bogoliubov_coefficients(N0, V0, eps);
    CHECK(std::abs(b.u * b.u - b.v * b.v - 1.0) < 1e-12);
    // two algebraic routes to (u+v)^2
    const double upv2 = (b.u + b.v) * (b.u + b.v);
    CHECK(std::abs(upv2 - eps / b.omega_tilde) < 1e-12);
    CHECK(std::abs(upv2 * b.omega_tilde - eps) < 1e-12 * eps);
  }
}

TEST_CASE("effective coupling") {
  CHECK(effective_coupling(9.6e5, 0.0, 1.2, -std::sqrt(1.2 * 1.2 - 1.0)) == 0.0);

  // u + v = 0.300 with u^2 - v^2 = 1
  const double upv = 0.300, umv = 1.0 / upv;
  const double u = (upv + umv) / 2, v = (upv - umv) / 2;
  const double gbar = effective_coupling(9.6e5, 4.2e-7, u, v);
  CHECK(gbar == doctest::Approx(2.5e-4).epsilon(0.02));
  CHECK(2 * gbar > 6e-5);  // strong-coupling regime: 2 g_bar > kappa

  CHECK(effective_coupling(1e6, 4.2e-7, 1.0, 0.0) == doctest::Approx(8.4e-4).epsilon(1e-12));
  CHECK_THROWS_AS(effective_coupling(1e6, 4.2e-7, 1.5, -0.5), DomainError);
}

TEST_CASE("effective coupling decreases with the interaction parameter") {
  auto p = testing::fig2_params();
  double prev = 1e9;
  for (double zeta : {1e-4, 2e-4, 4e-4, 6e-4, 1e-3, 2e-3}) {
    p.zeta = zeta;
    const auto m = build_linear_model(p);
    CHECK(m.g_bar < prev);
    prev = m.g_bar;
  }
}

TEST_CASE("thermal occupation") {
  CHECK(thermal_occupation(1.0, 0.0) == 0.0);
  CHECK(thermal_occupation(7e-4, 0.05) == doctest::Approx(70.92973809142701).epsilon(1e-12));
  CHECK(thermal_occupation(11.1, 150.0) == doctest::Approx(13.019679617442439).epsilon(1e-12));
  CHECK_THROWS_AS(thermal_occupation(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(thermal_occupation(-1.0, 1.0), DomainError);

  // strictly decreasing in omega, increasing in T
  double prev = 1e18;
  for (double w : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const double n = thermal_occupation(w, 1.0);
    CHECK(n < prev);
    prev = n;
  }
  prev = 0.0;
  for (double T : {0.5, 1.0, 2.0, 5.0}) {
    const double n = thermal_occupation(1.0, T);
    CHECK(n > prev);
    prev = n;
  }

  // Rayleigh-Jeans regime: n ~ T/omega - 1/2 within 1% for omega/T < 0.02
  for (double x : {0.019, 0.01, 1e-3, 1e-5}) {
    const double n = thermal_occupation(x, 1.0);
    CHECK(std::abs(n - (1.0 / x - 0.5)) < 0.01 * n);
  }
}

TEST_CASE("build_linear_model: fig2 reference values") {
  const auto m = build_linear_model(testing::fig2_params());
  CHECK(m.N0 == doctest::Approx(962225.5142317595).epsilon(1e-10));
  CHECK(m.u == doctest::Approx(1.816843441808309).epsilon(1e-12));
  CHECK(m.v == doctest::Approx(-1.516878403841871).epsilon(1e-12));
  CHECK(m.omega_tilde == doctest::Approx(11.113701344165243).epsilon(1e-12));
  CHECK(m.g_bar == doctest::Approx(2.4716578945963355e-4).epsilon(1e-12));
  CHECK(m.n_th == doctest::Approx(13.003027314031536).epsilon(1e-12));
  CHECK(m.n_c == doctest::Approx(70.92973809142701).epsilon(1e-12));
  CHECK(m.kappa == doctest::Approx(6e-5).epsilon(1e-15));
  CHECK(2 * m.g_bar / m.kappa == doctest::Approx(8.24).epsilon(1e-3));
  CHECK(m.g_bar >= 0.0);
  CHECK(m.n_th >= 0.0);
  CHECK(m.n_c >= 0.0);
  CHECK(m.N0 > 0.0);
  CHECK(m.N0 <= 1e6);
}

TEST_CASE("build_linear_model: interaction-free zero-temperature limit") {
  auto p = testing::fig2_params();
  p.zeta = 0.0;
  p.T = 0.0;
  const auto m = build_linear_model(p);
  CHECK(m.u == 1.0);
  CHECK(m.v == 0.0);
  CHECK(m.n_th == 0.0);
  CHECK(m.N0 == p.N_t);
  CHECK(m.g_bar == doctest::Approx(2 * std::sqrt(p.N_t) * p.g).epsilon(1e-15));
}

TEST_CASE("build_linear_model: below-threshold input is a hard error") {
  auto p = testing::fig2_params();
  p.N_t = 1e3;
  CHECK_THROWS_AS(build_linear_model(p), ThresholdError);
}

TEST_CASE("PhysicalParams validation") {
  auto p = testing::fig2_params();
  p.gamma = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = testing::fig2_params();
  p.kappa_ex = 0.0;
  p.kappa_0 = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = testing::fig2_params();
  p.s = 1;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = testing::fig2_params();
  p.N_t = 0.2;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = testing::fig2_params();
  p.zeta = -1e-4;
  CHECK_THROWS_AS(p.validate(), DomainError);
  // negative detuning is allowed
  p = testing::fig2_params();
  p.delta_tilde = -7e-4;
  CHECK_NOTHROW(p.validate());
}
