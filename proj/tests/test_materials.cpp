#include <doctest.h>

#include <cmath>

#include "cpl/constants.hpp"
#include "cpl/materials.hpp"

using namespace cpl;

namespace {
Configuration micron_config(double T) { return Configuration{1e-6, T}; }
}  // namespace

TEST_CASE("epsilon_at: dc conductivity term") {
  Configuration config = micron_config(10.0);

  MaterialModel plain;
  plain.epsilon0 = 4.0;
  CHECK(epsilon_at(plain, 0.3, config) == 4.0);
  CHECK(epsilon_at(plain, 0.0, config) == 4.0);

  MaterialModel conducting = plain;
  conducting.conductivity.kind = ConductivityKind::constant;
  conducting.conductivity.sigma0_rad_s = 0.01 * config.omega_c();  // sigma~0 = 0.01
  // 4 + 4 pi 0.01 / 0.1 = 4 + 0.4 pi
  CHECK(epsilon_at(conducting, 0.1, config) ==
        doctest::Approx(5.2566370614359173).epsilon(1e-14));
  CHECK_THROWS_AS(epsilon_at(conducting, 0.0, config), DivergentStaticLimit);

  // continuity in sigma0 -> 0
  conducting.conductivity.sigma0_rad_s = 1e-30 * config.omega_c();
  CHECK(epsilon_at(conducting, 0.1, config) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("epsilon_at: monotone in zeta with conductivity, constant without") {
  Configuration config = micron_config(5.0);
  MaterialModel m;
  m.epsilon0 = 3.0;
  m.conductivity.kind = ConductivityKind::constant;
  m.conductivity.sigma0_rad_s = 1e-3 * config.omega_c();
  double prev = epsilon_at(m, 0.01, config);
  for (double zeta : {0.02, 0.05, 0.1, 0.5, 1.0, 5.0}) {
    const double cur = epsilon_at(m, zeta, config);
    CHECK(cur < prev);
    prev = cur;
  }
  const MaterialModel off = m.without_conductivity();
  for (double zeta : {0.01, 0.1, 1.0, 10.0}) CHECK(epsilon_at(off, zeta, config) == 3.0);
}

TEST_CASE("arrhenius conductivity vanishes faster than any power of T") {
  ConductivityModel c;
  c.kind = ConductivityKind::arrhenius;
  c.sigma0_rad_s = 1e10;
  c.activation_J = 100.0 * constants::k_boltzmann;  // activation temperature 100 K
  double prev_ratio = std::numeric_limits<double>::max();
  for (double T : {10.0, 5.0, 2.0, 1.0, 0.5}) {
    const double ratio = c.sigma_at(T) / std::pow(T, 8);
    CHECK(ratio < prev_ratio);
    prev_ratio = ratio;
  }
  CHECK(c.sigma_at(0.0) == 0.0);
}

TEST_CASE("dimensionless tau") {
  // 4 pi a kB T/(hbar c) at a = 1 um, T = 300 K
  Configuration config = micron_config(300.0);
  CHECK(config.tau() == doctest::Approx(1.6463324472).epsilon(1e-9));
  CHECK(dimensionless_tau(micron_config(0.0)) == 0.0);
  // tau depends on a*T only
  const Configuration doubled{2e-6, 150.0};
  CHECK(doubled.tau() == config.tau());
}

TEST_CASE("model validation") {
  MaterialModel m;
  m.epsilon0 = 0.5;
  CHECK_THROWS_AS(m.validate(), ValidationError);
  m.epsilon0 = 4.0;
  m.mu0 = 0.9;
  CHECK_THROWS_AS(m.validate(), ValidationError);
  m.mu0 = 1.0;
  CHECK_NOTHROW(m.validate());
  m.conductivity.kind = ConductivityKind::none;
  m.conductivity.sigma0_rad_s = 1.0;
  CHECK_THROWS_AS(m.validate(), ValidationError);

  AtomModel atom;
  atom.alpha0_m3 = -1.0;
  CHECK_THROWS_AS(atom.validate(), ValidationError);
  atom.alpha0_m3 = 1e-30;
  atom.beta0_m3 = 2e-30;
  CHECK(atom.validate().size() == 1);  // |beta0| > alpha0 warns, does not throw
  atom.beta0_m3 = -0.5e-30;
  CHECK(atom.validate().empty());

  Configuration c{0.0, 10.0};
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = Configuration{1e-6, -1.0};
  CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("dispersion tables interpolate and clamp") {
  Configuration config = micron_config(10.0);
  MaterialModel m;
  m.epsilon0 = 4.0;
  m.epsilon_table.frequency_rad_s = {1e13, 2e13, 4e13};
  m.epsilon_table.value = {4.0, 3.0, 2.0};
  m.validate();
  const double wc = config.omega_c();  // 1.4989...e14
  CHECK(epsilon_at(m, 1e13 / wc, config) == doctest::Approx(4.0));
  CHECK(epsilon_at(m, 1.5e13 / wc, config) == doctest::Approx(3.5));
  CHECK(epsilon_at(m, 1e15 / wc, config) == doctest::Approx(2.0));  // clamped

  m.epsilon_table.value = {4.0, 3.0};
  CHECK_THROWS_AS(m.validate(), ValidationError);

  AtomModel atom;
  atom.alpha0_m3 = 1e-30;
  CHECK(alpha_at(atom, 0.5, config) == 1e-30);
  CHECK(beta_at(atom, 0.5, config) == 0.0);
  atom.alpha_table.frequency_rad_s = {0.0, 1e14};
  atom.alpha_table.value = {1e-30, 0.5e-30};
  atom.validate();
  CHECK(alpha_at(atom, 0.5e14 / wc, config) == doctest::Approx(0.75e-30));
}
