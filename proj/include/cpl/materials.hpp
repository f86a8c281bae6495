#pragma once

// Plate material response (epsilon, mu, dc conductivity) and atomic
// polarizabilities, evaluated at imaginary Matsubara frequencies.
// Inputs are SI; all engine math runs in the dimensionless variables
// zeta = xi/omega_c with omega_c = c/(2a).

#include <string>
#include <vector>

#include "cpl/errors.hpp"

namespace cpl {

/// Linear interpolation table on imaginary frequency (rad/s), clamped at the
/// ends. Empty table means "use the static value".
struct DispersionTable {
  std::vector<double> frequency_rad_s;
  std::vector<double> value;

  bool empty() const { return frequency_rad_s.empty(); }
  double operator()(double xi) const;
  void validate(const std::string& name) const;
};

enum class ConductivityKind { none, constant, arrhenius };

struct ConductivityModel {
  ConductivityKind kind = ConductivityKind::none;
  double sigma0_rad_s = 0.0;   // dc conductivity, Gaussian convention
  double activation_J = 0.0;   // arrhenius: sigma(T) = sigma0 * exp(-activation/(kB T))

  /// sigma(T) in rad/s; zero for kind=none and at T=0 for arrhenius.
  double sigma_at(double temperature_K) const;
  void validate() const;
};

struct MaterialModel {
  double epsilon0 = 1.0;  // static permittivity
  double mu0 = 1.0;       // static permeability
  ConductivityModel conductivity;
  DispersionTable epsilon_table;  // optional dispersion overrides
  DispersionTable mu_table;

  double gamma0() const { return epsilon0 * mu0 - 1.0; }
  bool has_dc_conductivity() const {
    return conductivity.kind != ConductivityKind::none && conductivity.sigma0_rad_s > 0.0;
  }
  MaterialModel without_conductivity() const;
  void validate() const;
};

struct AtomModel {
  double alpha0_m3 = 0.0;  // static electric polarizability (volume)
  double beta0_m3 = 0.0;   // static magnetic polarizability (volume)
  DispersionTable alpha_table;
  DispersionTable beta_table;

  /// Throws on hard violations; returns soft warnings (|beta0| > alpha0).
  std::vector<std::string> validate() const;
};

struct Configuration {
  double separation_m = 0.0;
  double temperature_K = 0.0;

  double omega_c() const;  // c/(2a), rad/s
  double tau() const;      // 4 pi a kB T / (hbar c)
  void validate() const;
};

/// tau = 4 pi a kB T / (hbar c); the Matsubara frequencies are zeta_l = tau*l.
double dimensionless_tau(const Configuration& config);

/// Permittivity at dimensionless imaginary frequency zeta. With conductivity
/// enabled this is epsilon + 4 pi sigma~0(T)/zeta, sigma~0 = sigma/omega_c;
/// zeta = 0 then throws DivergentStaticLimit (the static limit is handled by
/// r_tm_static, never here).
double epsilon_at(const MaterialModel& material, double zeta, const Configuration& config);

/// Permeability at zeta (table override or the static mu0).
double mu_at(const MaterialModel& material, double zeta, const Configuration& config);

/// Atomic polarizabilities at zeta, in m^3.
double alpha_at(const AtomModel& atom, double zeta, const Configuration& config);
double beta_at(const AtomModel& atom, double zeta, const Configuration& config);

}  // namespace cpl
