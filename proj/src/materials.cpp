#include "cpl/materials.hpp"

#include <algorithm>
#include <cmath>

#include "cpl/constants.hpp"

namespace cpl {

double DispersionTable::operator()(double xi) const {
  if (empty()) throw Error("DispersionTable: empty table evaluated");
  const auto& xs = frequency_rad_s;
  if (xi <= xs.front()) return value.front();
  if (xi >= xs.back()) return value.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), xi);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin());
  const double t = (xi - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return value[i - 1] + t * (value[i] - value[i - 1]);
}

void DispersionTable::validate(const std::string& name) const {
  if (empty()) return;
  if (frequency_rad_s.size() != value.size() || frequency_rad_s.size() < 2)
    throw ValidationError(name + ": table needs >= 2 equal-length columns");
  for (std::size_t i = 1; i < frequency_rad_s.size(); ++i)
    if (!(frequency_rad_s[i] > frequency_rad_s[i - 1]))
      throw ValidationError(name + ": frequencies must be strictly ascending");
}

double ConductivityModel::sigma_at(double temperature_K) const {
  switch (kind) {
    case ConductivityKind::none:
      return 0.0;
    case ConductivityKind::constant:
      return sigma0_rad_s;
    case ConductivityKind::arrhenius: {
      if (temperature_K <= 0.0) return 0.0;
      return sigma0_rad_s *
             std::exp(-activation_J / (constants::k_boltzmann * temperature_K));
    }
  }
  return 0.0;
}

void ConductivityModel::validate() const {
  if (sigma0_rad_s < 0.0) throw ValidationError("conductivity.sigma0 must be >= 0");
  if (kind == ConductivityKind::none && sigma0_rad_s != 0.0)
    throw ValidationError("conductivity.kind=none forces sigma0 = 0");
  if (activation_J < 0.0) throw ValidationError("conductivity.activation must be >= 0");
}

MaterialModel MaterialModel::without_conductivity() const {
  MaterialModel m = *this;
  m.conductivity = ConductivityModel{};
  return m;
}

void MaterialModel::validate() const {
  // epsilon0 = mu0 = 1 (vacuum plate) is allowed; the asymptotic coefficient
  // formulas impose their own stricter domains.
  if (!(epsilon0 >= 1.0)) throw ValidationError("material.epsilon0 must be >= 1");
  if (!(mu0 >= 1.0)) throw ValidationError("material.mu0 must be >= 1");
  conductivity.validate();
  epsilon_table.validate("material.epsilon_table");
  mu_table.validate("material.mu_table");
}

std::vector<std::string> AtomModel::validate() const {
  if (alpha0_m3 < 0.0) throw ValidationError("atom.alpha0_m3 must be >= 0");
  std::vector<std::string> warnings;
  if (std::abs(beta0_m3) > alpha0_m3)
    warnings.push_back("atom: |beta0| > alpha0 is unusual for real atoms");
  alpha_table.validate("atom.alpha_table");
  beta_table.validate("atom.beta_table");
  return warnings;
}

double Configuration::omega_c() const { return constants::c_light / (2.0 * separation_m); }

double Configuration::tau() const {
  return 4.0 * constants::pi * separation_m * constants::k_boltzmann * temperature_K /
         constants::hbar_c;
}

void Configuration::validate() const {
  if (!(separation_m > 0.0)) throw ValidationError("geometry.separation_m must be > 0");
  if (!(temperature_K >= 0.0)) throw ValidationError("geometry.temperature_K must be >= 0");
}

double dimensionless_tau(const Configuration& config) { return config.tau(); }

double epsilon_at(const MaterialModel& material, double zeta, const Configuration& config) {
  double eps = material.epsilon0;
  if (!material.epsilon_table.empty()) eps = material.epsilon_table(config.omega_c() * zeta);
  const double sigma = material.conductivity.sigma_at(config.temperature_K);
  if (material.conductivity.kind == ConductivityKind::none || sigma == 0.0) return eps;
  if (zeta <= 0.0)
    throw DivergentStaticLimit("epsilon_at: zeta = 0 with dc conductivity enabled");
  const double sigma_tilde = sigma / config.omega_c();
  return eps + 4.0 * constants::pi * sigma_tilde / zeta;
}

double mu_at(const MaterialModel& material, double zeta, const Configuration& config) {
  if (!material.mu_table.empty()) return material.mu_table(config.omega_c() * zeta);
  return material.mu0;
}

double alpha_at(const AtomModel& atom, double zeta, const Configuration& config) {
  if (!atom.alpha_table.empty()) return atom.alpha_table(config.omega_c() * zeta);
  return atom.alpha0_m3;
}

double beta_at(const AtomModel& atom, double zeta, const Configuration& config) {
  if (!atom.beta_table.empty()) return atom.beta_table(config.omega_c() * zeta);
  return atom.beta0_m3;
}

}  // namespace cpl
