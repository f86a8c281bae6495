#include "cpl/lifshitz.hpp"

#include <cmath>
#include <limits>

#include "cpl/constants.hpp"

namespace cpl {

double r_tm(const ReflectionInput& in) {
  in.validate();
  const double gamma = in.epsilon * in.mu - 1.0;
  const double w = std::sqrt(in.y * in.y + in.zeta * in.zeta * gamma);
  return (in.epsilon * in.y - w) / (in.epsilon * in.y + w);
}

double r_te(const ReflectionInput& in) {
  in.validate();
  const double gamma = in.epsilon * in.mu - 1.0;
  const double w = std::sqrt(in.y * in.y + in.zeta * in.zeta * gamma);
  return (in.mu * in.y - w) / (in.mu * in.y + w);
}

double r_tm_static(const MaterialModel& material, bool with_conductivity) {
  if (with_conductivity && material.has_dc_conductivity()) return 1.0;
  return (material.epsilon0 - 1.0) / (material.epsilon0 + 1.0);
}

double r_te_static(const MaterialModel& material) {
  return (material.mu0 - 1.0) / (material.mu0 + 1.0);
}

namespace detail {

PhiValue phi_detail(double zeta, const AtomModel& atom, const MaterialModel& material,
                    const Configuration& config, const QuadratureSpec& spec) {
  const double a3 = config.separation_m * config.separation_m * config.separation_m;
  const double alpha_hat = alpha_at(atom, zeta, config) / a3;
  const double beta_hat = beta_at(atom, zeta, config) / a3;
  if (alpha_hat == 0.0 && beta_hat == 0.0) return {};

  if (zeta == 0.0) {
    // Int_0^inf y^2 e^{-y} dy = 2, so Phi(0) = -4 (alpha^ r_tm0 + beta^ r_te0).
    const bool dc = material.has_dc_conductivity() && config.temperature_K > 0.0 &&
                    material.conductivity.sigma_at(config.temperature_K) > 0.0;
    const double v =
        -4.0 * (alpha_hat * r_tm_static(material, dc) + beta_hat * r_te_static(material));
    return {v, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(v)};
  }

  const double eps = epsilon_at(material, zeta, config);
  const double mu = mu_at(material, zeta, config);
  const double gamma = eps * mu - 1.0;
  const double z2 = zeta * zeta;

  auto integrand = [&](double y) {
    const double w = std::sqrt(y * y + z2 * gamma);
    const double rtm = (eps * y - w) / (eps * y + w);
    const double rte = (mu * y - w) / (mu * y + w);
    const double common = z2 * (rtm + rte);
    return std::exp(-y) *
           (alpha_hat * (2.0 * y * y * rtm - common) + beta_hat * (2.0 * y * y * rte - common));
  };
  const QuadratureResult q = integrate_semi_infinite(integrand, zeta, spec);
  return {-q.value, q.error_estimate};
}

}  // namespace detail

double phi(double zeta, const AtomModel& atom, const MaterialModel& material,
           const Configuration& config, const QuadratureSpec& spec) {
  return detail::phi_detail(zeta, atom, material, config, spec).value;
}

FreeEnergyResult free_energy(const AtomModel& atom, const MaterialModel& material,
                             const Configuration& config, const SeriesSpec& series_spec,
                             const QuadratureSpec& quad_spec, bool with_conductivity) {
  config.validate();
  if (!(config.temperature_K > 0.0))
    throw ValidationError("free_energy: requires T > 0 (use zero_temperature_energy at T = 0)");
  series_spec.validate();
  quad_spec.validate();

  const MaterialModel mat = with_conductivity ? material : material.without_conductivity();
  const double tau = config.tau();

  double quad_err = 0.0;
  auto term = [&](long l) {
    const auto p = detail::phi_detail(tau * static_cast<double>(l), atom, mat, config, quad_spec);
    quad_err += p.quad_error;
    return p.value;
  };
  const SeriesResult s = sum_series(term, series_spec, /*halve_first=*/true);

  const double prefactor = constants::k_boltzmann * config.temperature_K / 8.0;
  FreeEnergyResult out;
  out.value_J = prefactor * s.value;
  out.terms_used = s.terms_used;
  out.truncation_estimate_J = prefactor * s.tail_estimate;
  out.quadrature_error_J = prefactor * quad_err;
  return out;
}

double zero_temperature_energy(const AtomModel& atom, const MaterialModel& material,
                               const Configuration& config, const QuadratureSpec& quad_spec) {
  config.validate();
  quad_spec.validate();
  const MaterialModel mat = material.without_conductivity();

  QuadratureSpec inner = quad_spec;
  inner.relative_tolerance = std::max(quad_spec.relative_tolerance * 1e-2, 1e-13);

  auto outer = [&](double zeta) { return phi(zeta, atom, mat, config, inner); };
  const QuadratureResult q = integrate_semi_infinite(outer, 0.0, quad_spec);
  return constants::hbar_c / (32.0 * constants::pi * config.separation_m) * q.value;
}

namespace {

// One Matsubara cell of the sigma-free thermal correction:
// integral of phi over [za, zb] by bisected Gauss-Kronrod panels.
struct CellIntegral {
  double value = 0.0;
  double err = 0.0;
};

template <class F>
CellIntegral integrate_cell(F&& f, double za, double zb, double abs_target, int max_depth = 8) {
  double value, err;
  detail::gk15_panel(f, za, zb, value, err);
  if (err <= abs_target || max_depth <= 0) return {value, err};
  const double mid = 0.5 * (za + zb);
  if (!(mid > za && mid < zb)) return {value, err};
  const CellIntegral left = integrate_cell(f, za, mid, 0.5 * abs_target, max_depth - 1);
  const CellIntegral right = integrate_cell(f, mid, zb, 0.5 * abs_target, max_depth - 1);
  return {left.value + right.value, left.err + right.err};
}

}  // namespace

FreeEnergyResult delta_free_energy(const AtomModel& atom, const MaterialModel& material,
                                   const Configuration& config, const SeriesSpec& series_spec,
                                   const QuadratureSpec& quad_spec, bool with_conductivity) {
  config.validate();
  if (!(config.temperature_K > 0.0))
    throw ValidationError("delta_free_energy: requires T > 0");
  series_spec.validate();
  quad_spec.validate();

  const MaterialModel base = material.without_conductivity();
  const double tau = config.tau();
  const double eps_mach = std::numeric_limits<double>::epsilon();

  auto phi_base = [&](double zeta) {
    return detail::phi_detail(zeta, atom, base, config, quad_spec);
  };
  auto phi_base_value = [&](double zeta) { return phi(zeta, atom, base, config, quad_spec); };

  double acc = 0.0;        // Sum' Phi - (1/tau) Int Phi, cell by cell
  double err_acc = 0.0;    // propagated quadrature errors
  double round_acc = 0.0;  // rounding floor of the cell differences

  detail::PhiValue prev = phi_base(0.0);
  double max_abs_phi = std::abs(prev.value);
  int tiny_run = 0;
  long cells = 0;
  for (;; ++cells) {
    if (cells >= series_spec.max_terms)
      throw NonConvergence("delta_free_energy: Matsubara term cap reached");
    const double za = tau * static_cast<double>(cells);
    const double zb = tau * static_cast<double>(cells + 1);
    const detail::PhiValue next = phi_base(zb);
    max_abs_phi = std::max(max_abs_phi, std::abs(next.value));

    const double trap = 0.5 * (prev.value + next.value);
    const CellIntegral cell =
        integrate_cell(phi_base_value, za, zb, 1e-14 * tau * std::max(max_abs_phi, 1e-300));
    acc += trap - cell.value / tau;
    err_acc += 0.5 * (prev.quad_error + next.quad_error) + cell.err / tau;
    round_acc += eps_mach * (std::abs(trap) + std::abs(cell.value) / tau);

    if (std::abs(next.value) <= 1e-14 * max_abs_phi) {
      if (++tiny_run >= 3) break;
    } else {
      tiny_run = 0;
    }
    prev = next;
  }

  double truncation = 10.0 * std::abs(prev.value);
  long terms = cells + 1;

  // dc conductivity enters as per-term differences on top of the sigma-free
  // cells: closed-form jump at l = 0, direct differences for l >= 1.
  if (with_conductivity && material.has_dc_conductivity() &&
      material.conductivity.sigma_at(config.temperature_K) > 0.0) {
    const double a3 = std::pow(config.separation_m, 3);
    const double alpha_hat = atom.alpha0_m3 / a3;
    const double jump0 = -4.0 * alpha_hat * (1.0 - r_tm_static(material, false));
    acc += 0.5 * jump0;
    double scale = std::max(std::abs(jump0), max_abs_phi);
    int run = 0;
    for (long l = 1;; ++l) {
      if (l >= series_spec.max_terms)
        throw NonConvergence("delta_free_energy: conductivity term cap reached");
      const double zeta = tau * static_cast<double>(l);
      const detail::PhiValue with = detail::phi_detail(zeta, atom, material, config, quad_spec);
      const detail::PhiValue without = phi_base(zeta);
      const double d = with.value - without.value;
      acc += d;
      err_acc += with.quad_error + without.quad_error;
      scale = std::max(scale, std::abs(d));
      if (std::abs(d) <= 1e-14 * scale) {
        if (++run >= 3) break;
      } else {
        run = 0;
      }
    }
  }

  const double prefactor = constants::k_boltzmann * config.temperature_K / 8.0;
  const double combined_err = err_acc + round_acc;

  FreeEnergyResult out;
  out.value_J = prefactor * acc;
  out.terms_used = terms;
  out.truncation_estimate_J = prefactor * truncation;
  out.quadrature_error_J = prefactor * combined_err;
  if (combined_err > 0.0 && std::abs(acc) < 1e3 * combined_err)
    out.warnings.push_back(
        "cancellation: |Delta F| is within 1e3x of the combined numeric error estimate");
  return out;
}

}  // namespace cpl
