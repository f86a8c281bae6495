#pragma once

// Brute-force Lifshitz numerics: reflection coefficients at imaginary
// frequency, the Phi integrand of the Matsubara sum, the full free energy,
// the zero-temperature energy, and the thermal correction Delta F.
//
// Internally Phi is volume-normalized (polarizabilities divided by a^3) so it
// is dimensionless; the k_B T/(8 a^3) prefactor is applied in one place when
// converting to joules.

#include <string>
#include <vector>

#include "cpl/materials.hpp"
#include "cpl/numeric_kernels.hpp"

namespace cpl {

struct ReflectionInput {
  double zeta = 0.0;     // dimensionless Matsubara frequency
  double y = 0.0;        // integration variable, y >= zeta
  double epsilon = 1.0;  // >= 1
  double mu = 1.0;       // >= 1

  void validate() const {
    if (!(y >= zeta) || !(zeta >= 0.0))
      throw ValidationError("ReflectionInput: need y >= zeta >= 0");
    if (!(epsilon >= 1.0) || !(mu >= 1.0))
      throw ValidationError("ReflectionInput: need epsilon >= 1 and mu >= 1");
  }
};

/// TM reflection coefficient (eps*y - sqrt(y^2 + zeta^2*gamma)) / (eps*y + ...),
/// gamma = eps*mu - 1.
double r_tm(const ReflectionInput& in);

/// TE reflection coefficient, mu in place of eps in the prefactors.
double r_te(const ReflectionInput& in);

/// Static (zeta = 0) TM coefficient: (eps0-1)/(eps0+1) without conductivity,
/// exactly 1 as soon as any dc conductivity is present.
double r_tm_static(const MaterialModel& material, bool with_conductivity);

/// Static TE coefficient (mu0-1)/(mu0+1); unaffected by conductivity.
double r_te_static(const MaterialModel& material);

/// Volume-normalized Phi(zeta) = Phi_alpha + Phi_beta:
///   Phi_alpha = -alpha^ Int_zeta^inf dy e^{-y} [2 y^2 r_tm - zeta^2 (r_tm + r_te)]
///   Phi_beta  = -beta^  Int_zeta^inf dy e^{-y} [2 y^2 r_te - zeta^2 (r_tm + r_te)]
/// with alpha^ = alpha/a^3. zeta = 0 is evaluated in closed form with the
/// static reflection coefficients (conductivity-aware).
double phi(double zeta, const AtomModel& atom, const MaterialModel& material,
           const Configuration& config, const QuadratureSpec& spec);

struct FreeEnergyResult {
  double value_J = 0.0;
  long terms_used = 0;
  double truncation_estimate_J = 0.0;
  double quadrature_error_J = 0.0;
  std::vector<std::string> warnings;
};

/// Primed Matsubara sum, F = (kB T / 8 a^3) Sum'_l Phi(zeta_l), zeta_l = tau*l.
/// with_conductivity=true honors the material's dc model: the l=0 TM
/// coefficient is taken from r_tm_static(.., true) and l >= 1 permittivities
/// from epsilon_at; false computes as if the dc model were absent.
FreeEnergyResult free_energy(const AtomModel& atom, const MaterialModel& material,
                             const Configuration& config, const SeriesSpec& series_spec,
                             const QuadratureSpec& quad_spec, bool with_conductivity);

/// T -> 0 limit of the Lifshitz sum: E(a) = hbar c/(32 pi a^4) Int_0^inf Phi dzeta
/// (conductivity disregarded; the continuum limit is the sigma-free one).
double zero_temperature_energy(const AtomModel& atom, const MaterialModel& material,
                               const Configuration& config, const QuadratureSpec& quad_spec);

/// Thermal correction Delta F = free_energy - zero_temperature_energy.
/// Evaluated as the per-cell regrouping
///   Sum_l [ (Phi_l + Phi_{l+1})/2 - (1/tau) Int_{zeta_l}^{zeta_{l+1}} Phi dzeta ],
/// which is the same telescoped sum-minus-integral without the global
/// cancellation. Emits a cancellation warning when |Delta F| is within 1e3x
/// of the combined numeric error estimate.
FreeEnergyResult delta_free_energy(const AtomModel& atom, const MaterialModel& material,
                                   const Configuration& config, const SeriesSpec& series_spec,
                                   const QuadratureSpec& quad_spec,
                                   bool with_conductivity = false);

namespace detail {
struct PhiValue {
  double value = 0.0;
  double quad_error = 0.0;
};
PhiValue phi_detail(double zeta, const AtomModel& atom, const MaterialModel& material,
                    const Configuration& config, const QuadratureSpec& spec);
}  // namespace detail

}  // namespace cpl
