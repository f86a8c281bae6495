#pragma once

// Entropy from numerical differentiation of the engine free energy,
// low-temperature scaling-exponent fitting, and the Nernst-theorem verdict.

#include <string>
#include <vector>

#include "cpl/lifshitz.hpp"
#include "cpl/materials.hpp"

namespace cpl {

enum class EntropyMethod { analytic_asymptote, finite_difference };

struct EntropyCurve {
  std::vector<double> temperatures_K;  // strictly ascending
  std::vector<double> entropies_JK;
  EntropyMethod method = EntropyMethod::finite_difference;
};

struct EntropyPoint {
  double value_JK = 0.0;
  double step_used_K = 0.0;
  double error_estimate_JK = 0.0;
  std::vector<std::string> warnings;
};

/// S(T) = -dF/dT by central differences with one Richardson level, applied to
/// the thermal correction (dF/dT = d(Delta F)/dT since E(a) carries no T).
/// Default step h = step_fraction * T.
EntropyPoint entropy_numeric(const AtomModel& atom, const MaterialModel& material,
                             const Configuration& config, const SeriesSpec& series_spec,
                             const QuadratureSpec& quad_spec, bool with_conductivity,
                             double step_fraction = 0.05);

/// Entropy over a temperature grid, either by finite differences on the
/// engine or from the closed-form asymptote.
EntropyCurve entropy_curve(const AtomModel& atom, const MaterialModel& material,
                           double separation_m, const std::vector<double>& temperatures_K,
                           EntropyMethod method, const SeriesSpec& series_spec,
                           const QuadratureSpec& quad_spec, bool with_conductivity);

enum class NernstClassification { satisfied, violated };

struct NernstVerdict {
  NernstClassification classification = NernstClassification::satisfied;
  double fitted_exponent = 0.0;     // log-log slope of S(T)
  double extrapolated_s0_JK = 0.0;  // intercept of the {1, T^3} fit
  double reference_s0_JK = 0.0;     // residual-entropy plateau for this system
  double max_entropy_JK = 0.0;
  bool degenerate = false;  // all-zero curve, trivially satisfied
  EntropyCurve curve;
};

/// Fits the entropy curve over the grid and classifies: "satisfied" when the
/// extrapolated S(0) is below 5% of the curve maximum, "violated" otherwise
/// (the plateau case). The grid must span at least one decade of tau inside
/// [1e-3, 0.1]. FitFailure when the curve is non-monotonic beyond noise.
NernstVerdict nernst_check(const AtomModel& atom, const MaterialModel& material,
                           double separation_m, const std::vector<double>& temperatures_K,
                           const SeriesSpec& series_spec, const QuadratureSpec& quad_spec,
                           bool with_conductivity);

}  // namespace cpl
