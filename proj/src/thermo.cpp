#include "cpl/thermo.hpp"

#include <algorithm>
#include <cmath>

#include "cpl/asymptotics.hpp"
#include "cpl/constants.hpp"

namespace cpl {

EntropyPoint entropy_numeric(const AtomModel& atom, const MaterialModel& material,
                             const Configuration& config, const SeriesSpec& series_spec,
                             const QuadratureSpec& quad_spec, bool with_conductivity,
                             double step_fraction) {
  config.validate();
  if (!(config.temperature_K > 0.0))
    throw ValidationError("entropy_numeric: requires T > 0");
  if (!(step_fraction > 0.0 && step_fraction < 1.0))
    throw ValidationError("entropy_numeric: step_fraction must be in (0, 1)");

  EntropyPoint out;
  auto f = [&](double T) {
    Configuration c = config;
    c.temperature_K = T;
    const FreeEnergyResult d =
        delta_free_energy(atom, material, c, series_spec, quad_spec, with_conductivity);
    for (const auto& w : d.warnings)
      if (std::find(out.warnings.begin(), out.warnings.end(), w) == out.warnings.end())
        out.warnings.push_back(w);
    return d.value_J;
  };
  const DerivativeResult d =
      derivative(f, config.temperature_K, step_fraction * config.temperature_K);
  out.value_JK = -d.value;
  out.step_used_K = d.step_used;
  out.error_estimate_JK = d.error_estimate;
  return out;
}

EntropyCurve entropy_curve(const AtomModel& atom, const MaterialModel& material,
                           double separation_m, const std::vector<double>& temperatures_K,
                           EntropyMethod method, const SeriesSpec& series_spec,
                           const QuadratureSpec& quad_spec, bool with_conductivity) {
  EntropyCurve curve;
  curve.method = method;
  curve.temperatures_K = temperatures_K;
  curve.entropies_JK.reserve(temperatures_K.size());
  for (double T : temperatures_K) {
    if (method == EntropyMethod::analytic_asymptote) {
      curve.entropies_JK.push_back(entropy_low_temperature(atom, material, T));
    } else {
      Configuration c{separation_m, T};
      curve.entropies_JK.push_back(
          entropy_numeric(atom, material, c, series_spec, quad_spec, with_conductivity)
              .value_JK);
    }
  }
  return curve;
}

namespace {

// Least squares of S = s0 + b T^3.
double fit_intercept_cubic(const std::vector<double>& T, const std::vector<double>& S) {
  double sxx = 0.0, sx = 0.0, sy = 0.0, sxy = 0.0;
  const double n = static_cast<double>(T.size());
  for (std::size_t i = 0; i < T.size(); ++i) {
    const double x = T[i] * T[i] * T[i];
    sx += x;
    sxx += x * x;
    sy += S[i];
    sxy += x * S[i];
  }
  const double det = n * sxx - sx * sx;
  return (sy * sxx - sx * sxy) / det;
}

// Least-squares slope of ln S against ln T.
double fit_loglog_slope(const std::vector<double>& T, const std::vector<double>& S) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(T.size());
  for (std::size_t i = 0; i < T.size(); ++i) {
    const double x = std::log(T[i]);
    const double y = std::log(S[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

NernstVerdict nernst_check(const AtomModel& atom, const MaterialModel& material,
                           double separation_m, const std::vector<double>& temperatures_K,
                           const SeriesSpec& series_spec, const QuadratureSpec& quad_spec,
                           bool with_conductivity) {
  if (temperatures_K.size() < 4)
    throw ValidationError("nernst_check: need at least 4 grid points");
  for (std::size_t i = 1; i < temperatures_K.size(); ++i)
    if (!(temperatures_K[i] > temperatures_K[i - 1]))
      throw ValidationError("nernst_check: temperature grid must be strictly ascending");

  const Configuration lo{separation_m, temperatures_K.front()};
  const Configuration hi{separation_m, temperatures_K.back()};
  if (!(hi.tau() >= 10.0 * (1.0 - 1e-9) * lo.tau()))
    throw ValidationError("nernst_check: grid must span at least one decade of tau");
  if (lo.tau() < 1e-3 * (1.0 - 1e-9) || hi.tau() > 0.1 * (1.0 + 1e-9))
    throw ValidationError("nernst_check: tau grid must lie within [1e-3, 0.1]");

  NernstVerdict verdict;
  std::vector<double> errs;
  errs.reserve(temperatures_K.size());
  verdict.curve.method = EntropyMethod::finite_difference;
  verdict.curve.temperatures_K = temperatures_K;
  for (double T : temperatures_K) {
    Configuration c{separation_m, T};
    const EntropyPoint p =
        entropy_numeric(atom, material, c, series_spec, quad_spec, with_conductivity);
    verdict.curve.entropies_JK.push_back(p.value_JK);
    errs.push_back(p.error_estimate_JK);
  }
  const auto& S = verdict.curve.entropies_JK;

  double max_abs = 0.0, max_err = 0.0;
  for (std::size_t i = 0; i < S.size(); ++i) {
    max_abs = std::max(max_abs, std::abs(S[i]));
    max_err = std::max(max_err, errs[i]);
  }
  verdict.max_entropy_JK = max_abs;
  verdict.reference_s0_JK =
      (atom.alpha0_m3 > 0.0) ? residual_entropy(atom, material, Configuration{separation_m, 0.0})
                             : 0.0;

  // All-zero curve (vacuum plate or zero polarizabilities): trivially satisfied.
  bool all_tiny = true;
  for (std::size_t i = 0; i < S.size(); ++i)
    if (std::abs(S[i]) > std::max(1e2 * errs[i], 1e-300)) all_tiny = false;
  if (all_tiny) {
    verdict.degenerate = true;
    verdict.classification = NernstClassification::satisfied;
    return verdict;
  }

  for (std::size_t i = 1; i < S.size(); ++i)
    if (S[i] < S[i - 1] - 3.0 * (errs[i] + errs[i - 1]) - 1e-6 * max_abs)
      throw FitFailure("nernst_check: entropy curve non-monotonic beyond noise bounds");

  bool positive = true;
  for (double s : S) positive = positive && s > 0.0;
  if (!positive) throw FitFailure("nernst_check: entropy curve not positive on the grid");

  verdict.fitted_exponent = fit_loglog_slope(temperatures_K, S);
  verdict.extrapolated_s0_JK = fit_intercept_cubic(temperatures_K, S);
  verdict.classification =
      (std::abs(verdict.extrapolated_s0_JK) < 0.05 * max_abs)
          ? NernstClassification::satisfied
          : NernstClassification::violated;
  return verdict;
}

}  // namespace cpl
