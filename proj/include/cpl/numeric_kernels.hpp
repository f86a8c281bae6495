#pragma once

// Reusable numerical primitives:
//   integrate_semi_infinite -- adaptive Gauss-Kronrod 7/15 on [lower, lower+L]
//                              for integrands with an exp(-y) * polynomial
//                              envelope, plus an analytic tail bound,
//   sum_series              -- convergent series with tail control and the
//                              primed-sum convention (first term halved),
//   derivative              -- central differences with one Richardson level.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "cpl/errors.hpp"

namespace cpl {

struct QuadratureSpec {
  double relative_tolerance = 1e-10;
  double absolute_floor = 1e-16;  // tail cut: window length L with e^{-L} < floor
  int max_refinements = 4000;

  void validate() const {
    if (!(relative_tolerance > 0.0) || relative_tolerance > 1e-2)
      throw ValidationError("QuadratureSpec.relative_tolerance must be in (0, 1e-2]");
    if (!(absolute_floor > 0.0) || absolute_floor >= 1.0)
      throw ValidationError("QuadratureSpec.absolute_floor must be in (0, 1)");
    if (max_refinements < 1)
      throw ValidationError("QuadratureSpec.max_refinements must be >= 1");
  }
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int refinements = 0;
};

struct SeriesSpec {
  double relative_tail_tolerance = 1e-12;
  long max_terms = 1000000;

  void validate() const {
    if (!(relative_tail_tolerance > 0.0) || relative_tail_tolerance > 1e-6)
      throw ValidationError("SeriesSpec.relative_tail_tolerance must be in (0, 1e-6]");
    if (max_terms < 16)
      throw ValidationError("SeriesSpec.max_terms must be >= 16");
  }
};

struct SeriesResult {
  double value = 0.0;
  double tail_estimate = 0.0;
  long terms_used = 0;
};

struct DerivativeResult {
  double value = 0.0;
  double step_used = 0.0;
  double error_estimate = 0.0;
};

namespace detail {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (positive half; index 7 is
// the center node). Gauss nodes sit at indices 1, 3, 5, 7.
inline constexpr double gk_node[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
inline void gk15_panel(F&& f, double a, double b, double& value, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k = gk_wk[7] * fc;
  double g = gk_wg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * gk_node[i];
    const double s = f(c - dx) + f(c + dx);
    k += gk_wk[i] * s;
    if (i & 1) g += gk_wg[i / 2] * s;
  }
  value = k * h;
  err = std::abs((k - g) * h);
}

struct Panel {
  double a, b, value, err;
};

}  // namespace detail

/// Integrates f over [lower, infinity) for integrands bounded by a polynomial
/// times e^{-y}. The window [lower, lower+L] is chosen from absolute_floor and
/// refined adaptively; the remainder beyond the window enters the error
/// estimate through an exponential tail bound.
template <class F>
QuadratureResult integrate_semi_infinite(F&& f, double lower, const QuadratureSpec& spec) {
  spec.validate();
  if (!(lower >= 0.0)) throw DomainError("integrate_semi_infinite: lower must be >= 0");

  double window = -std::log(spec.absolute_floor);
  window += 3.0 * std::log(2.0 + window);  // headroom for the polynomial factor
  const double cut = lower + window;

  // Seed panels grow geometrically from `lower`, where the mass sits.
  std::vector<detail::Panel> panels;
  {
    double a = lower, step = 1.0;
    while (a < cut) {
      double b = std::min(a + step, cut);
      detail::Panel p{a, b, 0.0, 0.0};
      detail::gk15_panel(f, p.a, p.b, p.value, p.err);
      panels.push_back(p);
      a = b;
      step *= 2.0;
    }
  }

  const double tail_bound = 2.0 * std::abs(f(cut));

  int refinements = 0;
  for (;;) {
    double total = 0.0, err_total = 0.0;
    std::size_t worst = 0;
    double worst_err = -1.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total += panels[i].value;
      err_total += panels[i].err;
      if (panels[i].err > worst_err) {
        worst_err = panels[i].err;
        worst = i;
      }
    }
    err_total += tail_bound;

    const double target = spec.relative_tolerance * std::abs(total) +
                          1e3 * std::numeric_limits<double>::denorm_min();
    if (err_total <= target)
      return {total, err_total, refinements};

    if (refinements >= spec.max_refinements)
      throw NonConvergence("integrate_semi_infinite: refinement budget exhausted");

    detail::Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b)) {
      // Width at rounding floor; freeze this panel's error contribution.
      panels[worst].err = 0.0;
      continue;
    }
    detail::Panel left{p.a, mid, 0.0, 0.0}, right{mid, p.b, 0.0, 0.0};
    detail::gk15_panel(f, left.a, left.b, left.value, left.err);
    detail::gk15_panel(f, right.a, right.b, right.value, right.err);
    panels[worst] = left;
    panels.push_back(right);
    ++refinements;
  }
}

/// Sums term(l) for l = 0, 1, 2, ... until three consecutive terms fall below
/// relative_tail_tolerance times the running sum. halve_first applies the
/// primed-sum convention (term l=0 divided by 2); it is implemented as a
/// post-subtraction so the halved and unhalved sums differ by exactly
/// 0.5*term(0).
template <class Term>
SeriesResult sum_series(Term&& term, const SeriesSpec& spec, bool halve_first) {
  spec.validate();
  double raw = 0.0;
  double t0 = 0.0;
  double prev = 0.0, last = 0.0;
  int small_run = 0;
  long l = 0;
  bool converged = false;
  for (; l < spec.max_terms; ++l) {
    const double t = term(l);
    if (l == 0) t0 = t;
    raw += t;
    prev = last;
    last = t;
    const double threshold = spec.relative_tail_tolerance * std::abs(raw);
    if (std::abs(t) <= threshold) {
      if (++small_run >= 3) {
        ++l;
        converged = true;
        break;
      }
    } else {
      small_run = 0;
    }
  }
  if (!converged)
    throw NonConvergence("sum_series: max_terms reached before tail criterion");

  // Geometric tail extrapolation from the last observed ratio.
  double tail = 3.0 * std::abs(last);
  if (std::abs(prev) > 0.0) {
    const double r = std::abs(last) / std::abs(prev);
    if (r < 0.99) tail = std::abs(last) * r / (1.0 - r);
  }
  return {halve_first ? raw - 0.5 * t0 : raw, tail, l};
}

/// Central-difference derivative of f at x with one Richardson extrapolation
/// level. Exact for quadratics. Reports the finer step actually used.
template <class F>
DerivativeResult derivative(F&& f, double x, double initial_step) {
  if (!(initial_step > 0.0)) throw ValidationError("derivative: initial_step must be > 0");
  double h = initial_step;
  if (x != 0.0 && h >= std::abs(x)) h = 0.5 * std::abs(x);
  if (x + h == x || x - h == x)
    throw DegenerateStep("derivative: step underflows relative to x");

  const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
  const double h2 = 0.5 * h;
  const double d2 = (f(x + h2) - f(x - h2)) / (2.0 * h2);
  const double value = (4.0 * d2 - d1) / 3.0;
  return {value, h2, std::abs(d2 - d1) / 3.0};
}

}  // namespace cpl
