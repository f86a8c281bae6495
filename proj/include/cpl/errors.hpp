#pragma once

#include <stdexcept>
#include <string>

namespace cpl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad user input: violated type invariants, malformed configuration.
struct ValidationError : Error {
  using Error::Error;
};

/// Arguments outside the mathematical domain of a formula.
struct DomainError : Error {
  using Error::Error;
};

/// A quadrature or series failed to meet its tolerance within budget.
struct NonConvergence : Error {
  using Error::Error;
};

/// Finite-difference step underflowed relative to the evaluation point.
struct DegenerateStep : Error {
  using Error::Error;
};

/// zeta = 0 requested on a permittivity with dc conductivity enabled;
/// the static limit is handled analytically elsewhere.
struct DivergentStaticLimit : Error {
  using Error::Error;
};

/// Operation requires a conductivity model that is not configured.
struct ModelMismatch : Error {
  using Error::Error;
};

/// Entropy curve unusable for exponent fitting.
struct FitFailure : Error {
  using Error::Error;
};

}  // namespace cpl
