#pragma once

// Output records and the subcommand drivers behind the cpl tool.
// CSV column order is fixed: tau, T_K, a_m, F_J, dF_J, dF_asym_J, S_num_JK,
// S_asym_JK, S_residual_JK, terms_used, warnings. Values carry full double
// precision (17 significant digits); unavailable fields are emitted empty
// with a warning code. Output is deterministic byte for byte.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cpl/run_config.hpp"
#include "cpl/thermo.hpp"

namespace cpl {

struct OutputRecord {
  double tau = 0.0;
  double T_K = 0.0;
  double a_m = 0.0;
  std::optional<double> F_J;
  std::optional<double> dF_J;
  std::optional<double> dF_asym_J;
  std::optional<double> S_num_JK;
  std::optional<double> S_asym_JK;
  std::optional<double> S_residual_JK;
  long terms_used = 0;
  std::vector<std::string> warnings;
};

/// Full evaluation at one temperature. Domain gaps (e.g. b_beta at mu0 = 1)
/// become null fields with warning codes; numeric failures propagate.
OutputRecord compute_record(const RunConfig& cfg, double temperature_K);

std::string format_double(double v);  // %.17g
std::string csv_preamble(const RunConfig& cfg);
std::string csv_header();
std::string csv_row(const OutputRecord& r);
std::string records_to_csv(const RunConfig& cfg, const std::vector<OutputRecord>& rs);
std::string records_to_json(const RunConfig& cfg, const std::vector<OutputRecord>& rs);

// Subcommand drivers; each writes to `out` and returns a process exit code
// (0 ok, 1 validation, 2 numeric failure, 3 verify failure).
int run_free_energy(const RunConfig& cfg, std::ostream& out);
int run_sweep(const RunConfig& cfg, std::ostream& out);
int run_coefficients(const RunConfig& cfg, std::ostream& out);
int run_nernst_check(const RunConfig& cfg, std::ostream& out);
int run_verify(std::ostream& out);

}  // namespace cpl
