#pragma once

// Run configuration: a flat, sectioned key = value file. Unknown keys are
// hard errors; silent typos in physics parameters are the worst failure mode.
//
//   [material]  epsilon0, mu0, conductivity.kind (none|constant|arrhenius),
//               conductivity.sigma0 (rad/s), conductivity.activation (J)
//   [atom]      alpha0_m3, beta0_m3
//   [geometry]  separation_m, temperature_K
//               or temperature_sweep.{start_K, stop_K, points, spacing}
//   [numerics]  quad_rel_tol, series_tail_tol, max_terms
//   [output]    format (csv|json), path

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cpl/materials.hpp"
#include "cpl/numeric_kernels.hpp"

namespace cpl {

enum class OutputFormat { csv, json };
enum class SweepSpacing { linear, log };

struct TemperatureSweep {
  double start_K = 0.0;
  double stop_K = 0.0;
  int points = 0;
  SweepSpacing spacing = SweepSpacing::linear;

  std::vector<double> grid() const;
};

struct RunConfig {
  MaterialModel material;
  AtomModel atom;
  double separation_m = 0.0;
  std::optional<double> temperature_K;
  std::optional<TemperatureSweep> sweep;
  SeriesSpec series;
  QuadratureSpec quad;
  OutputFormat format = OutputFormat::csv;
  std::string out_path;  // empty: stdout
  std::vector<std::string> warnings;

  Configuration configuration_at(double T) const { return Configuration{separation_m, T}; }
  bool with_conductivity() const { return material.has_dc_conductivity(); }
  /// The evaluation grid: the sweep if present, else the single temperature.
  std::vector<double> temperature_grid() const;
};

RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::string& path);

}  // namespace cpl
