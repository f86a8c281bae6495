#pragma once

// Physical constants (SI, 2019 redefinition where exact).

namespace cpl::constants {

inline constexpr double k_boltzmann = 1.380649e-23;     // J/K (exact)
inline constexpr double hbar        = 1.054571817e-34;  // J s
inline constexpr double c_light     = 299792458.0;      // m/s (exact)
inline constexpr double hbar_c      = hbar * c_light;   // J m
inline constexpr double pi          = 3.14159265358979323846;

}  // namespace cpl::constants
