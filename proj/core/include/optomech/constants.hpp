#pragma once

namespace optomech::constants {

// CODATA 2018 values, SI units.
inline constexpr double c_light = 299792458.0;    // m / s
inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double k_boltzmann = 1.380649e-23; // J / K

} // namespace optomech::constants
