#pragma once

namespace cavcp {

// CODATA 2018 values, SI units.
inline constexpr double kSpeedOfLight = 299792458.0;        // m/s
inline constexpr double kHbar = 1.054571817e-34;            // J s
inline constexpr double kBoltzmann = 1.380649e-23;          // J/K
inline constexpr double kEpsilon0 = 8.8541878128e-12;       // F/m
inline constexpr double kMu0 = 1.25663706212e-6;            // N/A^2
inline constexpr double kRydbergEnergy = 2.1798723611030e-18;  // J

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace cavcp
