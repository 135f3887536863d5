#pragma once

#include <cmath>

namespace ionmag {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// CODATA 2018
inline constexpr double kAmuKg = 1.66053906660e-27;          // kg
inline constexpr double kElementaryCharge = 1.602176634e-19; // C
inline constexpr double kEps0 = 8.8541878128e-12;            // F/m
inline constexpr double kHbar = 1.054571817e-34;             // J s

// Config files state frequencies as f = omega / 2pi.
inline double rad_from_khz(double f_khz) { return kTwoPi * 1e3 * f_khz; }
inline double rad_from_mhz(double f_mhz) { return kTwoPi * 1e6 * f_mhz; }
inline double khz_from_rad(double w) { return w / (kTwoPi * 1e3); }
inline double mhz_from_rad(double w) { return w / (kTwoPi * 1e6); }

inline const char* kVersion = "ionmag 0.1.0";

}  // namespace ionmag
