#pragma once

// Atomic units: hbar = electron mass = bohr = 1.

namespace slitpath::units {

inline constexpr double hbar = 1.0;
inline constexpr double electron_mass = 1.0;

/// CODATA 2018 bohr radius in centimetres.
inline constexpr double bohr_radius_cm = 0.529177210903e-8;

/// 1 cm expressed in bohr (reciprocal of the bohr radius, rounded to the
/// 11 significant digits used throughout the project).
inline constexpr double bohr_per_cm = 1.8897261246e8;

constexpr double cm_to_bohr(double x_cm) noexcept { return x_cm * bohr_per_cm; }

} // namespace slitpath::units
