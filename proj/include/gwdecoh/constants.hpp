#pragma once

// CODATA-2018 exact and recommended values.

#include "gwdecoh/quantity.hpp"

namespace gwdecoh::constants {

inline constexpr double kPi = 3.14159265358979323846;

/// Newtonian constant of gravitation, m^3 kg^-1 s^-2.
inline constexpr double kG = 6.67430e-11;
/// Speed of light in vacuum, m/s (exact).
inline constexpr double kC = 299792458.0;
/// Reduced Planck constant, J s (exact).
inline constexpr double kHbar = 1.054571817e-34;
/// Boltzmann constant, J/K (exact).
inline constexpr double kBoltzmann = 1.380649e-23;

Quantity G();
Quantity c();
Quantity hbar();
Quantity k_B();

Quantity planck_mass();
Quantity planck_length();
Quantity planck_time();
Quantity planck_energy();

/// Reduced Compton length hbar/(m c) of a positive mass.
Quantity compton_length(const Quantity& m);

/// 16 G / (5 c^5): converts an energy per mode into a strain spectral density.
Quantity strain_coupling();

}  // namespace gwdecoh::constants
