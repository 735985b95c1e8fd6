#pragma once

// Rhombic atom-interferometer geometry, rotation phases and the triangular
// apparatus filter.

#include <span>
#include <vector>

#include "gwdecoh/quantity.hpp"

namespace gwdecoh {

/// Parameters of a rhombic matter-wave gyrometer plus the optical path of
/// its beam-splitter lasers.
struct InstrumentConfig {
  Quantity atom_mass;          // kg
  Quantity atom_velocity;      // m/s
  Quantity arm_time;           // s, time of flight along one rhomb side
  double sin_aperture = 0.0;   // sin(alpha), in (0, 1]
  Quantity laser_omega;        // rad/s, angular frequency of the laser
  Quantity photon_path;        // m, single-pass laser-to-atom length

  /// Throws DomainError/DimensionError unless every invariant holds.
  void validate() const;

  /// A = v^2 tau^2 sin(alpha).
  Quantity area() const;
  /// mu_at = 2 m v^2 sin(alpha) / hbar = 2 m A / (hbar tau^2).
  Quantity mu_atomic() const;
  /// 2 m A / hbar, the factor turning a rotation rate into a phase.
  Quantity rotation_prefactor() const;
  /// tau_phot = L_phot / c (single pass).
  Quantity photon_time() const;
};

/// Sagnac phase 2 m A Omega / hbar.
double sagnac_phase(const InstrumentConfig& cfg, const Quantity& rotation);
/// Lense-Thirring phase; same prefactor as the Sagnac phase.
double lense_thirring_phase(const InstrumentConfig& cfg, const Quantity& frame_dragging);

/// Unit-area triangular window g(tau) of half-width tau_at, and its Fourier
/// transform (sin(omega tau_at / 2) / (omega tau_at / 2))^2.
class ApparatusFilter {
 public:
  explicit ApparatusFilter(const Quantity& arm_time);

  Quantity time_response(const Quantity& tau) const;
  double freq_response(const Quantity& omega) const;

  // Raw-number forms (s, rad/s).
  double time_response(double tau) const;
  double freq_response(double omega) const;

  double arm_time() const { return tau_; }

 private:
  double tau_;
};

/// Uniformly sampled strain h_12(t0 + j dt).
struct StrainSeries {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<double> samples;

  double t_end() const { return t0 + dt * static_cast<double>(samples.size() - 1); }

  /// Builds a series from explicit sample times; InputError unless the
  /// spacing is uniform to 1e-9 relative.
  static StrainSeries from_samples(std::span<const double> times, std::span<const double> values);
};

/// Gravitational-wave dephasing of the two arms at measurement time t.
///
/// The atoms traverse the rhomb during [t - 2 tau_at, t]. The strain is
/// averaged with the apparatus filter centred at t - tau_at, and the phase is
/// -(2 m A / hbar) d(g * h)/dt, with the time derivative taken by central
/// differences inside a trapezoid sum. This normalization gives the response
/// |dPhi|^2 = 4 mu^2 (1 - cos omega tau)^2 / omega^2 to a unit sinusoid.
///
/// Requires dt <= tau_at / 100 and samples covering the window (plus one
/// neighbour where the window edge is not on the grid).
double two_arm_phase(const InstrumentConfig& cfg, const StrainSeries& series, double t_measure);

/// Precomputed linear functional form of two_arm_phase for a fixed grid
/// position: dPhi = sum_j weight_j h_{first + j}.
struct PhaseStencil {
  std::size_t first = 0;
  std::vector<double> weights;

  double apply(std::span<const double> samples) const;
};

PhaseStencil make_phase_stencil(const InstrumentConfig& cfg, const StrainSeries& layout, double t_measure);

}  // namespace gwdecoh
