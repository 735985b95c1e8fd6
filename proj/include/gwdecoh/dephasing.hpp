#pragma once

// Analytic decoherence budget of an atom interferometer in a stochastic
// gravitational-wave background.

#include <string>

#include "gwdecoh/background.hpp"
#include "gwdecoh/interferometer.hpp"
#include "gwdecoh/quantity.hpp"

namespace gwdecoh {

struct QuadratureOptions {
  /// Number of full oscillation periods of (1 - cos omega tau)^2 integrated
  /// exactly before switching to the mean envelope 3/2 for the remainder.
  int exact_periods = 1000;
  double relative_tolerance = 1e-10;
  /// Truncation is an error when the out-of-band estimate exceeds this
  /// fraction of the in-band result.
  double max_tail_fraction = 0.01;
};

struct VarianceEstimate {
  double value = 0.0;        // dimensionless phase variance
  double abs_error = 0.0;    // quadrature + envelope-remainder bound
  double tail_estimate = 0.0;  // flat continuation of S_h beyond both band edges
};

/// 4 mu^2 int (d omega / 2 pi) S_h[omega] (1 - cos omega tau)^2 / omega^2 over
/// the real line (S_h even), restricted to the spectrum band.
///
/// The positive half-band is split at the zeros omega = 2 pi k / tau and at
/// tabulated nodes and integrated with adaptive Gauss-Kronrod for the first
/// `exact_periods` periods. Beyond that the oscillating part -2 cos x +
/// cos(2x)/2 is subtracted: the mean envelope 3/2 S_h / omega^2 is integrated
/// and the oscillating remainder is bounded by integration by parts.
///
/// Throws TruncationError when the band misses more than
/// `max_tail_fraction` of the result.
VarianceEstimate variance_integral(const Quantity& mu, const Quantity& tau, const StrainSpectrum& spectrum,
                                   const QuadratureOptions& options = {});

/// Atomic channel: mu = mu_at, tau = tau_at.
VarianceEstimate variance_integral(const InstrumentConfig& cfg, const StrainSpectrum& spectrum,
                                   const QuadratureOptions& options = {});

/// Photonic channel: mu = omega_laser, tau = L_phot / c.
VarianceEstimate variance_integral_photonic(const InstrumentConfig& cfg, const StrainSpectrum& spectrum,
                                            const QuadratureOptions& options = {});

/// White-noise closed form mu_at^2 S0 2 tau_at.
double variance_white_atomic(const InstrumentConfig& cfg, const Quantity& level);
/// White-noise closed form omega_laser^2 S0 2 L_phot / c.
double variance_white_photonic(const InstrumentConfig& cfg, const Quantity& level);

/// Fringe contrast exp(-variance / 2) of a Gaussian phase.
double contrast(double variance_total);

/// Mirror displacement noise with the same phase effect: S_q = S0 L_phot^2.
Quantity equivalent_displacement_noise(const InstrumentConfig& cfg, const Quantity& level);

/// sqrt(S_q) targeted for mirror vibrations, m / sqrt(Hz).
inline constexpr double kVibrationNoiseTarget = 1e-12;

struct DephasingReport {
  double variance_atomic = 0.0;
  double variance_photonic = 0.0;
  /// atomic + photonic: the channels are treated as independent Gaussian
  /// phases, so their variances add.
  double variance_total = 0.0;
  double contrast = 1.0;
  double quadrature_abs_error = 0.0;
  Quantity displacement_noise{0.0, dim::displacement_psd};
  /// "white_closed_form", "quadrature", or
  /// "quadrature_photonic_flat_continuation" when the band ends far below
  /// c / L_phot and the photonic channel continues S_h[omega_max] flat.
  std::string route;
};

/// White spectra use the closed forms (flat continuation of the level over
/// all frequencies); other spectra are integrated over their band.
/// Truncation of the atomic channel is an error.
DephasingReport dephasing_report(const InstrumentConfig& cfg, const StrainSpectrum& spectrum,
                                 const QuadratureOptions& options = {});

}  // namespace gwdecoh
