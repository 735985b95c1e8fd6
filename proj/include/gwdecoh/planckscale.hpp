#pragma once

// Planck-scale form of the phase variance, shared by every probe:
//
//   dPhi^2 / 2 = mu^2 S_h tau,  mu = 2 m v^2 sin(alpha) / hbar,  S_h = Theta_gr t_P^2
//             = (2 m v^2 sin(alpha) / (m_P c^2))^2 Theta_gr tau
//
// The order-of-magnitude form (m v^2 sin(alpha) / (m_P c^2))^2 Theta_gr tau
// drops the factor 4 and is exposed separately for comparison.

#include <vector>

#include "gwdecoh/quantity.hpp"

namespace gwdecoh {

struct ScalingInput {
  Quantity mass;        // kg
  Quantity velocity;    // m/s
  double sin_aperture;  // (0, 1]
  Quantity exposure;    // s
  Quantity theta_gr;    // 1/s

  void validate() const;
};

/// dPhi^2 / 2, equal to mu^2 S_h tau.
double scaling_variance(const ScalingInput& in);

/// (m v^2 sin(alpha) / (m_P c^2))^2 Theta_gr tau, order-unity factors dropped.
double scaling_variance_order_of_magnitude(const ScalingInput& in);

struct ScanRow {
  double mass = 0.0;      // kg
  double velocity = 0.0;  // m/s
  double variance = 0.0;  // dPhi^2
  bool on_contour = false;
};

struct ScanTable {
  /// Grid evaluations row by row (velocity outer, mass inner), followed by the
  /// dPhi^2 = 1 contour points of each velocity row that crosses it.
  std::vector<ScanRow> rows;
};

inline constexpr double kContourRelativeTolerance = 1e-3;

/// Evaluates dPhi^2 over masses x velocities (other parameters from the
/// template) and locates dPhi^2 = 1 along each velocity row by bisection in
/// log m, to kContourRelativeTolerance in m.
ScanTable transition_scan(const ScalingInput& tmpl, const std::vector<double>& masses,
                          const std::vector<double>& velocities);

}  // namespace gwdecoh
