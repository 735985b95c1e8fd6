#include "gwdecoh/planckscale.hpp"

#include <algorithm>
#include <cmath>

#include "gwdecoh/constants.hpp"
#include "gwdecoh/error.hpp"

namespace gwdecoh {

namespace {

/// m v^2 sin(alpha) / (m_P c^2)
double kinetic_ratio(const ScalingInput& in) {
  using namespace constants;
  return (in.mass * in.velocity * in.velocity * Quantity(in.sin_aperture) / (planck_mass() * c() * c())).scalar();
}

double contour_mass(ScalingInput in, double m_lo, double m_hi) {
  // dPhi^2 is increasing in m; bisect on log m
  double lo = std::log(m_lo);
  double hi = std::log(m_hi);
  while (hi - lo > std::log1p(kContourRelativeTolerance) * 0.5) {
    const double mid = 0.5 * (lo + hi);
    in.mass = units::kilograms(std::exp(mid));
    if (2.0 * scaling_variance(in) < 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

}  // namespace

void ScalingInput::validate() const {
  if (!(mass.in(dim::mass) >= 0.0)) throw DomainError("scaling mass must be >= 0");
  if (!(velocity.in(dim::velocity) >= 0.0)) throw DomainError("scaling velocity must be >= 0");
  if (!(exposure.in(dim::time) >= 0.0)) throw DomainError("scaling exposure must be >= 0");
  if (!(theta_gr.in(dim::frequency) >= 0.0)) throw DomainError("theta_gr must be >= 0");
  if (!(sin_aperture >= 0.0 && sin_aperture <= 1.0)) throw DomainError("sin(aperture) must lie in [0, 1]");
}

double scaling_variance(const ScalingInput& in) {
  in.validate();
  const double k = 2.0 * kinetic_ratio(in);
  return k * k * (in.theta_gr * in.exposure).scalar();
}

double scaling_variance_order_of_magnitude(const ScalingInput& in) {
  in.validate();
  const double k = kinetic_ratio(in);
  return k * k * (in.theta_gr * in.exposure).scalar();
}

ScanTable transition_scan(const ScalingInput& tmpl, const std::vector<double>& masses,
                          const std::vector<double>& velocities) {
  if (masses.empty() || velocities.empty()) throw DomainError("transition scan grid is empty");
  for (double m : masses) {
    if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("scan masses must be positive and finite");
  }
  for (double v : velocities) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("scan velocities must be positive and finite");
  }
  std::vector<double> sorted = masses;
  std::sort(sorted.begin(), sorted.end());

  ScanTable table;
  std::vector<ScanRow> contour;
  for (double v : velocities) {
    ScalingInput in = tmpl;
    in.velocity = units::meters_per_second(v);
    for (double m : sorted) {
      in.mass = units::kilograms(m);
      table.rows.push_back({m, v, 2.0 * scaling_variance(in), false});
    }
    in.mass = units::kilograms(sorted.front());
    const double first = 2.0 * scaling_variance(in);
    in.mass = units::kilograms(sorted.back());
    const double last = 2.0 * scaling_variance(in);
    if (first < 1.0 && last >= 1.0) {
      const double m_star = contour_mass(in, sorted.front(), sorted.back());
      in.mass = units::kilograms(m_star);
      contour.push_back({m_star, v, 2.0 * scaling_variance(in), true});
    }
  }
  table.rows.insert(table.rows.end(), contour.begin(), contour.end());
  return table;
}

}  // namespace gwdecoh
