#include "gwdecoh/interferometer.hpp"

#include <cmath>
#include <sstream>

#include "gwdecoh/constants.hpp"
#include "gwdecoh/error.hpp"

namespace gwdecoh {

namespace {

void require_positive(const Quantity& q, Dim d, const char* name) {
  const double v = q.in(d);
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be positive and finite");
}

}  // namespace

void InstrumentConfig::validate() const {
  require_positive(atom_mass, dim::mass, "atom mass");
  require_positive(atom_velocity, dim::velocity, "atom velocity");
  require_positive(arm_time, dim::time, "arm time");
  require_positive(laser_omega, dim::frequency, "laser angular frequency");
  require_positive(photon_path, dim::length, "photon path length");
  if (!(sin_aperture > 0.0 && sin_aperture <= 1.0)) throw DomainError("sin(aperture) must lie in (0, 1]");
}

Quantity InstrumentConfig::area() const {
  return atom_velocity * atom_velocity * arm_time * arm_time * Quantity(sin_aperture);
}

Quantity InstrumentConfig::mu_atomic() const {
  return Quantity(2.0) * atom_mass * atom_velocity * atom_velocity * Quantity(sin_aperture) / constants::hbar();
}

Quantity InstrumentConfig::rotation_prefactor() const {
  return Quantity(2.0) * atom_mass * area() / constants::hbar();
}

Quantity InstrumentConfig::photon_time() const { return photon_path / constants::c(); }

double sagnac_phase(const InstrumentConfig& cfg, const Quantity& rotation) {
  return (cfg.rotation_prefactor() * rotation).scalar();
}

double lense_thirring_phase(const InstrumentConfig& cfg, const Quantity& frame_dragging) {
  return sagnac_phase(cfg, frame_dragging);
}

ApparatusFilter::ApparatusFilter(const Quantity& arm_time) : tau_(arm_time.in(dim::time)) {
  if (!(tau_ > 0.0) || !std::isfinite(tau_)) throw DomainError("filter arm time must be positive");
}

double ApparatusFilter::time_response(double tau) const {
  const double a = std::fabs(tau);
  if (a >= tau_) return 0.0;
  return (1.0 - a / tau_) / tau_;
}

double ApparatusFilter::freq_response(double omega) const {
  const double x = 0.5 * omega * tau_;
  if (std::fabs(x) < 1e-4) {
    // sinc^2 series; the direct quotient loses digits near zero
    const double x2 = x * x;
    return 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 45.0;
  }
  const double s = std::sin(x) / x;
  return s * s;
}

Quantity ApparatusFilter::time_response(const Quantity& tau) const {
  return {time_response(tau.in(dim::time)), dim::frequency};
}

double ApparatusFilter::freq_response(const Quantity& omega) const { return freq_response(omega.in(dim::frequency)); }

StrainSeries StrainSeries::from_samples(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size()) throw InputError("time and value arrays differ in length");
  if (times.size() < 3) throw InputError("strain series needs at least three samples");
  const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  if (!(dt > 0.0)) throw InputError("sample times must increase");
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double step = times[i] - times[i - 1];
    if (std::fabs(step - dt) > 1e-9 * dt) {
      std::ostringstream os;
      os << "non-uniform sampling at index " << i << ": step " << step << " s vs mean " << dt << " s";
      throw InputError(os.str());
    }
  }
  return StrainSeries{times.front(), dt, {values.begin(), values.end()}};
}

PhaseStencil make_phase_stencil(const InstrumentConfig& cfg, const StrainSeries& layout, double t_measure) {
  cfg.validate();
  const double tau = cfg.arm_time.in(dim::time);
  const double dt = layout.dt;
  if (!(dt > 0.0)) throw InputError("strain series step must be positive");
  if (dt > tau / 100.0 * (1.0 + 1e-9)) {
    std::ostringstream os;
    os << "strain series step " << dt << " s exceeds arm_time/100 = " << tau / 100.0 << " s";
    throw InputError(os.str());
  }
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(layout.samples.size());
  const double centre = t_measure - tau;
  const ApparatusFilter filter(cfg.arm_time);
  const double half_prefactor = 0.5 * cfg.rotation_prefactor().in(dim::time);

  const auto j_lo = static_cast<std::ptrdiff_t>(std::floor((centre - tau - layout.t0) / dt));
  const auto j_hi = static_cast<std::ptrdiff_t>(std::ceil((centre + tau - layout.t0) / dt));
  const double slack = 1e-9 * dt;
  if (t_measure - 2.0 * tau < layout.t0 - slack || t_measure > layout.t_end() + slack) {
    std::ostringstream os;
    os << "strain series [" << layout.t0 << ", " << layout.t_end() << "] s does not cover the window ["
       << t_measure - 2.0 * tau << ", " << t_measure << "] s";
    throw InputError(os.str());
  }

  PhaseStencil stencil;
  stencil.first = static_cast<std::size_t>(std::max<std::ptrdiff_t>(j_lo - 1, 0));
  const std::ptrdiff_t last = std::min<std::ptrdiff_t>(j_hi + 1, n - 1);
  stencil.weights.assign(static_cast<std::size_t>(last - static_cast<std::ptrdiff_t>(stencil.first) + 1), 0.0);
  for (std::ptrdiff_t j = j_lo; j <= j_hi; ++j) {
    const double s = centre - (layout.t0 + dt * static_cast<double>(j));
    // samples on the window edge carry zero weight
    if (std::fabs(s) >= tau * (1.0 - 1e-9)) continue;
    const double g = filter.time_response(s);
    if (j - 1 < 0 || j + 1 >= n) throw InputError("strain series too short for the central difference stencil");
    // dPhi = -(P/2) sum_j g_j (h_{j+1} - h_{j-1})
    const auto k = static_cast<std::size_t>(j) - stencil.first;
    stencil.weights[k + 1] -= half_prefactor * g;
    stencil.weights[k - 1] += half_prefactor * g;
  }
  return stencil;
}

double PhaseStencil::apply(std::span<const double> samples) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) acc += weights[i] * samples[first + i];
  return acc;
}

double two_arm_phase(const InstrumentConfig& cfg, const StrainSeries& series, double t_measure) {
  return make_phase_stencil(cfg, series, t_measure).apply(series.samples);
}

}  // namespace gwdecoh
