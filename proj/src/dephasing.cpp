#include "gwdecoh/dephasing.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>
#include <vector>

#include "gwdecoh/constants.hpp"
#include "gwdecoh/error.hpp"

namespace gwdecoh {

namespace {

using boost::math::quadrature::gauss_kronrod;
using constants::kPi;

constexpr unsigned kMaxDepth = 20;

/// (1 - cos omega tau)^2 / omega^2 written as 4 sin^4(omega tau / 2) / omega^2.
double response_weight(double omega, double tau) {
  if (omega == 0.0) return 0.0;
  const double s = std::sin(0.5 * omega * tau);
  const double s2 = s * s;
  return 4.0 * s2 * s2 / (omega * omega);
}

struct Partial {
  double value = 0.0;
  double error = 0.0;
};

template <class F>
Partial integrate_pieces(F f, const std::vector<double>& cuts, double rel_tol) {
  Partial total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] > cuts[i])) continue;
    double err = 0.0;
    total.value += gauss_kronrod<double, 15>::integrate(f, cuts[i], cuts[i + 1], kMaxDepth, rel_tol, &err);
    total.error += err;
  }
  return total;
}

/// Sorted cut points in [lo, hi]: the end points, the zeros 2 pi k / tau and
/// any extra breakpoints.
std::vector<double> oscillation_cuts(double lo, double hi, double tau, const std::vector<double>& extra) {
  std::vector<double> cuts{lo, hi};
  const double period = 2.0 * kPi / tau;
  for (double k = std::ceil(lo / period); k * period < hi; k += 1.0) {
    if (k * period > lo) cuts.push_back(k * period);
  }
  for (double b : extra) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  return cuts;
}

/// Cuts in [lo, hi] at every decade and at extra breakpoints.
std::vector<double> decade_cuts(double lo, double hi, const std::vector<double>& extra) {
  std::vector<double> cuts{lo, hi};
  for (double d = std::pow(10.0, std::ceil(std::log10(lo))); d < hi; d *= 10.0) {
    if (d > lo) cuts.push_back(d);
  }
  for (double b : extra) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  return cuts;
}

/// int_0^a (1 - cos omega tau)^2 / omega^2 d omega for the low-frequency
/// tail estimate.
double weight_integral_to(double a, double tau, const QuadratureOptions& options) {
  if (a <= 0.0) return 0.0;
  const double switch_omega = 2.0 * kPi * options.exact_periods / tau;
  if (a > switch_omega) return 0.5 * kPi * tau - 1.5 / a;
  const auto w = [tau](double x) { return response_weight(x, tau); };
  return integrate_pieces(w, oscillation_cuts(0.0, a, tau, {}), 1e-8).value;
}

/// Total variation of f over a log grid plus breakpoints.
template <class F>
double sampled_total_variation(F f, double lo, double hi, const std::vector<double>& breakpoints) {
  std::vector<double> xs;
  constexpr int kSamples = 2000;
  const double ratio = std::log(hi / lo);
  for (int i = 0; i < kSamples; ++i) xs.push_back(lo * std::exp(ratio * i / kSamples));
  xs.push_back(hi);
  for (double b : breakpoints) {
    if (b > lo && b < hi) xs.push_back(b);
  }
  std::sort(xs.begin(), xs.end());
  double tv = 0.0;
  double prev = f(xs.front());
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double cur = f(xs[i]);
    tv += std::fabs(cur - prev);
    prev = cur;
  }
  return tv;
}

double white_level(const StrainSpectrum& spectrum) {
  if (const auto* w = std::get_if<WhiteModel>(&spectrum.model())) return w->level;
  return std::get<PowerLawModel>(spectrum.model()).amplitude;
}

double check_level(const Quantity& level) {
  const double s = level.in(dim::strain_psd);
  if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("spectral level S0 must be finite and >= 0");
  return s;
}

}  // namespace

VarianceEstimate variance_integral(const Quantity& mu, const Quantity& tau, const StrainSpectrum& spectrum,
                                   const QuadratureOptions& options) {
  const double mu_v = mu.in(dim::frequency);
  const double tau_v = tau.in(dim::time);
  if (!(tau_v > 0.0)) throw DomainError("variance_integral: tau must be positive");
  if (!(mu_v >= 0.0)) throw DomainError("variance_integral: mu must be >= 0");

  const double lo = spectrum.omega_min();
  const double hi = spectrum.omega_max();
  const auto breaks = spectrum.breakpoints();
  const double switch_omega = 2.0 * kPi * options.exact_periods / tau_v;

  const auto exact = [&](double w) { return spectrum(w) * response_weight(w, tau_v); };
  Partial in_band = integrate_pieces(exact, oscillation_cuts(lo, std::min(hi, switch_omega), tau_v, breaks),
                                     options.relative_tolerance);

  if (hi > switch_omega) {
    const double a = std::max(lo, switch_omega);
    // mean of (1 - cos x)^2 is 3/2; integrate the envelope in log omega
    const auto envelope = [&](double u) {
      // exp(log(hi)) may round past the band edge
      const double w = std::clamp(std::exp(u), a, hi);
      return 1.5 * spectrum(w) / w;
    };
    std::vector<double> log_cuts;
    for (double c : decade_cuts(a, hi, breaks)) log_cuts.push_back(std::log(c));
    log_cuts.front() = std::log(a);
    log_cuts.back() = std::log(hi);
    const Partial env = integrate_pieces(envelope, log_cuts, options.relative_tolerance);
    in_band.value += env.value;
    in_band.error += env.error;

    // |int f(w) cos(k w) dw| <= (|f(a)| + |f(b)| + TV f) / k, f = S_h / w^2,
    // for the -2 cos(w tau) and cos(2 w tau)/2 terms.
    const auto f = [&](double w) { return spectrum(w) / (w * w); };
    const double ibp = std::fabs(f(a)) + std::fabs(f(hi)) + sampled_total_variation(f, a, hi, breaks);
    in_band.error += (2.0 / tau_v + 0.5 / (2.0 * tau_v)) * ibp;
  }

  // Two-sided: the negative half-line mirrors the positive one.
  const double scale = 4.0 * mu_v * mu_v / (2.0 * kPi) * 2.0;
  VarianceEstimate out;
  out.value = scale * in_band.value;
  out.abs_error = scale * in_band.error;

  const double high_tail = 1.5 * spectrum(hi) / hi;
  const double low_tail = spectrum(lo) * weight_integral_to(lo, tau_v, options);
  out.tail_estimate = scale * (high_tail + low_tail);

  if (out.tail_estimate > options.max_tail_fraction * out.value) {
    std::ostringstream os;
    os << "spectrum band [" << lo << ", " << hi << "] rad/s too narrow for tau = " << tau_v
       << " s: out-of-band estimate " << out.tail_estimate << " vs in-band variance " << out.value;
    throw TruncationError(os.str(), out.tail_estimate, out.value);
  }
  return out;
}

VarianceEstimate variance_integral(const InstrumentConfig& cfg, const StrainSpectrum& spectrum,
                                   const QuadratureOptions& options) {
  cfg.validate();
  return variance_integral(cfg.mu_atomic(), cfg.arm_time, spectrum, options);
}

VarianceEstimate variance_integral_photonic(const InstrumentConfig& cfg, const StrainSpectrum& spectrum,
                                            const QuadratureOptions& options) {
  cfg.validate();
  return variance_integral(cfg.laser_omega, cfg.photon_time(), spectrum, options);
}

double variance_white_atomic(const InstrumentConfig& cfg, const Quantity& level) {
  check_level(level);
  cfg.validate();
  const Quantity mu = cfg.mu_atomic();
  return (mu * mu * level * Quantity(2.0) * cfg.arm_time).scalar();
}

double variance_white_photonic(const InstrumentConfig& cfg, const Quantity& level) {
  check_level(level);
  cfg.validate();
  return (cfg.laser_omega * cfg.laser_omega * level * Quantity(2.0) * cfg.photon_time()).scalar();
}

double contrast(double variance_total) {
  if (!(variance_total >= 0.0)) throw DomainError("contrast: variance must be >= 0");
  return std::exp(-0.5 * variance_total);
}

Quantity equivalent_displacement_noise(const InstrumentConfig& cfg, const Quantity& level) {
  check_level(level);
  const double length = cfg.photon_path.in(dim::length);
  if (!(length >= 0.0)) throw DomainError("photon path length must be >= 0");
  return level * cfg.photon_path * cfg.photon_path;
}

DephasingReport dephasing_report(const InstrumentConfig& cfg, const StrainSpectrum& spectrum,
                                 const QuadratureOptions& options) {
  cfg.validate();
  DephasingReport r;
  if (spectrum.is_white()) {
    const Quantity level = units::per_hertz(white_level(spectrum));
    r.variance_atomic = variance_white_atomic(cfg, level);
    r.variance_photonic = variance_white_photonic(cfg, level);
    r.displacement_noise = equivalent_displacement_noise(cfg, level);
    r.route = "white_closed_form";
  } else {
    const VarianceEstimate atomic = variance_integral(cfg, spectrum, options);
    r.variance_atomic = atomic.value;
    r.quadrature_abs_error = atomic.abs_error;
    r.route = "quadrature";
    try {
      const VarianceEstimate photonic = variance_integral_photonic(cfg, spectrum, options);
      r.variance_photonic = photonic.value;
      r.quadrature_abs_error += photonic.abs_error;
    } catch (const TruncationError&) {
      // the photonic response peaks near c / L, far above any tabulated band
      r.variance_photonic = variance_white_photonic(cfg, units::per_hertz(spectrum(spectrum.omega_max())));
      r.route = "quadrature_photonic_flat_continuation";
    }
    r.displacement_noise = equivalent_displacement_noise(cfg, units::per_hertz(spectrum.max_in_band()));
  }
  r.variance_total = r.variance_atomic + r.variance_photonic;
  r.contrast = contrast(r.variance_total);
  return r;
}

}  // namespace gwdecoh
