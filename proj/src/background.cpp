#include "gwdecoh/background.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gwdecoh/constants.hpp"
#include "gwdecoh/error.hpp"

namespace gwdecoh {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_band(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo < 0.0 || !(hi > lo)) {
    throw DomainError("spectrum band must satisfy 0 <= omega_min < omega_max < inf");
  }
}

double interpolate(const TabulatedModel& t, double omega) {
  const auto& x = t.omega;
  auto it = std::upper_bound(x.begin(), x.end(), omega);
  if (it == x.begin()) return t.psd.front();
  if (it == x.end()) return t.psd.back();
  const std::size_t hi = static_cast<std::size_t>(it - x.begin());
  const std::size_t lo = hi - 1;
  if (t.interpolation == Interpolation::Linear) {
    const double w = (omega - x[lo]) / (x[hi] - x[lo]);
    return t.psd[lo] + w * (t.psd[hi] - t.psd[lo]);
  }
  const double w = std::log(omega / x[lo]) / std::log(x[hi] / x[lo]);
  const double v = std::exp(std::log(t.psd[lo]) + w * std::log(t.psd[hi] / t.psd[lo]));
  // Keep the result inside the bracket despite rounding in exp/log.
  return std::clamp(v, std::min(t.psd[lo], t.psd[hi]), std::max(t.psd[lo], t.psd[hi]));
}

}  // namespace

std::string to_string(Interpolation interp) { return interp == Interpolation::LogLog ? "log-log" : "linear"; }

Interpolation interpolation_from_string(const std::string& name) {
  if (name == "log-log" || name == "loglog") return Interpolation::LogLog;
  if (name == "linear") return Interpolation::Linear;
  throw DomainError("unknown interpolation '" + name + "' (expected log-log or linear)");
}

StrainSpectrum::StrainSpectrum(SpectrumModel model, double omega_min, double omega_max)
    : model_(std::move(model)), omega_min_(omega_min), omega_max_(omega_max) {}

StrainSpectrum StrainSpectrum::white(const Quantity& level, const Quantity& omega_min, const Quantity& omega_max) {
  const double s = level.in(dim::strain_psd);
  if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("white spectrum level must be finite and >= 0");
  const double lo = omega_min.in(dim::frequency);
  const double hi = omega_max.in(dim::frequency);
  check_band(lo, hi);
  return StrainSpectrum(WhiteModel{s}, lo, hi);
}

StrainSpectrum StrainSpectrum::power_law(const Quantity& amplitude, double exponent, const Quantity& pivot_omega,
                                         const Quantity& omega_min, const Quantity& omega_max) {
  const double a = amplitude.in(dim::strain_psd);
  const double pivot = pivot_omega.in(dim::frequency);
  if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("power-law amplitude must be finite and >= 0");
  if (!(pivot > 0.0)) throw DomainError("power-law pivot frequency must be positive");
  if (!std::isfinite(exponent)) throw DomainError("power-law exponent must be finite");
  const double lo = omega_min.in(dim::frequency);
  const double hi = omega_max.in(dim::frequency);
  check_band(lo, hi);
  if (lo == 0.0 && exponent != 0.0) throw DomainError("power-law band must start above omega = 0");
  return StrainSpectrum(PowerLawModel{a, exponent, pivot}, lo, hi);
}

StrainSpectrum StrainSpectrum::tabulated(std::vector<std::pair<double, double>> points, Interpolation interp) {
  if (points.size() < 2) throw DomainError("tabulated spectrum needs at least two points");
  TabulatedModel t;
  t.interpolation = interp;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [w, s] = points[i];
    if (!std::isfinite(w) || !std::isfinite(s) || s < 0.0) {
      throw DomainError("tabulated spectrum entries must be finite with S_h >= 0");
    }
    if (i > 0 && !(w > points[i - 1].first)) {
      throw DomainError("tabulated spectrum frequencies must be strictly increasing");
    }
    if (interp == Interpolation::LogLog && (w <= 0.0 || s <= 0.0)) {
      throw DomainError("log-log interpolation needs positive frequencies and spectral values");
    }
    t.omega.push_back(w);
    t.psd.push_back(s);
  }
  const double lo = t.omega.front();
  const double hi = t.omega.back();
  check_band(lo, hi);
  return StrainSpectrum(std::move(t), lo, hi);
}

bool StrainSpectrum::in_band(double omega) const {
  const double w = std::fabs(omega);
  return w >= omega_min_ && w <= omega_max_;
}

double StrainSpectrum::operator()(double omega) const {
  const double w = std::fabs(omega);
  if (!in_band(w)) {
    std::ostringstream os;
    os << "omega = " << w << " rad/s outside valid band [" << omega_min_ << ", " << omega_max_ << "] rad/s";
    throw BandError(os.str(), w);
  }
  return std::visit(overloaded{
                        [](const WhiteModel& m) { return m.level; },
                        [w](const PowerLawModel& m) {
                          return m.exponent == 0.0 ? m.amplitude : m.amplitude * std::pow(w / m.pivot_omega, m.exponent);
                        },
                        [w](const TabulatedModel& m) { return interpolate(m, w); },
                    },
                    model_);
}

Quantity StrainSpectrum::evaluate(const Quantity& omega) const {
  return {(*this)(omega.in(dim::frequency)), dim::strain_psd};
}

double StrainSpectrum::max_in_band() const {
  return std::visit(overloaded{
                        [](const WhiteModel& m) { return m.level; },
                        [this](const PowerLawModel& m) {
                          if (m.exponent == 0.0) return m.amplitude;
                          return std::max((*this)(omega_min_), (*this)(omega_max_));
                        },
                        [](const TabulatedModel& m) { return *std::max_element(m.psd.begin(), m.psd.end()); },
                    },
                    model_);
}

std::vector<double> StrainSpectrum::breakpoints() const {
  if (const auto* t = std::get_if<TabulatedModel>(&model_)) {
    return {t->omega.begin() + 1, t->omega.end() - 1};
  }
  return {};
}

bool StrainSpectrum::is_white() const {
  if (std::holds_alternative<WhiteModel>(model_)) return true;
  if (const auto* p = std::get_if<PowerLawModel>(&model_)) return p->exponent == 0.0;
  return false;
}

StrainSpectrum binary_confusion_background() {
  const double two_pi = 2.0 * constants::kPi;
  return StrainSpectrum::white(units::per_hertz(1e-34), units::per_second(two_pi * 1e-6),
                               units::per_second(two_pi * 1e-2));
}

std::vector<std::pair<double, double>> read_spectrum_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open spectrum file " + path.string());
  std::vector<std::pair<double, double>> points;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double f = 0.0;
    double s = 0.0;
    if (!(ls >> f >> s)) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected two numeric columns");
    }
    points.emplace_back(f, s);
  }
  return points;
}

StrainSpectrum load_tabulated_spectrum(const std::filesystem::path& path, Interpolation interp) {
  auto points = read_spectrum_table(path);
  for (auto& p : points) p.first *= 2.0 * constants::kPi;
  return StrainSpectrum::tabulated(std::move(points), interp);
}

Quantity to_noise_temperature(const Quantity& psd) {
  if (!(psd.in(dim::strain_psd) >= 0.0)) throw DomainError("noise temperature: S_h must be >= 0");
  return psd / (constants::strain_coupling() * constants::k_B());
}

Quantity from_noise_temperature(const Quantity& temperature) {
  if (!(temperature.in(dim::temperature) >= 0.0)) throw DomainError("noise temperature must be >= 0");
  return constants::strain_coupling() * constants::k_B() * temperature;
}

Quantity to_graviton_number(const Quantity& psd, const Quantity& omega) {
  if (!(psd.in(dim::strain_psd) >= 0.0)) throw DomainError("graviton number: S_h must be >= 0");
  if (!(omega.in(dim::frequency) > 0.0)) throw DomainError("graviton number: omega must be positive");
  return psd / (constants::strain_coupling() * constants::hbar() * omega);
}

Quantity theta_gr(const Quantity& psd) {
  if (!(psd.in(dim::strain_psd) >= 0.0)) throw DomainError("theta_gr: S_h must be >= 0");
  return psd / pow(constants::planck_time(), 2);
}

BackgroundEquivalents equivalents(const StrainSpectrum& spectrum, const Quantity& omega) {
  const Quantity s = spectrum.evaluate(omega);
  return {to_graviton_number(s, omega), to_noise_temperature(s), theta_gr(s)};
}

}  // namespace gwdecoh
