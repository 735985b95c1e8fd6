#pragma once

// Stochastic gravitational-wave background spectra.
//
// Convention: spectra are stored against angular frequency omega (rad/s) and
// are two-sided, i.e. the strain autocorrelation is
//
//   <h(t) h(0)> = integral over all real omega of (d omega / 2 pi) S_h[omega] e^{-i omega t}
//
// S_h is even in omega; the valid band is given on the positive axis and a
// negative omega is evaluated at |omega|. Input files and the CLI speak
// ordinary frequency f in Hz and are converted with omega = 2 pi f on entry.

#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gwdecoh/quantity.hpp"

namespace gwdecoh {

enum class Interpolation { LogLog, Linear };

std::string to_string(Interpolation interp);
Interpolation interpolation_from_string(const std::string& name);

struct WhiteModel {
  double level;  // Hz^-1
};

struct PowerLawModel {
  double amplitude;    // Hz^-1 at the pivot
  double exponent;
  double pivot_omega;  // rad/s
};

struct TabulatedModel {
  std::vector<double> omega;  // strictly increasing, rad/s
  std::vector<double> psd;    // Hz^-1
  Interpolation interpolation = Interpolation::LogLog;
};

using SpectrumModel = std::variant<WhiteModel, PowerLawModel, TabulatedModel>;

/// Immutable model of S_h[omega] restricted to a band [omega_min, omega_max].
class StrainSpectrum {
 public:
  static StrainSpectrum white(const Quantity& level, const Quantity& omega_min, const Quantity& omega_max);
  static StrainSpectrum power_law(const Quantity& amplitude, double exponent, const Quantity& pivot_omega,
                                  const Quantity& omega_min, const Quantity& omega_max);
  /// Points are (omega [rad/s], S_h [Hz^-1]); the band is the table span.
  static StrainSpectrum tabulated(std::vector<std::pair<double, double>> points,
                                  Interpolation interp = Interpolation::LogLog);

  /// S_h at omega; BandError outside the valid band.
  Quantity evaluate(const Quantity& omega) const;
  /// Raw-number form of evaluate (omega in rad/s, result in Hz^-1).
  double operator()(double omega) const;

  double omega_min() const { return omega_min_; }
  double omega_max() const { return omega_max_; }
  bool in_band(double omega) const;

  /// Upper bound of S_h over the band.
  double max_in_band() const;
  /// Interior points where the model is not smooth (tabulated nodes).
  std::vector<double> breakpoints() const;

  const SpectrumModel& model() const { return model_; }
  bool is_white() const;

 private:
  StrainSpectrum(SpectrumModel model, double omega_min, double omega_max);

  SpectrumModel model_;
  double omega_min_;
  double omega_max_;
};

/// White S_h = 1e-34 Hz^-1 on f in [1e-6, 1e-2] Hz: the galactic binary
/// confusion background.
StrainSpectrum binary_confusion_background();

/// Two-column text file: frequency [Hz], S_h [Hz^-1]; '#' starts a comment
/// line. Returns the rows as (f [Hz], S_h [Hz^-1]).
std::vector<std::pair<double, double>> read_spectrum_table(const std::filesystem::path& path);

/// read_spectrum_table converted to angular frequency.
StrainSpectrum load_tabulated_spectrum(const std::filesystem::path& path,
                                       Interpolation interp = Interpolation::LogLog);

// Equivalent representations of a spectral level. The 16/5 factor is exact.

/// T_gr = S_h 5 c^5 / (16 G k_B).
Quantity to_noise_temperature(const Quantity& psd);
Quantity from_noise_temperature(const Quantity& temperature);
/// n_gr = S_h 5 c^5 / (16 G hbar omega).
Quantity to_graviton_number(const Quantity& psd, const Quantity& omega);
/// Theta_gr = S_h / t_P^2.
Quantity theta_gr(const Quantity& psd);

struct BackgroundEquivalents {
  Quantity graviton_number;
  Quantity noise_temperature;
  Quantity theta_gr;
};

BackgroundEquivalents equivalents(const StrainSpectrum& spectrum, const Quantity& omega);

}  // namespace gwdecoh
