#pragma once

// Seeded Monte Carlo oracle: stationary Gaussian strain realizations with a
// prescribed two-sided spectrum, pushed through the two-arm response.

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "gwdecoh/background.hpp"
#include "gwdecoh/interferometer.hpp"

namespace gwdecoh {

struct SimulationConfig {
  std::uint64_t seed = 0;
  std::size_t n_realizations = 2;
  Quantity dt{0.0, dim::time};
  Quantity duration{0.0, dim::time};
  StrainSpectrum spectrum;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned workers = 0;

  /// Number of samples per realization, duration / dt.
  std::size_t sample_count() const;

  /// Checks the invariants against the instrument the strain feeds:
  /// dt <= tau_at / 100, duration >= 4 tau_at, n >= 2, and that the
  /// spectrum band lies inside the resolved range [2 pi / duration, pi / dt].
  void validate(const InstrumentConfig& instrument) const;
  /// Sampling and coverage checks only.
  void validate_sampling() const;
};

/// Per-realization seed: SplitMix64 applied to (seed, index), so that streams
/// do not depend on execution order.
std::uint64_t realization_seed(std::uint64_t seed, std::uint64_t index);

/// Spectral synthesis on a fixed grid. Each instance owns FFTW buffers and is
/// used by one thread at a time.
class StrainSynthesizer {
 public:
  explicit StrainSynthesizer(const SimulationConfig& sim);
  ~StrainSynthesizer();
  StrainSynthesizer(const StrainSynthesizer&) = delete;
  StrainSynthesizer& operator=(const StrainSynthesizer&) = delete;

  /// Realization `index`: independent complex Gaussian coefficients with
  /// E|c_k|^2 = S_h[omega_k] d omega / 2 pi, Hermitian-symmetrized and
  /// inverse transformed.
  StrainSeries synthesize(std::uint64_t index);

  /// Two-sided periodogram |c_k|^2 2 pi / d omega of a series on this grid,
  /// bins k = 0 .. n/2.
  std::vector<double> periodogram(const StrainSeries& series);

  std::size_t size() const { return n_; }
  double bin_spacing() const { return d_omega_; }
  /// Target S_h at bin k (0 outside the band).
  double target(std::size_t k) const { return target_[k]; }
  std::size_t bins() const { return target_.size(); }

 private:
  std::size_t n_;
  double dt_;
  double d_omega_;
  std::uint64_t seed_;
  std::vector<double> target_;
  std::vector<double> sigma_;
  struct Fft;
  std::unique_ptr<Fft> fft_;
};

/// Convenience wrapper around StrainSynthesizer.
StrainSeries synthesize_strain(const SimulationConfig& sim, std::uint64_t realization = 0);

struct EnsembleResult {
  std::size_t n_realizations = 0;
  double empirical_variance = 0.0;
  /// Re <exp(i dPhi)>.
  double empirical_contrast = 1.0;
  /// variance * sqrt(2 / (n - 1)).
  double standard_error = 0.0;
  /// std(cos dPhi) / sqrt(n).
  double contrast_standard_error = 0.0;
  double mean_phase = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  /// max over band-interior bins of |<periodogram> / S_h - 1|.
  double realized_psd_check = 0.0;
  std::vector<double> phases;
};

struct EnsembleOptions {
  bool keep_phases = false;
};

/// Draws sim.n_realizations strains and evaluates two_arm_phase at the series
/// midpoint of each. Results are bit-identical for any worker count.
EnsembleResult ensemble_dephasing(const InstrumentConfig& cfg, const SimulationConfig& sim,
                                  const EnsembleOptions& options = {});

}  // namespace gwdecoh
