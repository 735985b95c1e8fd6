#include "gwdecoh/montecarlo.hpp"

#include <fftw3.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "gwdecoh/constants.hpp"
#include "gwdecoh/error.hpp"

namespace gwdecoh {

namespace {

using constants::kPi;

// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

constexpr std::size_t kBlockSize = 64;
constexpr double kEdgeSlack = 1e-9;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// S_h at omega, snapping frequencies within rounding distance of a band edge.
double evaluate_snapped(const StrainSpectrum& s, double omega) {
  if (s.in_band(omega)) return s(omega);
  if (std::fabs(omega - s.omega_min()) <= kEdgeSlack * s.omega_min()) return s(s.omega_min());
  if (std::fabs(omega - s.omega_max()) <= kEdgeSlack * s.omega_max()) return s(s.omega_max());
  return 0.0;
}

}  // namespace

std::size_t SimulationConfig::sample_count() const {
  const double step = dt.in(dim::time);
  const double span = duration.in(dim::time);
  if (!(step > 0.0) || !(span > 0.0) || !std::isfinite(span / step)) {
    throw InputError("simulation dt and duration must be positive");
  }
  const double ratio = span / step;
  const double n = std::round(ratio);
  if (std::fabs(n - ratio) > 1e-6) {
    std::ostringstream os;
    os << "simulation duration " << span << " s is not a whole number of steps dt = " << step << " s";
    throw InputError(os.str());
  }
  return static_cast<std::size_t>(n);
}

void SimulationConfig::validate_sampling() const {
  const std::size_t n = sample_count();
  if (n < 4) throw InputError("simulation needs at least four samples");
  if (n_realizations < 2) throw InputError("simulation needs at least two realizations");
  const double step = dt.in(dim::time);
  const double nyquist = kPi / step;
  const double fundamental = 2.0 * kPi / duration.in(dim::time);
  if (spectrum.omega_max() > nyquist * (1.0 + kEdgeSlack)) {
    std::ostringstream os;
    os << "spectrum band reaches " << spectrum.omega_max() << " rad/s above the Nyquist frequency " << nyquist
       << " rad/s of dt = " << step << " s";
    throw InputError(os.str());
  }
  if (spectrum.omega_min() < fundamental * (1.0 - kEdgeSlack)) {
    std::ostringstream os;
    os << "spectrum band starts at " << spectrum.omega_min() << " rad/s below the resolution " << fundamental
       << " rad/s of the simulated duration";
    throw InputError(os.str());
  }
}

void SimulationConfig::validate(const InstrumentConfig& instrument) const {
  instrument.validate();
  validate_sampling();
  const double tau = instrument.arm_time.in(dim::time);
  if (dt.in(dim::time) > tau / 100.0 * (1.0 + kEdgeSlack)) {
    throw InputError("simulation dt must not exceed arm_time / 100");
  }
  if (duration.in(dim::time) < 4.0 * tau * (1.0 - kEdgeSlack)) {
    throw InputError("simulation duration must be at least 4 arm times");
  }
}

std::uint64_t realization_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

struct StrainSynthesizer::Fft {
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan inverse = nullptr;
  fftw_plan forward = nullptr;

  explicit Fft(std::size_t n) {
    std::lock_guard lock(fftw_planner_mutex());
    real = fftw_alloc_real(n);
    spec = fftw_alloc_complex(n / 2 + 1);
    const int ni = static_cast<int>(n);
    inverse = fftw_plan_dft_c2r_1d(ni, spec, real, FFTW_ESTIMATE);
    forward = fftw_plan_dft_r2c_1d(ni, real, spec, FFTW_ESTIMATE);
  }
  ~Fft() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(inverse);
    fftw_destroy_plan(forward);
    fftw_free(real);
    fftw_free(spec);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;
};

StrainSynthesizer::StrainSynthesizer(const SimulationConfig& sim)
    : n_(sim.sample_count()),
      dt_(sim.dt.in(dim::time)),
      d_omega_(2.0 * kPi / (static_cast<double>(n_) * dt_)),
      seed_(sim.seed) {
  sim.validate_sampling();
  const std::size_t bins = n_ / 2 + 1;
  target_.resize(bins, 0.0);
  sigma_.resize(bins, 0.0);
  for (std::size_t k = 1; k < bins; ++k) {
    target_[k] = evaluate_snapped(sim.spectrum, d_omega_ * static_cast<double>(k));
    sigma_[k] = std::sqrt(target_[k] * d_omega_ / (2.0 * kPi));
  }
  fft_ = std::make_unique<Fft>(n_);
}

StrainSynthesizer::~StrainSynthesizer() = default;

StrainSeries StrainSynthesizer::synthesize(std::uint64_t index) {
  std::mt19937_64 rng(realization_seed(seed_, index));
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t bins = n_ / 2 + 1;
  const bool has_nyquist = n_ % 2 == 0;
  fftw_complex* c = fft_->spec;
  c[0][0] = 0.0;
  c[0][1] = 0.0;
  for (std::size_t k = 1; k < bins; ++k) {
    if (has_nyquist && k == bins - 1) {
      c[k][0] = sigma_[k] * normal(rng);
      c[k][1] = 0.0;
    } else {
      const double a = normal(rng);
      const double b = normal(rng);
      c[k][0] = sigma_[k] * a * M_SQRT1_2;
      c[k][1] = sigma_[k] * b * M_SQRT1_2;
    }
  }
  fftw_execute_dft_c2r(fft_->inverse, c, fft_->real);
  return StrainSeries{0.0, dt_, std::vector<double>(fft_->real, fft_->real + n_)};
}

std::vector<double> StrainSynthesizer::periodogram(const StrainSeries& series) {
  if (series.samples.size() != n_) throw InputError("periodogram: series length does not match the grid");
  std::copy(series.samples.begin(), series.samples.end(), fft_->real);
  fftw_execute_dft_r2c(fft_->forward, fft_->real, fft_->spec);
  const std::size_t bins = n_ / 2 + 1;
  std::vector<double> out(bins);
  const double norm = 1.0 / static_cast<double>(n_);
  for (std::size_t k = 0; k < bins; ++k) {
    const double re = fft_->spec[k][0] * norm;
    const double im = fft_->spec[k][1] * norm;
    out[k] = (re * re + im * im) * 2.0 * kPi / d_omega_;
  }
  return out;
}

StrainSeries synthesize_strain(const SimulationConfig& sim, std::uint64_t realization) {
  StrainSynthesizer synth(sim);
  return synth.synthesize(realization);
}

EnsembleResult ensemble_dephasing(const InstrumentConfig& cfg, const SimulationConfig& sim,
                                  const EnsembleOptions& options) {
  sim.validate(cfg);
  const std::size_t n = sim.n_realizations;
  const std::size_t samples = sim.sample_count();
  const double step = sim.dt.in(dim::time);

  StrainSeries layout{0.0, step, std::vector<double>(samples, 0.0)};
  const double t_mid = step * static_cast<double>(samples / 2);
  const PhaseStencil stencil = make_phase_stencil(cfg, layout, t_mid);

  const std::size_t blocks = (n + kBlockSize - 1) / kBlockSize;
  const std::size_t bins = samples / 2 + 1;
  std::vector<double> phases(n, 0.0);
  std::vector<std::vector<double>> block_psd(blocks);

  unsigned workers = sim.workers != 0 ? sim.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, blocks));

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto work = [&] {
    try {
      StrainSynthesizer synth(sim);
      for (std::size_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
        std::vector<double> acc(bins, 0.0);
        const std::size_t end = std::min(n, (b + 1) * kBlockSize);
        for (std::size_t i = b * kBlockSize; i < end; ++i) {
          const StrainSeries h = synth.synthesize(i);
          phases[i] = stencil.apply(h.samples);
          const auto p = synth.periodogram(h);
          for (std::size_t k = 0; k < bins; ++k) acc[k] += p[k];
        }
        block_psd[b] = std::move(acc);
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  EnsembleResult r;
  r.n_realizations = n;
  const double dn = static_cast<double>(n);

  double sum = 0.0;
  for (double p : phases) sum += p;
  r.mean_phase = sum / dn;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  double cos_sum = 0.0;
  for (double p : phases) {
    const double d = p - r.mean_phase;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
    cos_sum += std::cos(p);
  }
  r.empirical_variance = m2 / (dn - 1.0);
  r.standard_error = r.empirical_variance * std::sqrt(2.0 / (dn - 1.0));
  m2 /= dn;
  m3 /= dn;
  m4 /= dn;
  if (m2 > 0.0) {
    r.skewness = m3 / std::pow(m2, 1.5);
    r.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }
  r.empirical_contrast = cos_sum / dn;
  double cos_var = 0.0;
  for (double p : phases) {
    const double d = std::cos(p) - r.empirical_contrast;
    cos_var += d * d;
  }
  r.contrast_standard_error = std::sqrt(cos_var / (dn - 1.0) / dn);

  std::vector<double> psd(bins, 0.0);
  for (const auto& acc : block_psd) {
    for (std::size_t k = 0; k < bins; ++k) psd[k] += acc[k];
  }
  const double d_omega = 2.0 * kPi / (static_cast<double>(samples) * step);
  const bool has_nyquist = samples % 2 == 0;
  for (std::size_t k = 1; k + 1 < bins || (!has_nyquist && k < bins); ++k) {
    const double w_lo = d_omega * static_cast<double>(k - 1);
    const double w_hi = d_omega * static_cast<double>(k + 1);
    if (!sim.spectrum.in_band(w_lo) || !sim.spectrum.in_band(w_hi)) continue;
    const double target = sim.spectrum(d_omega * static_cast<double>(k));
    if (target <= 0.0) continue;
    r.realized_psd_check = std::max(r.realized_psd_check, std::fabs(psd[k] / dn / target - 1.0));
  }
  if (options.keep_phases) r.phases = std::move(phases);
  return r;
}

}  // namespace gwdecoh
