// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fftw3.h>

#include "gwdecoh/commands.hpp"
#include "gwdecoh/constants.hpp"
#include "gwdecoh/dephasing.hpp"
#include "gwdecoh/montecarlo.hpp"
#include "gwdecoh/planckscale.hpp"
#include "gwdecoh/planetary.hpp"
#include "gwdecoh/scenario.hpp"

using namespace gwdecoh;

namespace {

constexpr double kPi = constants::kPi;
const std::filesystem::path kScenarios = GWDECOH_SCENARIO_DIR;
const std::filesystem::path kTmp = GWDECOH_TEST_TMP;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome white_identity() {
  const auto t0 = std::chrono::steady_clock::now();
  const double mu = 7.2e6;
  double worst = 0.0;
  for (double s0 : {1e-40, 1e-34, 1e-22}) {
    for (double tau : {0.01, 1.0, 30.0}) {
      const auto spec = StrainSpectrum::white(units::per_hertz(s0), units::per_second(0.0), units::per_second(1e8 / tau));
      const double v = variance_integral(units::per_second(mu), units::seconds(tau), spec).value;
      worst = std::max(worst, std::fabs(v / (mu * mu * s0 * 2.0 * tau) - 1.0));
    }
  }
  const double dt = seconds_since(t0);
  return {worst < 1e-6 && dt < 1.0, fmt("max relative error %.2e over 3x3 grid, %.3f s", worst, dt)};
}

Outcome atomic_budget() {
  const auto out = run_atom(load_scenario(kScenarios / "hyper-default.json"));
  const double v = out.record.number("variance_atomic");
  return {v >= 1e-21 && v <= 1e-19, fmt("variance_atomic = %.4e", v)};
}

Outcome photonic_budget() {
  const auto out = run_photon(load_scenario(kScenarios / "hyper-default.json"));
  const double p = out.record.number("variance_photonic");
  const double ratio = out.record.number("photonic_to_atomic_ratio");
  return {p >= 1e-13 && p <= 1e-11 && ratio > 1e6, fmt("variance_photonic = %.4e, photonic/atomic = %.3e", p, ratio)};
}

Outcome conversions() {
  const auto out = run_background(load_scenario(kScenarios / "hyper-default.json"));
  const double s = out.record.number("strain_psd");
  const double t = out.record.number("noise_temperature");
  const double theta = out.record.number("theta_gr");
  return {s == 1e-34 && t >= 2e40 && t <= 5e41 && theta >= 1e52 && theta <= 1e53,
          fmt("T_gr = %.4e K, Theta_gr = %.4e 1/s", t, theta)};
}

Outcome moon() {
  const auto s = load_scenario(kScenarios / "earth-moon.json");
  const auto out = run_planetary(s);
  const double gamma = out.record.number("gamma_gr");
  const double d = out.record.number("diffusion_over_hbar2");
  const double dx = out.record.number("separation_0.dx");
  const double t = out.record.number("separation_0.decoherence_time");
  const bool planck_dx = std::fabs(dx / constants::planck_length().value() - 1.0) < 1e-5;
  return {gamma >= 2e-35 && gamma <= 5e-34 && d >= 2e74 && d <= 5e75 && planck_dx && t >= 4e-7 && t <= 5e-5,
          fmt("Gamma_gr = %.4e 1/s, D/hbar^2 = %.4e 1/(s m^2), t_dec(l_P) = %.4e s", gamma, d, t)};
}

Outcome monte_carlo() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto s = load_scenario(kScenarios / "hyper-default.json");
  const auto cfg = s.instrument->build();
  SimulationConfig sim = s.simulation_config();
  const double mu = cfg.mu_atomic().value();
  const double tau = cfg.arm_time.value();

  // shipped level, then the level giving an order-unity variance
  const double base_level = sim.spectrum.max_in_band();
  std::string detail;
  bool pass = sim.n_realizations == 10000;
  for (double level : {base_level, 1.0 / (2.0 * mu * mu * tau)}) {
    sim.spectrum = StrainSpectrum::white(units::per_hertz(level), units::per_second(sim.spectrum.omega_min()),
                                         units::per_second(sim.spectrum.omega_max()));
    const auto r = ensemble_dephasing(cfg, sim);
    const double analytic = mu * mu * level * 2.0 * tau;
    const double expected_contrast = std::exp(-0.5 * analytic);
    const double zv = (r.empirical_variance - analytic) / r.standard_error;
    const double cdiff = std::fabs(r.empirical_contrast - expected_contrast);
    const bool ok_var = std::fabs(zv) < 3.0;
    const bool ok_con = cdiff <= 3.0 * r.contrast_standard_error;
    const bool ok_psd = r.realized_psd_check < 0.10;
    pass = pass && ok_var && ok_con && ok_psd;
    detail += fmt("[S0=%.3g: var z=%+.2f, contrast |d|=%.2e (3 SE=%.2e), psd dev=%.3f] ", level, zv, cdiff,
                  3.0 * r.contrast_standard_error, r.realized_psd_check);
  }
  const double dt = seconds_since(t0);
  pass = pass && dt < 60.0;
  return {pass, detail + fmt("n=%zu, %.2f s", sim.n_realizations, dt)};
}

Outcome filter_checks() {
  // FFT of the sampled triangle against the closed-form transform
  const double tau = 1.0;
  const ApparatusFilter g(units::seconds(tau));
  const std::size_t half = 16384;
  const double h = tau / static_cast<double>(half);
  const std::size_t n = 1u << 21;
  std::vector<double> in(n, 0.0);
  for (std::size_t j = 0; j <= half; ++j) {
    const double v = g.time_response(h * static_cast<double>(j));
    in[j] = v;
    if (j > 0) in[n - j] = v;
  }
  std::vector<fftw_complex> out(n / 2 + 1);
  fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), out.data(), FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  const double d_omega = 2.0 * kPi / (h * static_cast<double>(n));
  double fft_err = 0.0;
  for (std::size_t k = 0; d_omega * static_cast<double>(k) * tau <= 20.0; ++k) {
    fft_err = std::max(fft_err, std::fabs(out[k][0] * h - g.freq_response(d_omega * static_cast<double>(k))));
  }

  // sinusoid response of the two-arm phase against the variance weight
  const InstrumentConfig cfg = load_scenario(kScenarios / "hyper-default.json").instrument->build();
  const double mu = cfg.mu_atomic().value();
  const double dt = tau / 4000.0;
  const auto phase = [&](double w, double phi) {
    const auto m = static_cast<std::size_t>(std::llround(2.0 * tau / dt)) + 3;
    StrainSeries s{0.0, dt, std::vector<double>(m)};
    for (std::size_t j = 0; j < m; ++j) s.samples[j] = std::cos(w * dt * static_cast<double>(j) + phi);
    return two_arm_phase(cfg, s, dt * static_cast<double>(m - 2));
  };
  double sweep_err = 0.0;
  for (double x = 0.01; x <= 50.0; x *= 1.05) {
    const double w = x / tau;
    const double c = phase(w, 0.0);
    const double s = phase(w, -0.5 * kPi);
    const double weight = 4.0 * mu * mu * std::pow(1.0 - std::cos(x), 2) / (w * w);
    sweep_err = std::max(sweep_err, std::fabs((c * c + s * s) / weight - 1.0));
  }
  return {fft_err < 1e-6 && sweep_err < 1e-4,
          fmt("FFT vs sinc^2 max abs error %.2e, sinusoid sweep max relative error %.2e", fft_err, sweep_err)};
}

Outcome determinism() {
  auto s = load_scenario(kScenarios / "hyper-default.json");
  std::vector<std::string> texts;
  const std::vector<unsigned> workers{1, 1, 3, 8};
  for (std::size_t i = 0; i < workers.size(); ++i) {
    const auto dir = kTmp / ("determinism_" + std::to_string(i));
    std::filesystem::remove_all(dir);
    const auto files = write_product(dir, s.name, "montecarlo", Format::Json, run_montecarlo(s, workers[i]));
    std::string all;
    for (const auto& f : files) all += slurp(f);
    texts.push_back(all);
  }
  bool same = true;
  for (const auto& t : texts) same = same && t == texts.front();
  s.simulation->seed = 43;
  const auto other = write_product(kTmp / "determinism_other", s.name, "montecarlo", Format::Json, run_montecarlo(s, 2));
  std::string other_text;
  for (const auto& f : other) other_text += slurp(f);
  const bool differs = other_text != texts.front();
  return {same && differs, fmt("%zu runs (workers 1,1,3,8) byte-identical: %s; other seed differs: %s",
                               texts.size(), same ? "yes" : "no", differs ? "yes" : "no")};
}

Outcome cross_formula() {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_scaling = 0.0;
  const double tp2 = std::pow(constants::planck_time().value(), 2);
  for (int i = 0; i < 1000; ++i) {
    const ScalingInput in{units::kilograms(std::pow(10.0, -27.0 + 50.0 * u(rng))),
                          units::meters_per_second(std::pow(10.0, -3.0 + 7.0 * u(rng))), u(rng),
                          units::seconds(std::pow(10.0, -4.0 + 8.0 * u(rng))),
                          units::per_second(std::pow(10.0, 40.0 + 20.0 * u(rng)))};
    const double mu = 2.0 * in.mass.value() * std::pow(in.velocity.value(), 2) * in.sin_aperture / constants::kHbar;
    const double direct = mu * mu * in.theta_gr.value() * tp2 * in.exposure.value();
    worst_scaling = std::max(worst_scaling, std::fabs(scaling_variance(in) / direct - 1.0));
  }

  double lo = INFINITY;
  double hi = -INFINITY;
  for (int i = 0; i < 1000; ++i) {
    const OrbitConfig o{units::kilograms(std::pow(10.0, 10.0 + 20.0 * u(rng))),
                        units::kilograms(std::pow(10.0, 10.0 + 20.0 * u(rng))),
                        units::meters(std::pow(10.0, 5.0 + 6.0 * u(rng)))};
    const auto spec = StrainSpectrum::white(units::per_hertz(std::pow(10.0, -40.0 + 10.0 * u(rng))),
                                            units::per_second(1e-20), units::per_second(1e4));
    const Quantity dx = units::meters(o.radius.value() * std::pow(10.0, -40.0 * u(rng)));
    const Quantity tau = units::seconds(std::pow(10.0, -3.0 + 6.0 * u(rng)));
    const double r = route_ratio(o, spec, dx, tau);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  const bool constant = (hi - lo) / lo < 1e-12;
  const bool expected = std::fabs(lo - 1.0) < 1e-12 || std::fabs(lo - 2.0) < 1e-12;
  return {worst_scaling < 1e-12 && constant && expected,
          fmt("scaling vs mu^2 S_h tau max relative error %.2e; route ratio in [%.15g, %.15g], recorded value %.0f",
              worst_scaling, lo, hi, lo)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"white-noise identity", white_identity},
      {"HYPER atomic budget", atomic_budget},
      {"HYPER photonic budget", photonic_budget},
      {"background conversions", conversions},
      {"Moon damping and diffusion", moon},
      {"Monte Carlo vs analytic", monte_carlo},
      {"filter checks", filter_checks},
      {"determinism", determinism},
      {"cross-formula consistency", cross_formula},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s  criterion %zu  %-28s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
