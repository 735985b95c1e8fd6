#include "doctest.h"

#include <chrono>
#include <cmath>

#include "gwdecoh/background.hpp"
#include "gwdecoh/constants.hpp"
#include "gwdecoh/dephasing.hpp"
#include "gwdecoh/error.hpp"

using namespace gwdecoh;

namespace {

constexpr double kPi = constants::kPi;

InstrumentConfig hyper() {
  return {units::kilograms(2.207e-25),
          units::meters_per_second(0.2),
          units::seconds(1.0),
          0.043,
          units::per_second(2.0 * kPi * 3.52e14),
          units::meters(1.0)};
}

StrainSpectrum white(double s, double lo, double hi) {
  return StrainSpectrum::white(units::per_hertz(s), units::per_second(lo), units::per_second(hi));
}

/// Composite Simpson over [lo, hi] of S(w) (1 - cos w tau)^2 / w^2 with n
/// panels per oscillation period, times 4 mu^2 / pi (both signs of omega).
template <class S>
double simpson_variance(double mu, double tau, S spec, double lo, double hi, int per_period) {
  const double period = 2.0 * kPi / tau;
  auto n = static_cast<long>(std::ceil((hi - lo) / period * per_period));
  if (n % 2) ++n;
  const double h = (hi - lo) / static_cast<double>(n);
  const auto f = [&](double w) {
    const double c = 1.0 - std::cos(w * tau);
    return w == 0.0 ? 0.0 : spec(w) * c * c / (w * w);
  };
  double sum = f(lo) + f(hi);
  for (long i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(lo + h * static_cast<double>(i));
  return 4.0 * mu * mu / kPi * sum * h / 3.0;
}

}  // namespace

TEST_CASE("white-noise identity over a grid of levels and arm times") {
  const auto t0 = std::chrono::steady_clock::now();
  const double mu = 7.2e6;
  for (double s0 : {1e-40, 1e-34, 1e-22}) {
    for (double tau : {0.01, 1.0, 30.0}) {
      const auto spec = white(s0, 0.0, 1e8 / tau);
      const auto r = variance_integral(units::per_second(mu), units::seconds(tau), spec);
      const double exact = mu * mu * s0 * 2.0 * tau;
      CHECK(r.value == doctest::Approx(exact).epsilon(1e-6));
      CHECK(r.tail_estimate < 1e-7 * exact);
      CHECK(r.abs_error < 1e-6 * exact);
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(seconds < 1.0);
}

TEST_CASE("power law against an independent Simpson integration") {
  const double mu = 3.0;
  const double tau = 0.8;
  const auto law = [](double w) { return 2e-30 * std::pow(w / 5.0, -0.7); };
  const auto spec = StrainSpectrum::power_law(units::per_hertz(2e-30), -0.7, units::per_second(5.0),
                                              units::per_second(0.05), units::per_second(2000.0));
  const auto r = variance_integral(units::per_second(mu), units::seconds(tau), spec);
  const double oracle = simpson_variance(mu, tau, law, 0.05, 2000.0, 200);
  CHECK(r.value == doctest::Approx(oracle).epsilon(1e-7));
}

TEST_CASE("envelope region against an independent Simpson integration") {
  // band reaching far beyond the exactly integrated periods
  const double mu = 1.0;
  const double tau = 1.0;
  const auto law = [](double w) { return 1e-30 * std::pow(w, -0.5); };
  const auto spec = StrainSpectrum::power_law(units::per_hertz(1e-30), -0.5, units::per_second(1.0),
                                              units::per_second(0.01), units::per_second(2e5));
  QuadratureOptions opts;
  opts.exact_periods = 50;
  const auto r = variance_integral(units::per_second(mu), units::seconds(tau), spec, opts);
  // Richardson step on two Simpson resolutions removes the h^4 error term
  const double coarse = simpson_variance(mu, tau, law, 0.01, 2e5, 160);
  const double fine = simpson_variance(mu, tau, law, 0.01, 2e5, 320);
  const double oracle = fine + (fine - coarse) / 15.0;
  CHECK(std::fabs(fine - coarse) < 1e-6 * oracle);
  CHECK(std::fabs(r.value - oracle) <= r.abs_error);
  CHECK(r.value == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("narrow spectral line") {
  // linear table with a triangular line of half-width d at w0
  const double mu = 2.0;
  const double tau = 1.0;
  const double w0 = 2.3;
  const double d = 1e-4 * w0;
  const double peak = 1e-25;
  const auto spec = StrainSpectrum::tabulated(
      {{0.1, 0.0}, {w0 - d, 0.0}, {w0, peak}, {w0 + d, 0.0}, {500.0, 0.0}}, Interpolation::Linear);
  const auto r = variance_integral(units::per_second(mu), units::seconds(tau), spec);
  const double c = 1.0 - std::cos(w0 * tau);
  // line area peak * d on each sign of omega
  const double expected = 4.0 * mu * mu / (2.0 * kPi) * 2.0 * peak * d * c * c / (w0 * w0);
  CHECK(r.value == doctest::Approx(expected).epsilon(1e-6));
  CHECK(r.tail_estimate == 0.0);
}

TEST_CASE("narrow band is a truncation error") {
  const auto cfg = hyper();
  try {
    variance_integral(cfg, binary_confusion_background());
    FAIL("expected TruncationError");
  } catch (const TruncationError& e) {
    CHECK(e.tail_estimate() > 100.0 * e.partial_value());
  }
  // a wide enough band passes
  CHECK_NOTHROW(variance_integral(cfg, white(1e-34, 0.0, 1e4)));
}

TEST_CASE("variance scales as mu^2 and S0") {
  const auto spec = StrainSpectrum::power_law(units::per_hertz(1e-30), -1.0, units::per_second(1.0),
                                              units::per_second(0.1), units::per_second(1e4));
  const auto spec3 = StrainSpectrum::power_law(units::per_hertz(3e-30), -1.0, units::per_second(1.0),
                                               units::per_second(0.1), units::per_second(1e4));
  const Quantity tau = units::seconds(0.5);
  const double a = variance_integral(units::per_second(1.0), tau, spec).value;
  CHECK(variance_integral(units::per_second(2.0), tau, spec).value == doctest::Approx(4.0 * a).epsilon(1e-12));
  CHECK(variance_integral(units::per_second(1.0), tau, spec3).value == doctest::Approx(3.0 * a).epsilon(1e-12));
  CHECK(variance_integral(units::per_second(0.0), tau, spec).value == 0.0);
  CHECK_THROWS_AS(variance_integral(units::per_second(1.0), units::seconds(0.0), spec), DomainError);
}

TEST_CASE("variance grows with the arm time for a white spectrum") {
  double prev = 0.0;
  for (double tau = 0.05; tau < 5.0; tau *= 1.5) {
    const double v = variance_integral(units::per_second(1.0), units::seconds(tau), white(1.0, 0.0, 1e7)).value;
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("HYPER closed forms") {
  const auto cfg = hyper();
  const double S = 1e-34;
  const double mu = 2.0 * 2.207e-25 * 0.2 * 0.2 * 0.043 / constants::kHbar;
  const double wl = 2.0 * kPi * 3.52e14;
  const double atomic = variance_white_atomic(cfg, units::per_hertz(S));
  const double photonic = variance_white_photonic(cfg, units::per_hertz(S));
  CHECK(atomic == doctest::Approx(mu * mu * S * 2.0).epsilon(1e-14));
  CHECK(photonic == doctest::Approx(wl * wl * S * 2.0 / constants::kC).epsilon(1e-14));
  CHECK(atomic == doctest::Approx(1.0366e-20).epsilon(1e-4));
  CHECK(photonic == doctest::Approx(3.2633e-12).epsilon(1e-4));
  CHECK(photonic / atomic > 1e6);

  // the closed form is the quadrature with the band opened up
  const auto wide = variance_integral(cfg, white(S, 0.0, 1e9));
  CHECK(wide.value == doctest::Approx(atomic).epsilon(1e-6));
  const auto wide_photonic = variance_integral_photonic(cfg, white(S, 0.0, 1e17));
  CHECK(wide_photonic.value == doctest::Approx(photonic).epsilon(1e-6));
}

TEST_CASE("contrast") {
  CHECK(contrast(0.0) == 1.0);
  CHECK(contrast(2.0) == doctest::Approx(std::exp(-1.0)));
  CHECK_THROWS_AS(contrast(-1e-30), DomainError);
  double prev = 1.0;
  for (double v = 1e-3; v < 50.0; v *= 2.0) {
    CHECK(contrast(v) < prev);
    prev = contrast(v);
  }
}

TEST_CASE("equivalent displacement noise") {
  const auto cfg = hyper();
  const Quantity sq = equivalent_displacement_noise(cfg, units::per_hertz(1e-34));
  CHECK(sq.dim() == dim::displacement_psd);
  CHECK(sq.value() == doctest::Approx(1e-34));
  CHECK(std::sqrt(sq.value()) < kVibrationNoiseTarget);
}

TEST_CASE("dephasing report routes") {
  const auto cfg = hyper();
  const auto r = dephasing_report(cfg, binary_confusion_background());
  CHECK(r.route == "white_closed_form");
  CHECK(r.variance_total == doctest::Approx(r.variance_atomic + r.variance_photonic));
  CHECK(r.contrast == doctest::Approx(std::exp(-0.5 * r.variance_total)));

  const auto zero = dephasing_report(cfg, white(0.0, 1.0, 2.0));
  CHECK(zero.variance_atomic == 0.0);
  CHECK(zero.variance_photonic == 0.0);
  CHECK(zero.contrast == 1.0);

  const auto pl = StrainSpectrum::power_law(units::per_hertz(1e-34), -1.0, units::per_second(1.0),
                                            units::per_second(0.01), units::per_second(1e5));
  const auto q = dephasing_report(cfg, pl);
  CHECK(q.route == "quadrature_photonic_flat_continuation");
  CHECK(q.variance_atomic > 0.0);
  CHECK(q.variance_photonic == doctest::Approx(variance_white_photonic(cfg, units::per_hertz(pl(1e5)))));
}
