#include "doctest.h"

#include <cmath>
#include <random>

#include "gwdecoh/background.hpp"
#include "gwdecoh/constants.hpp"
#include "gwdecoh/error.hpp"
#include "gwdecoh/planckscale.hpp"

using namespace gwdecoh;

namespace {

ScalingInput hyper_input(double theta = 3.4405005e52) {
  return {units::kilograms(2.207e-25), units::meters_per_second(0.2), 0.043, units::seconds(1.0),
          units::per_second(theta)};
}

/// mu^2 S_h tau with S_h = Theta t_P^2.
double direct(const ScalingInput& in) {
  const double mu = 2.0 * in.mass.value() * std::pow(in.velocity.value(), 2) * in.sin_aperture / constants::kHbar;
  const double tp = constants::planck_time().value();
  return mu * mu * in.theta_gr.value() * tp * tp * in.exposure.value();
}

}  // namespace

TEST_CASE("Planck-scale form equals mu^2 S_h tau") {
  const auto in = hyper_input();
  CHECK(scaling_variance(in) == doctest::Approx(direct(in)).epsilon(1e-12));
  CHECK(scaling_variance(in) == doctest::Approx(5.18e-21).epsilon(2e-3));
  // order-of-magnitude form drops a factor 4
  CHECK(scaling_variance_order_of_magnitude(in) == doctest::Approx(0.25 * scaling_variance(in)).epsilon(1e-12));

  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const ScalingInput r{units::kilograms(std::pow(10.0, -27.0 + 50.0 * u(rng))),
                         units::meters_per_second(std::pow(10.0, -3.0 + 7.0 * u(rng))), u(rng),
                         units::seconds(std::pow(10.0, -4.0 + 8.0 * u(rng))),
                         units::per_second(std::pow(10.0, 40.0 + 20.0 * u(rng)))};
    CHECK(scaling_variance(r) == doctest::Approx(direct(r)).epsilon(1e-12));
  }
}

TEST_CASE("same S_h through the background conversion") {
  const double S = 1e-34;
  const double theta = theta_gr(units::per_hertz(S)).value();
  const auto in = hyper_input(theta);
  const double mu = 2.0 * 2.207e-25 * 0.04 * 0.043 / constants::kHbar;
  CHECK(scaling_variance(in) == doctest::Approx(mu * mu * S * 1.0).epsilon(1e-12));
}

TEST_CASE("trivial scalings") {
  auto in = hyper_input();
  in.mass = units::kilograms(0.0);
  CHECK(scaling_variance(in) == 0.0);
  in = hyper_input();
  const double v1 = scaling_variance(in);
  in.mass = units::kilograms(2.0 * 2.207e-25);
  CHECK(scaling_variance(in) == doctest::Approx(4.0 * v1).epsilon(1e-14));
  in = hyper_input();
  in.exposure = units::seconds(3.0);
  CHECK(scaling_variance(in) == doctest::Approx(3.0 * v1).epsilon(1e-14));
}

TEST_CASE("depends on m v^2 sin(alpha) and Theta tau only") {
  auto a = hyper_input();
  auto b = a;
  // m x 8, v / 2, sin(alpha) / 2 leaves m v^2 sin(alpha) unchanged
  b.mass = units::kilograms(a.mass.value() * 8.0);
  b.velocity = units::meters_per_second(a.velocity.value() / 2.0);
  b.sin_aperture = a.sin_aperture / 2.0;
  b.theta_gr = units::per_second(a.theta_gr.value() * 5.0);
  b.exposure = units::seconds(a.exposure.value() / 5.0);
  CHECK(scaling_variance(b) == doctest::Approx(scaling_variance(a)).epsilon(1e-14));
}

TEST_CASE("input validation") {
  auto in = hyper_input();
  in.sin_aperture = 1.2;
  CHECK_THROWS_AS(scaling_variance(in), DomainError);
  in = hyper_input();
  in.velocity = units::meters_per_second(-1.0);
  CHECK_THROWS_AS(scaling_variance(in), DomainError);
  in = hyper_input();
  in.theta_gr = units::seconds(1.0);
  CHECK_THROWS_AS(scaling_variance(in), DimensionError);
}

TEST_CASE("fullerene and Moon regimes") {
  const double theta = 3.44e52;
  const ScalingInput fullerene{units::kilograms(1.2e-24), units::meters_per_second(200.0), 1e-3,
                               units::seconds(1e-2), units::per_second(theta)};
  CHECK(2.0 * scaling_variance(fullerene) < 1e-6);

  // reduced lunar mass and orbital speed, atomic-scale separation on the orbit
  for (double dx : {1e-10, 1e-9}) {
    for (double tau : {1.0, 100.0}) {
      const ScalingInput moon{units::kilograms(7.2528e22), units::meters_per_second(1024.5), dx / (2.0 * 3.844e8),
                              units::seconds(tau), units::per_second(theta)};
      CHECK(2.0 * scaling_variance(moon) > 1e50);
    }
  }
}

TEST_CASE("transition scan") {
  const auto tmpl = hyper_input();
  std::vector<double> masses;
  for (double m = 1e-27; m < 1e-12; m *= 10.0) masses.push_back(m);
  std::vector<double> reversed(masses.rbegin(), masses.rend());
  const std::vector<double> velocities{0.2, 20.0};
  const auto scan = transition_scan(tmpl, reversed, velocities);

  std::size_t grid = 0;
  std::vector<ScanRow> contour;
  for (const auto& row : scan.rows) {
    if (row.on_contour) {
      contour.push_back(row);
    } else {
      ++grid;
    }
  }
  CHECK(grid == masses.size() * velocities.size());
  CHECK(contour.size() == 2);

  // grid rows: velocity outer, masses increasing, strictly increasing variance
  for (std::size_t vi = 0; vi < velocities.size(); ++vi) {
    for (std::size_t i = 0; i < masses.size(); ++i) {
      const auto& row = scan.rows[vi * masses.size() + i];
      CHECK(row.velocity == velocities[vi]);
      CHECK(row.mass == masses[i]);
      ScalingInput in = tmpl;
      in.mass = units::kilograms(row.mass);
      in.velocity = units::meters_per_second(row.velocity);
      CHECK(row.variance == doctest::Approx(2.0 * scaling_variance(in)).epsilon(1e-14));
      if (i > 0) CHECK(row.variance > scan.rows[vi * masses.size() + i - 1].variance);
      if (i > 0) CHECK(row.variance == doctest::Approx(100.0 * scan.rows[vi * masses.size() + i - 1].variance));
    }
  }

  for (const auto& c : contour) {
    // dPhi^2 is quadratic in m, so the exact crossing is known in closed form
    ScalingInput in = tmpl;
    in.mass = units::kilograms(1.0);
    in.velocity = units::meters_per_second(c.velocity);
    const double m_exact = 1.0 / std::sqrt(2.0 * scaling_variance(in));
    CHECK(std::fabs(c.mass / m_exact - 1.0) < kContourRelativeTolerance);
    CHECK(c.variance == doctest::Approx(1.0).epsilon(3.0 * kContourRelativeTolerance));
  }
  CHECK(contour[1].mass < contour[0].mass);

  CHECK_THROWS_AS(transition_scan(tmpl, {}, velocities), DomainError);
  CHECK_THROWS_AS(transition_scan(tmpl, masses, {}), DomainError);
  CHECK_THROWS_AS(transition_scan(tmpl, {1.0, -1.0}, velocities), DomainError);
}

TEST_CASE("scan without a crossing has no contour rows") {
  const auto scan = transition_scan(hyper_input(), {1e-27, 1e-26}, {0.2});
  CHECK(scan.rows.size() == 2);
  for (const auto& r : scan.rows) CHECK_FALSE(r.on_contour);
}
