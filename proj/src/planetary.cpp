#include "gwdecoh/planetary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gwdecoh/constants.hpp"
#include "gwdecoh/error.hpp"

namespace gwdecoh {

namespace {

void require_nonnegative(const Quantity& q, Dim d, const char* name) {
  if (!(q.in(d) >= 0.0)) throw DomainError(std::string(name) + " must be >= 0");
}

std::vector<std::string> order_by(const std::vector<ChannelEntry>& entries, Quantity ChannelEntry::*field) {
  std::vector<std::size_t> idx(entries.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return (entries[a].*field).value() > (entries[b].*field).value();
  });
  std::vector<std::string> names;
  for (std::size_t i : idx) names.push_back(entries[i].name);
  return names;
}

}  // namespace

void OrbitConfig::validate() const {
  for (const auto* m : {&mass_a, &mass_b}) {
    const double v = m->in(dim::mass);
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("orbit masses must be positive and finite");
  }
  const double r = radius.in(dim::length);
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("orbit radius must be positive and finite");
}

Quantity OrbitConfig::reduced_mass() const { return mass_a * mass_b / (mass_a + mass_b); }

Quantity OrbitConfig::total_mass() const { return mass_a + mass_b; }

KeplerParameters kepler_derive(const OrbitConfig& orbit) {
  orbit.validate();
  const Quantity omega = sqrt(constants::G() * orbit.total_mass() / pow(orbit.radius, 3));
  const Quantity v = orbit.radius * omega;
  return {omega, v, v * v / orbit.radius};
}

Quantity damping_rate(const OrbitConfig& orbit) {
  const KeplerParameters k = kepler_derive(orbit);
  return Quantity(32.0) * constants::G() * orbit.reduced_mass() * k.acceleration * k.acceleration /
         (Quantity(5.0) * pow(constants::c(), 5));
}

DiffusionResult diffusion_coefficient(const OrbitConfig& orbit, const StrainSpectrum& spectrum) {
  const KeplerParameters k = kepler_derive(orbit);
  const Quantity omega = Quantity(2.0) * k.angular_frequency;
  const Quantity temperature = to_noise_temperature(spectrum.evaluate(omega));
  const Quantity gamma = damping_rate(orbit);
  const Quantity d = orbit.reduced_mass() * gamma * constants::k_B() * temperature;
  return {gamma, d, Quantity(2.0) * d / pow(constants::hbar(), 2), temperature, omega};
}

DecoherenceResult decoherence_variance(const OrbitConfig& orbit, const StrainSpectrum& spectrum,
                                       const Quantity& separation, const Quantity& exposure) {
  require_nonnegative(separation, dim::length, "separation");
  require_nonnegative(exposure, dim::time, "exposure time");
  const DiffusionResult d = diffusion_coefficient(orbit, spectrum);
  const double variance = (d.variance_rate_per_dx2 * separation * separation * exposure).scalar();
  return {variance, std::exp(-0.5 * variance)};
}

Quantity decoherence_time(const DiffusionResult& diffusion, const Quantity& separation) {
  require_nonnegative(separation, dim::length, "separation");
  const Quantity rate = diffusion.variance_rate_per_dx2 * separation * separation;
  if (rate.value() <= 0.0) return {std::numeric_limits<double>::infinity(), dim::time};
  return Quantity(1.0) / rate;
}

Quantity momentum_spread(const DiffusionResult& diffusion, const Quantity& exposure) {
  require_nonnegative(exposure, dim::time, "exposure time");
  return Quantity(2.0) * diffusion.diffusion * exposure;
}

EquivalentInterferometer equivalent_interferometer(const OrbitConfig& orbit, const Quantity& separation) {
  require_nonnegative(separation, dim::length, "separation");
  const KeplerParameters k = kepler_derive(orbit);
  const double sin_alpha = (separation / (Quantity(2.0) * orbit.radius)).scalar();
  if (sin_alpha > 1.0) throw DomainError("separation exceeds the orbit diameter");
  const Quantity mu = Quantity(2.0) * orbit.reduced_mass() * k.velocity * k.velocity * Quantity(sin_alpha) /
                      constants::hbar();
  return {mu, sin_alpha};
}

double equivalent_interferometer_variance(const OrbitConfig& orbit, const StrainSpectrum& spectrum,
                                          const Quantity& separation, const Quantity& exposure) {
  require_nonnegative(exposure, dim::time, "exposure time");
  const EquivalentInterferometer eq = equivalent_interferometer(orbit, separation);
  const Quantity level = spectrum.evaluate(Quantity(2.0) * kepler_derive(orbit).angular_frequency);
  return (eq.mu * eq.mu * level * Quantity(2.0) * exposure).scalar();
}

double route_ratio(const OrbitConfig& orbit, const StrainSpectrum& spectrum, const Quantity& separation,
                   const Quantity& exposure) {
  return decoherence_variance(orbit, spectrum, separation, exposure).variance /
         equivalent_interferometer_variance(orbit, spectrum, separation, exposure);
}

ChannelReport channel_comparison(const Quantity& reduced_mass, const std::vector<DampingChannel>& channels,
                                 std::size_t reference) {
  if (channels.empty()) throw DomainError("channel comparison needs at least one channel");
  if (reference >= channels.size()) throw DomainError("reference channel index out of range");
  ChannelReport r;
  for (const auto& c : channels) {
    require_nonnegative(c.damping, dim::frequency, "channel damping rate");
    require_nonnegative(c.temperature, dim::temperature, "channel temperature");
    r.channels.push_back({c.name, c.damping, c.temperature, reduced_mass * c.damping * constants::k_B() * c.temperature});
  }
  r.damping_order = order_by(r.channels, &ChannelEntry::damping);
  r.diffusion_order = order_by(r.channels, &ChannelEntry::diffusion);
  const ChannelEntry& ref = r.channels[reference];
  for (const auto& e : r.channels) {
    r.damping_ratio.push_back((e.damping / ref.damping).scalar());
    r.temperature_ratio.push_back((e.temperature / ref.temperature).scalar());
    r.diffusion_ratio.push_back((e.diffusion / ref.diffusion).scalar());
  }
  return r;
}

}  // namespace gwdecoh
