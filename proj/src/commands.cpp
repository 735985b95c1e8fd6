#include "gwdecoh/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "gwdecoh/background.hpp"
#include "gwdecoh/constants.hpp"
#include "gwdecoh/dephasing.hpp"
#include "gwdecoh/error.hpp"
#include "gwdecoh/interferometer.hpp"
#include "gwdecoh/montecarlo.hpp"
#include "gwdecoh/planckscale.hpp"
#include "gwdecoh/planetary.hpp"

namespace gwdecoh {

namespace {

constexpr double kTwoPi = 2.0 * constants::kPi;

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    out[i] = std::exp(std::log(lo) + w * (std::log(hi) - std::log(lo)));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

/// Geometric centre of the band, or its upper edge when the band starts at 0.
double reference_omega(const StrainSpectrum& spec) {
  if (spec.omega_min() <= 0.0) return spec.omega_max();
  return std::sqrt(spec.omega_min() * spec.omega_max());
}

const InstrumentSpec& need_instrument(const Scenario& s, const char* product) {
  if (!s.instrument) throw ConfigError(std::string(product) + ": scenario has no instrument section");
  return *s.instrument;
}

const OrbitSpec& need_orbit(const Scenario& s, const char* product) {
  if (!s.orbit) throw ConfigError(std::string(product) + ": scenario has no orbit section");
  return *s.orbit;
}

/// Analytic atomic variance by the same route dephasing_report picks.
double atomic_variance(const InstrumentConfig& cfg, const StrainSpectrum& spec) {
  if (spec.is_white()) return variance_white_atomic(cfg, units::per_hertz(spec.max_in_band()));
  return variance_integral(cfg, spec).value;
}

}  // namespace

ProductOutput run_background(const Scenario& s) {
  const StrainSpectrum spec = s.background.build();
  const double w_ref = reference_omega(spec);
  const auto eq = equivalents(spec, units::per_second(w_ref));

  ProductOutput out;
  Record& r = out.record;
  r.add_text("model", s.background.model, "spectrum model");
  r.add("band_min_hz", spec.omega_min() / kTwoPi, "Hz", "lower band edge");
  r.add("band_max_hz", spec.omega_max() / kTwoPi, "Hz", "upper band edge");
  r.add("reference_frequency_hz", w_ref / kTwoPi, "Hz", "frequency of the conversions below");
  r.add("strain_psd", spec.evaluate(units::per_second(w_ref)), "two-sided S_h at the reference frequency");
  r.add("strain_psd_max", spec.max_in_band(), "s", "largest S_h in the band");
  r.add("noise_temperature", eq.noise_temperature, "effective noise temperature T_gr");
  r.add("graviton_number", eq.graviton_number, "graviton occupation number at the reference frequency");
  r.add("theta_gr", eq.theta_gr, "S_h / t_P^2");
  r.add("planck_time", constants::planck_time(), "t_P");

  Table t;
  t.columns = {{"frequency", "Hz", "f"},
               {"omega", "s^-1", "2 pi f"},
               {"strain_psd", "s", "S_h"},
               {"noise_temperature", "K", "T_gr"},
               {"graviton_number", "1", "n_gr"}};
  const double lo = spec.omega_min() > 0.0 ? spec.omega_min() : spec.omega_max() * 1e-6;
  for (double w : log_grid(lo, spec.omega_max(), 61)) {
    const auto e = equivalents(spec, units::per_second(w));
    t.rows.push_back({w / kTwoPi, w, spec(w), e.noise_temperature.value(), e.graviton_number.value()});
  }
  out.tables.emplace_back("curve", std::move(t));
  return out;
}

ProductOutput run_atom(const Scenario& s) {
  const InstrumentConfig cfg = need_instrument(s, "atom").build();
  const StrainSpectrum spec = s.background.build();
  const DephasingReport rep = dephasing_report(cfg, spec);

  ProductOutput out;
  Record& r = out.record;
  r.add("mu_atomic", cfg.mu_atomic(), "2 m v^2 sin(alpha) / hbar");
  r.add("area", cfg.area(), "enclosed area v^2 tau^2 sin(alpha)");
  r.add("arm_time", cfg.arm_time, "tau_at");
  r.add("rotation_prefactor", cfg.rotation_prefactor(), "2 m A / hbar, phase per unit rotation rate");
  r.add("variance_atomic", rep.variance_atomic, "1", "atomic phase variance");
  r.add("variance_photonic", rep.variance_photonic, "1", "photonic phase variance");
  r.add("variance_total", rep.variance_total, "1", "sum of both channels");
  r.add("contrast", rep.contrast, "1", "exp(-variance_total / 2)");
  r.add("contrast_atomic_only", contrast(rep.variance_atomic), "1", "exp(-variance_atomic / 2)");
  r.add("quadrature_abs_error", rep.quadrature_abs_error, "1", "error bound of the integration (0 for closed forms)");
  r.add_text("route", rep.route, "how the variances were obtained");

  const double tau = cfg.arm_time.value();
  Table filter;
  filter.columns = {{"omega_tau", "1", "omega tau_at"},
                    {"omega", "s^-1", "angular frequency"},
                    {"filter", "1", "Fourier transform of the apparatus filter"},
                    {"weight", "s^2", "4 mu^2 (1 - cos omega tau)^2 / omega^2"}};
  const ApparatusFilter g(cfg.arm_time);
  const double mu = cfg.mu_atomic().value();
  for (int i = 0; i <= 400; ++i) {
    const double x = 0.05 * i;
    const double w = x / tau;
    const double half = std::sin(0.5 * x);
    // 4 mu^2 (1 - cos x)^2 / omega^2 = 16 mu^2 sin^4(x/2) / omega^2 = 4 mu^2 tau^2 x^2 sinc^4(x/2)
    const double weight = i == 0 ? 0.0 : 16.0 * mu * mu * half * half * half * half / (w * w);
    filter.rows.push_back({x, w, g.freq_response(w), weight});
  }
  out.tables.emplace_back("filter", std::move(filter));

  Table curve;
  curve.columns = {{"arm_time", "s", "tau_at"}, {"variance_atomic", "1", "atomic phase variance at this tau_at"}};
  for (double t : log_grid(tau * 1e-2, tau * 1e2, 41)) {
    InstrumentSpec is = *s.instrument;
    is.arm_time_s = t;
    double v = std::nan("");
    try {
      v = atomic_variance(is.build(), spec);
    } catch (const TruncationError&) {
      // band too narrow for this tau; left as null
    }
    curve.rows.push_back({t, v});
  }
  out.tables.emplace_back("curve", std::move(curve));
  return out;
}

ProductOutput run_photon(const Scenario& s) {
  const InstrumentConfig cfg = need_instrument(s, "photon").build();
  const StrainSpectrum spec = s.background.build();
  const DephasingReport rep = dephasing_report(cfg, spec);
  const Quantity sq = rep.displacement_noise;

  ProductOutput out;
  Record& r = out.record;
  r.add("laser_omega", cfg.laser_omega, "laser angular frequency");
  r.add("photon_path", cfg.photon_path, "single-pass optical path");
  r.add("photon_time", cfg.photon_time(), "L / c");
  r.add("variance_photonic", rep.variance_photonic, "1", "photonic phase variance");
  r.add("variance_atomic", rep.variance_atomic, "1", "atomic phase variance");
  r.add("photonic_to_atomic_ratio", rep.variance_atomic > 0.0 ? rep.variance_photonic / rep.variance_atomic : std::nan(""),
        "1", "dominance of the photonic channel");
  r.add("displacement_noise", sq, "equivalent mirror displacement noise S_q = S_h L^2");
  r.add("displacement_noise_asd", std::sqrt(sq.value()), "m s^0.5", "sqrt(S_q)");
  r.add("vibration_noise_target_asd", kVibrationNoiseTarget, "m s^0.5", "targeted mirror vibration level");
  r.add("below_vibration_target", std::sqrt(sq.value()) < kVibrationNoiseTarget ? 1.0 : 0.0, "1",
        "1 when sqrt(S_q) is below the vibration target");
  r.add_text("route", rep.route, "how the variances were obtained");
  return out;
}

ProductOutput run_montecarlo(const Scenario& s, unsigned workers_override) {
  const InstrumentConfig cfg = need_instrument(s, "montecarlo").build();
  SimulationConfig sim = s.simulation_config();
  if (workers_override != 0) sim.workers = workers_override;
  sim.validate(cfg);
  const bool dump = s.simulation->dump_phases;
  const EnsembleResult res = ensemble_dephasing(cfg, sim, {.keep_phases = dump});

  const double analytic = atomic_variance(cfg, sim.spectrum);
  const double expected_contrast = std::exp(-0.5 * analytic);

  ProductOutput out;
  Record& r = out.record;
  r.add("seed", static_cast<double>(sim.seed), "1", "base seed");
  r.add("realizations", static_cast<double>(res.n_realizations), "1", "ensemble size");
  r.add("dt", sim.dt, "sampling step");
  r.add("duration", sim.duration, "series length");
  r.add("samples", static_cast<double>(sim.sample_count()), "1", "samples per realization");
  r.add_text("analytic_route", sim.spectrum.is_white() ? "white_closed_form" : "quadrature",
             "how the analytic variance was obtained");
  r.add("analytic_variance", analytic, "1", "analytic atomic phase variance");
  r.add("empirical_variance", res.empirical_variance, "1", "unbiased sample variance of the phase");
  r.add("standard_error", res.standard_error, "1", "standard error of the sample variance");
  r.add("variance_z", res.standard_error > 0.0 ? (res.empirical_variance - analytic) / res.standard_error : 0.0, "1",
        "(empirical - analytic) / standard_error");
  r.add("analytic_contrast", expected_contrast, "1", "exp(-analytic_variance / 2)");
  r.add("empirical_contrast", res.empirical_contrast, "1", "mean of cos(phase)");
  r.add("contrast_standard_error", res.contrast_standard_error, "1", "standard error of the mean of cos(phase)");
  r.add("contrast_z",
        res.contrast_standard_error > 0.0 ? (res.empirical_contrast - expected_contrast) / res.contrast_standard_error
                                          : 0.0,
        "1", "(empirical - analytic) / contrast_standard_error");
  r.add("mean_phase", res.mean_phase, "1", "sample mean of the phase");
  r.add("skewness", res.skewness, "1", "sample skewness of the phase");
  r.add("excess_kurtosis", res.excess_kurtosis, "1", "sample excess kurtosis of the phase");
  r.add("psd_max_relative_deviation", res.realized_psd_check, "1",
        "max over interior bins of |mean periodogram / S_h - 1|");

  if (dump) {
    Table t;
    t.columns = {{"realization", "1", "index"}, {"phase", "1", "two-arm phase"}};
    for (std::size_t i = 0; i < res.phases.size(); ++i) t.rows.push_back({static_cast<double>(i), res.phases[i]});
    out.tables.emplace_back("phases", std::move(t));
  }
  return out;
}

ProductOutput run_planetary(const Scenario& s) {
  const OrbitSpec& os = need_orbit(s, "planetary");
  const OrbitConfig orbit = os.build();
  const StrainSpectrum spec = s.background.build();
  const KeplerParameters k = kepler_derive(orbit);
  const DiffusionResult d = diffusion_coefficient(orbit, spec);
  const Quantity exposure = units::seconds(os.exposure_time_s);
  const Quantity hbar2 = constants::hbar() * constants::hbar();

  ProductOutput out;
  Record& r = out.record;
  r.add("reduced_mass", orbit.reduced_mass(), "m_a m_b / (m_a + m_b)");
  r.add("angular_frequency", k.angular_frequency, "orbital angular frequency");
  r.add("velocity", k.velocity, "relative orbital velocity");
  r.add("acceleration", k.acceleration, "centripetal acceleration");
  r.add("evaluation_omega", d.evaluation_omega, "2 Omega, where S_h is evaluated");
  r.add("noise_temperature", d.noise_temperature, "T_gr at 2 Omega");
  r.add("gamma_gr", d.gamma_gr, "gravitational damping rate");
  r.add("diffusion", d.diffusion, "momentum diffusion coefficient D");
  r.add("diffusion_over_hbar2", d.diffusion / hbar2, "D / hbar^2");
  r.add("variance_rate_per_dx2", d.variance_rate_per_dx2, "2 D / hbar^2");
  r.add("exposure_time", exposure, "tau used for the variances below");
  r.add("momentum_spread", momentum_spread(d, exposure), "2 D tau");

  Table dec;
  dec.columns = {{"separation", "m", "dx"},
                 {"decoherence_time", "s", "time for unit variance"},
                 {"variance", "1", "2 D dx^2 tau / hbar^2 at the exposure time"},
                 {"decoherence_factor", "1", "exp(-variance / 2)"},
                 {"equivalent_variance", "1", "mu^2 S_h 2 tau of the equivalent interferometer"},
                 {"route_ratio", "1", "variance / equivalent_variance"}};
  for (std::size_t i = 0; i < os.separations_m.size(); ++i) {
    const Quantity dx = units::meters(os.separations_m[i]);
    const Quantity tdec = decoherence_time(d, dx);
    const DecoherenceResult v = decoherence_variance(orbit, spec, dx, exposure);
    double equiv = std::nan("");
    double ratio = std::nan("");
    if (os.separations_m[i] <= 2.0 * os.radius_m) {
      equiv = equivalent_interferometer_variance(orbit, spec, dx, exposure);
      if (equiv > 0.0) ratio = route_ratio(orbit, spec, dx, exposure);
    }
    const std::string p = "separation_" + std::to_string(i);
    r.add(p + ".dx", dx, "superposition separation");
    r.add(p + ".decoherence_time", tdec, "time for unit variance");
    r.add(p + ".variance", v.variance, "1", "variance at the exposure time");
    r.add(p + ".route_ratio", ratio, "1", "diffusion route / equivalent-interferometer route");
    dec.rows.push_back({dx.value(), tdec.value(), v.variance, v.factor, equiv, ratio});
  }
  out.tables.emplace_back("decoherence", std::move(dec));

  std::vector<DampingChannel> channels{{"gravitational", d.gamma_gr, d.noise_temperature}};
  std::size_t reference = 0;
  for (const auto& c : os.channels) {
    if (c.name == os.reference_channel) reference = channels.size();
    channels.push_back({c.name, units::per_second(c.damping_per_s), units::kelvin(c.temperature_k)});
  }
  const ChannelReport cr = channel_comparison(orbit.reduced_mass(), channels, reference);
  r.add_text("reference_channel", channels[reference].name, "channel the ratios are taken against");
  Table ct;
  ct.columns = {{"channel", "1", "index in the order listed in channel_names"},
                {"damping", "s^-1", "damping rate"},
                {"temperature", "K", "noise temperature"},
                {"diffusion", "m^2 kg^2 s^-3", "m Gamma k_B T"},
                {"damping_ratio", "1", "relative to the reference channel"},
                {"temperature_ratio", "1", "relative to the reference channel"},
                {"diffusion_ratio", "1", "relative to the reference channel"}};
  std::string names;
  for (std::size_t i = 0; i < cr.channels.size(); ++i) {
    const auto& c = cr.channels[i];
    const std::string p = "channel." + c.name;
    r.add(p + ".damping", c.damping, "damping rate");
    r.add(p + ".temperature", c.temperature, "noise temperature");
    r.add(p + ".diffusion", c.diffusion, "m Gamma k_B T");
    r.add(p + ".damping_ratio", cr.damping_ratio[i], "1", "damping relative to the reference channel");
    r.add(p + ".temperature_ratio", cr.temperature_ratio[i], "1", "temperature relative to the reference channel");
    r.add(p + ".diffusion_ratio", cr.diffusion_ratio[i], "1", "diffusion relative to the reference channel");
    ct.rows.push_back({static_cast<double>(i), c.damping.value(), c.temperature.value(), c.diffusion.value(),
                       cr.damping_ratio[i], cr.temperature_ratio[i], cr.diffusion_ratio[i]});
    names += (i ? " " : "") + c.name;
  }
  r.add_text("channel_names", names, "channel names in table order");
  auto join = [](const std::vector<std::string>& v) {
    std::string o;
    for (std::size_t i = 0; i < v.size(); ++i) o += (i ? " > " : "") + v[i];
    return o;
  };
  r.add_text("damping_order", join(cr.damping_order), "channels by decreasing damping");
  r.add_text("diffusion_order", join(cr.diffusion_order), "channels by decreasing diffusion");
  out.tables.emplace_back("channels", std::move(ct));
  return out;
}

ProductOutput run_planck(const Scenario& s) {
  if (!s.instrument && !s.orbit) throw ConfigError("planck: scenario needs an instrument or an orbit section");
  const StrainSpectrum spec = s.background.build();
  const PlanckSpec ps = s.planck.value_or(PlanckSpec{});

  const double w_ref = ps.reference_frequency_hz ? kTwoPi * *ps.reference_frequency_hz : reference_omega(spec);
  const Quantity sh = spec.evaluate(units::per_second(w_ref));
  const Quantity theta = theta_gr(sh);

  ScalingInput in{units::kilograms(0.0), units::meters_per_second(0.0), 0.0, units::seconds(0.0), theta};
  std::string probe;
  if (s.instrument) {
    const InstrumentConfig cfg = s.instrument->build();
    in.mass = cfg.atom_mass;
    in.velocity = cfg.atom_velocity;
    in.sin_aperture = cfg.sin_aperture;
    in.exposure = cfg.arm_time;
    probe = "instrument";
  } else {
    const OrbitConfig orbit = s.orbit->build();
    const double dx = s.orbit->separations_m.empty() ? constants::planck_length().value() : s.orbit->separations_m[0];
    in.mass = orbit.reduced_mass();
    in.velocity = kepler_derive(orbit).velocity;
    in.sin_aperture = equivalent_interferometer(orbit, units::meters(dx)).sin_aperture;
    in.exposure = units::seconds(s.orbit->exposure_time_s);
    probe = "orbit";
  }
  if (ps.sin_aperture) in.sin_aperture = *ps.sin_aperture;
  if (ps.exposure_s) in.exposure = units::seconds(*ps.exposure_s);

  const double half = scaling_variance(in);
  const Quantity mu = 2.0 * in.mass * in.velocity * in.velocity * Quantity(in.sin_aperture) / constants::hbar();
  const double direct = (mu * mu * sh * in.exposure).scalar();

  ProductOutput out;
  Record& r = out.record;
  r.add_text("probe", probe, "section the template parameters come from");
  r.add("reference_frequency_hz", w_ref / kTwoPi, "Hz", "frequency at which S_h is converted");
  r.add("theta_gr", theta, "S_h / t_P^2");
  r.add("mass", in.mass, "probe mass");
  r.add("velocity", in.velocity, "probe velocity");
  r.add("sin_aperture", in.sin_aperture, "1", "sin(alpha)");
  r.add("exposure", in.exposure, "tau");
  r.add("scaling_variance", half, "1", "dPhi^2 / 2 from the Planck-scale form");
  r.add("direct_variance", direct, "1", "mu^2 S_h tau");
  r.add("scaling_variance_order_of_magnitude", scaling_variance_order_of_magnitude(in), "1",
        "(m v^2 sin(alpha) / (m_P c^2))^2 Theta_gr tau, order-unity factors dropped");
  r.add("kinetic_to_planck_energy", (in.mass * in.velocity * in.velocity / constants::planck_energy()).scalar(), "1",
        "m v^2 / (m_P c^2)");

  std::vector<double> masses = ps.mass_grid_kg.expand();
  std::vector<double> velocities = ps.velocity_grid_m_per_s.expand();
  if (masses.empty()) masses = log_grid(in.mass.value() * 1e-6, in.mass.value() * 1e6, 25);
  if (velocities.empty()) velocities = {in.velocity.value()};
  if (in.mass.value() > 0.0 || !ps.mass_grid_kg.expand().empty()) {
    const ScanTable scan = transition_scan(in, masses, velocities);
    Table t;
    t.columns = {{"m", "kg", "probe mass"},
                 {"v", "m s^-1", "probe velocity"},
                 {"variance", "1", "dPhi^2"},
                 {"on_contour", "1", "1 for located dPhi^2 = 1 points"}};
    std::size_t contour = 0;
    for (const auto& row : scan.rows) {
      t.rows.push_back({row.mass, row.velocity, row.variance, row.on_contour ? 1.0 : 0.0});
      if (row.on_contour) ++contour;
    }
    r.add("contour_points", static_cast<double>(contour), "1", "number of dPhi^2 = 1 crossings located");
    out.tables.emplace_back("scan", std::move(t));
  }
  return out;
}

ProductOutput run_product(const Scenario& s, const std::string& subcommand, unsigned workers_override) {
  if (subcommand == "report") return run_report(s, workers_override);
  if (!computable(s, subcommand)) {
    const auto& k = known_products();
    if (std::find(k.begin(), k.end(), subcommand) == k.end()) throw ConfigError("unknown subcommand '" + subcommand + "'");
    throw ConfigError(subcommand + ": scenario lacks the section this product needs");
  }
  if (subcommand == "background") return run_background(s);
  if (subcommand == "atom") return run_atom(s);
  if (subcommand == "photon") return run_photon(s);
  if (subcommand == "montecarlo") return run_montecarlo(s, workers_override);
  if (subcommand == "planetary") return run_planetary(s);
  return run_planck(s);
}

ProductOutput run_report(const Scenario& s, unsigned workers_override) {
  std::vector<std::string> products = s.outputs;
  if (products.empty()) {
    for (const auto& p : known_products()) {
      if (computable(s, p)) products.push_back(p);
    }
  }
  ProductOutput out;
  out.record.add_text("scenario", s.name, "scenario name");
  for (const auto& p : products) {
    ProductOutput part = run_product(s, p, workers_override);
    out.record.merge(p, part.record);
    for (auto& [suffix, table] : part.tables) out.tables.emplace_back(p + "." + suffix, std::move(table));
  }
  return out;
}

std::vector<std::filesystem::path> write_product(const std::filesystem::path& dir, const std::string& scenario,
                                                 const std::string& subcommand, Format format,
                                                 const ProductOutput& out) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto put = [&](const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error("cannot write " + p.string());
    f << text;
    if (!f) throw Error("write failed for " + p.string());
    written.push_back(p);
  };
  const std::string stem = scenario + "." + subcommand;
  const std::string main = format == Format::Json ? out.record.to_json().dump(2) + "\n" : out.record.to_csv();
  put(dir / (stem + "." + extension(format)), main);
  put(dir / (stem + "." + extension(format) + ".schema.json"), out.record.schema().dump(2) + "\n");
  for (const auto& [suffix, table] : out.tables) {
    const std::string name = stem + "." + suffix + ".csv";
    put(dir / name, table.to_csv());
    put(dir / (name + ".schema.json"), table.schema().dump(2) + "\n");
  }
  return written;
}

}  // namespace gwdecoh
