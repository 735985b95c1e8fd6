#include "gwdecoh/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "gwdecoh/constants.hpp"
#include "gwdecoh/error.hpp"

namespace gwdecoh {

namespace {

using nlohmann::json;
constexpr double kTwoPi = 2.0 * constants::kPi;

/// Typed access to one JSON object; every key read is recorded so that
/// leftovers can be reported by name.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + ": expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  double number(const std::string& key) {
    const json& v = get(key);
    if (!v.is_number()) throw ConfigError(where(key) + ": expected a number");
    return v.get<double>();
  }

  std::optional<double> opt_number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return number(key);
  }

  std::uint64_t unsigned_integer(const std::string& key) {
    const json& v = get(key);
    // signed storage is fine as long as the value is non-negative
    const bool ok = v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
    if (!ok) throw ConfigError(where(key) + ": expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  bool boolean(const std::string& key) {
    const json& v = get(key);
    if (!v.is_boolean()) throw ConfigError(where(key) + ": expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key) {
    const json& v = get(key);
    if (!v.is_string()) throw ConfigError(where(key) + ": expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key) {
    const json& v = get(key);
    if (!v.is_array()) throw ConfigError(where(key) + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError(where(key) + ": expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  Reader object(const std::string& key) { return Reader(get(key), where(key)); }
  const json& raw(const std::string& key) { return get(key); }
  std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() const {
    for (const auto& [key, _] : j_.items()) {
      if (!used_.count(key)) throw ConfigError(where(key) + ": unknown key");
    }
  }

 private:
  const json& get(const std::string& key) {
    if (!j_.contains(key)) throw ConfigError(where(key) + ": missing required key");
    used_.insert(key);
    return j_.at(key);
  }
  std::string where() const { return path_.empty() ? "<root>" : path_; }

  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

std::array<double, 2> read_band(Reader& r) {
  const auto band = r.numbers("band_hz");
  if (band.size() != 2) throw ConfigError(r.where("band_hz") + ": expected [f_min, f_max]");
  return {band[0], band[1]};
}

SpectrumSpec read_spectrum(Reader r, const std::filesystem::path& base_dir) {
  SpectrumSpec s;
  s.model = r.string("model");
  if (s.model == "white") {
    s.level_per_hz = r.number("level_per_hz");
    s.band_hz = read_band(r);
  } else if (s.model == "power_law") {
    s.amplitude_per_hz = r.number("amplitude_per_hz");
    s.exponent = r.number("exponent");
    s.pivot_hz = r.number("pivot_hz");
    s.band_hz = read_band(r);
  } else if (s.model == "tabulated") {
    if (r.has("interpolation")) {
      try {
        s.interpolation = interpolation_from_string(r.string("interpolation"));
      } catch (const DomainError& e) {
        throw ConfigError(r.where("interpolation") + ": " + e.what());
      }
    }
    if (r.has("file")) {
      std::filesystem::path file = r.string("file");
      if (file.is_relative()) file = base_dir / file;
      s.points_hz = read_spectrum_table(file);
    } else {
      const json& pts = r.raw("points_hz");
      if (!pts.is_array()) throw ConfigError(r.where("points_hz") + ": expected [[f, S_h], ...]");
      for (const auto& p : pts) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
          throw ConfigError(r.where("points_hz") + ": expected [[f, S_h], ...]");
        }
        s.points_hz.emplace_back(p[0].get<double>(), p[1].get<double>());
      }
    }
  } else {
    throw ConfigError(r.where("model") + ": unknown spectrum model '" + s.model + "'");
  }
  r.finish();
  return s;
}

json spectrum_json(const SpectrumSpec& s) {
  json j;
  j["model"] = s.model;
  if (s.model == "white") {
    j["level_per_hz"] = s.level_per_hz;
    j["band_hz"] = {s.band_hz[0], s.band_hz[1]};
  } else if (s.model == "power_law") {
    j["amplitude_per_hz"] = s.amplitude_per_hz;
    j["exponent"] = s.exponent;
    j["pivot_hz"] = s.pivot_hz;
    j["band_hz"] = {s.band_hz[0], s.band_hz[1]};
  } else {
    j["interpolation"] = to_string(s.interpolation);
    json pts = json::array();
    for (const auto& [f, v] : s.points_hz) pts.push_back({f, v});
    j["points_hz"] = pts;
  }
  return j;
}

GridSpec read_grid(Reader& parent, const std::string& key) {
  GridSpec g;
  const json& raw = parent.raw(key);
  if (raw.is_array()) {
    g.values = parent.numbers(key);
    return g;
  }
  Reader r(raw, parent.where(key));
  g.min = r.number("min");
  g.max = r.number("max");
  g.count = r.unsigned_integer("count");
  if (r.has("log")) g.log = r.boolean("log");
  r.finish();
  return g;
}

json grid_json(const GridSpec& g) {
  if (!g.values.empty()) return g.values;
  return {{"min", g.min}, {"max", g.max}, {"count", g.count}, {"log", g.log}};
}

}  // namespace

StrainSpectrum SpectrumSpec::build() const {
  try {
    if (model == "white") {
      return StrainSpectrum::white(units::per_hertz(level_per_hz), units::per_second(kTwoPi * band_hz[0]),
                                   units::per_second(kTwoPi * band_hz[1]));
    }
    if (model == "power_law") {
      return StrainSpectrum::power_law(units::per_hertz(amplitude_per_hz), exponent,
                                       units::per_second(kTwoPi * pivot_hz), units::per_second(kTwoPi * band_hz[0]),
                                       units::per_second(kTwoPi * band_hz[1]));
    }
    std::vector<std::pair<double, double>> pts;
    for (const auto& [f, v] : points_hz) pts.emplace_back(kTwoPi * f, v);
    return StrainSpectrum::tabulated(std::move(pts), interpolation);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("spectrum: ") + e.what());
  }
}

InstrumentConfig InstrumentSpec::build() const {
  InstrumentConfig cfg{units::kilograms(atom_mass_kg),       units::meters_per_second(atom_velocity_m_per_s),
                       units::seconds(arm_time_s),           sin_aperture,
                       units::per_second(kTwoPi * laser_frequency_hz), units::meters(photon_path_m)};
  try {
    cfg.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("instrument: ") + e.what());
  }
  return cfg;
}

OrbitConfig OrbitSpec::build() const {
  OrbitConfig orbit{units::kilograms(mass_a_kg), units::kilograms(mass_b_kg), units::meters(radius_m)};
  try {
    orbit.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("orbit: ") + e.what());
  }
  return orbit;
}

std::vector<double> GridSpec::expand() const {
  if (!values.empty()) return values;
  if (count == 0) return {};
  if (count == 1) return {min};
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    out.push_back(log ? min * std::pow(max / min, t) : min + t * (max - min));
  }
  return out;
}

const std::vector<std::string>& known_products() {
  static const std::vector<std::string> products{"background", "atom", "photon", "montecarlo", "planetary", "planck"};
  return products;
}

bool computable(const Scenario& s, const std::string& product) {
  if (product == "background") return true;
  if (product == "atom" || product == "photon") return s.instrument.has_value();
  if (product == "montecarlo") return s.instrument.has_value() && s.simulation.has_value();
  if (product == "planetary") return s.orbit.has_value();
  if (product == "planck") return s.instrument.has_value() || s.orbit.has_value();
  return false;
}

void Scenario::validate() const {
  if (name.empty()) throw ConfigError("name: must be a non-empty string");
  if (!instrument && !orbit) throw ConfigError("instrument/orbit: at least one section is required");
  const auto& products = known_products();
  for (const auto& o : outputs) {
    if (std::find(products.begin(), products.end(), o) == products.end()) {
      throw ConfigError("outputs: unknown product '" + o + "'");
    }
    if (!computable(*this, o)) throw ConfigError("outputs: '" + o + "' needs a section this scenario lacks");
  }
  background.build();
  if (instrument) instrument->build();
  if (orbit) {
    orbit->build();
    for (const auto& c : orbit->channels) {
      if (c.name.empty() || c.name == "gravitational") {
        throw ConfigError("orbit.channels: channel names must be non-empty and not 'gravitational'");
      }
    }
    if (!orbit->reference_channel.empty() && orbit->reference_channel != "gravitational" &&
        std::none_of(orbit->channels.begin(), orbit->channels.end(),
                     [&](const ChannelSpec& c) { return c.name == orbit->reference_channel; })) {
      throw ConfigError("orbit.reference_channel: no channel named '" + orbit->reference_channel + "'");
    }
  }
  if (simulation) {
    if (simulation->spectrum) simulation->spectrum->build();
    try {
      simulation_config().validate_sampling();
    } catch (const InputError& e) {
      throw ConfigError(std::string("simulation: ") + e.what());
    }
  }
}

SimulationConfig Scenario::simulation_config() const {
  if (!simulation) throw ConfigError("simulation: section missing");
  const SpectrumSpec& spec = simulation->spectrum ? *simulation->spectrum : background;
  return SimulationConfig{simulation->seed,
                          simulation->realizations,
                          units::seconds(simulation->dt_s),
                          units::seconds(simulation->duration_s),
                          spec.build(),
                          simulation->workers};
}

Scenario parse_scenario(const json& j, const std::filesystem::path& base_dir) {
  Reader root(j, "");
  Scenario s;
  s.name = root.string("name");
  s.background = read_spectrum(root.object("background"), base_dir);

  if (root.has("instrument")) {
    Reader r = root.object("instrument");
    InstrumentSpec in;
    in.atom_mass_kg = r.number("atom_mass_kg");
    in.atom_velocity_m_per_s = r.number("atom_velocity_m_per_s");
    in.arm_time_s = r.number("arm_time_s");
    in.sin_aperture = r.number("sin_aperture");
    in.laser_frequency_hz = r.number("laser_frequency_hz");
    in.photon_path_m = r.number("photon_path_m");
    r.finish();
    s.instrument = in;
  }

  if (root.has("orbit")) {
    Reader r = root.object("orbit");
    OrbitSpec o;
    o.mass_a_kg = r.number("mass_a_kg");
    o.mass_b_kg = r.number("mass_b_kg");
    o.radius_m = r.number("radius_m");
    if (r.has("separations_m")) o.separations_m = r.numbers("separations_m");
    if (r.has("exposure_time_s")) o.exposure_time_s = r.number("exposure_time_s");
    if (r.has("reference_channel")) o.reference_channel = r.string("reference_channel");
    if (r.has("channels")) {
      const json& chans = r.raw("channels");
      if (!chans.is_array()) throw ConfigError(r.where("channels") + ": expected an array");
      for (std::size_t i = 0; i < chans.size(); ++i) {
        Reader c(chans[i], r.where("channels") + "[" + std::to_string(i) + "]");
        o.channels.push_back({c.string("name"), c.number("damping_per_s"), c.number("temperature_k")});
        c.finish();
      }
    }
    r.finish();
    s.orbit = o;
  }

  if (root.has("simulation")) {
    Reader r = root.object("simulation");
    SimulationSpec sim;
    sim.seed = r.unsigned_integer("seed");
    sim.realizations = r.unsigned_integer("realizations");
    sim.dt_s = r.number("dt_s");
    sim.duration_s = r.number("duration_s");
    if (r.has("spectrum")) sim.spectrum = read_spectrum(r.object("spectrum"), base_dir);
    if (r.has("workers")) sim.workers = static_cast<unsigned>(r.unsigned_integer("workers"));
    if (r.has("dump_phases")) sim.dump_phases = r.boolean("dump_phases");
    r.finish();
    s.simulation = sim;
  }

  if (root.has("planck")) {
    Reader r = root.object("planck");
    PlanckSpec p;
    p.mass_grid_kg = read_grid(r, "mass_grid_kg");
    p.velocity_grid_m_per_s = read_grid(r, "velocity_grid_m_per_s");
    p.sin_aperture = r.opt_number("sin_aperture");
    p.exposure_s = r.opt_number("exposure_s");
    p.reference_frequency_hz = r.opt_number("reference_frequency_hz");
    r.finish();
    s.planck = p;
  }

  if (root.has("outputs")) {
    const json& outs = root.raw("outputs");
    if (!outs.is_array()) throw ConfigError("outputs: expected an array of strings");
    for (const auto& o : outs) {
      if (!o.is_string()) throw ConfigError("outputs: expected an array of strings");
      s.outputs.push_back(o.get<std::string>());
    }
  }
  root.finish();
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_scenario(j, path.parent_path());
}

json to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["background"] = spectrum_json(s.background);
  if (s.instrument) {
    const auto& in = *s.instrument;
    j["instrument"] = {{"atom_mass_kg", in.atom_mass_kg},
                       {"atom_velocity_m_per_s", in.atom_velocity_m_per_s},
                       {"arm_time_s", in.arm_time_s},
                       {"sin_aperture", in.sin_aperture},
                       {"laser_frequency_hz", in.laser_frequency_hz},
                       {"photon_path_m", in.photon_path_m}};
  }
  if (s.orbit) {
    const auto& o = *s.orbit;
    json chans = json::array();
    for (const auto& c : o.channels) {
      chans.push_back({{"name", c.name}, {"damping_per_s", c.damping_per_s}, {"temperature_k", c.temperature_k}});
    }
    j["orbit"] = {{"mass_a_kg", o.mass_a_kg},         {"mass_b_kg", o.mass_b_kg},
                  {"radius_m", o.radius_m},           {"separations_m", o.separations_m},
                  {"exposure_time_s", o.exposure_time_s}, {"channels", chans},
                  {"reference_channel", o.reference_channel}};
  }
  if (s.simulation) {
    const auto& sim = *s.simulation;
    j["simulation"] = {{"seed", sim.seed},       {"realizations", sim.realizations}, {"dt_s", sim.dt_s},
                       {"duration_s", sim.duration_s}, {"workers", sim.workers},     {"dump_phases", sim.dump_phases}};
    if (sim.spectrum) j["simulation"]["spectrum"] = spectrum_json(*sim.spectrum);
  }
  if (s.planck) {
    const auto& p = *s.planck;
    json pj{{"mass_grid_kg", grid_json(p.mass_grid_kg)}, {"velocity_grid_m_per_s", grid_json(p.velocity_grid_m_per_s)}};
    if (p.sin_aperture) pj["sin_aperture"] = *p.sin_aperture;
    if (p.exposure_s) pj["exposure_s"] = *p.exposure_s;
    if (p.reference_frequency_hz) pj["reference_frequency_hz"] = *p.reference_frequency_hz;
    j["planck"] = pj;
  }
  j["outputs"] = s.outputs;
  return j;
}

}  // namespace gwdecoh
