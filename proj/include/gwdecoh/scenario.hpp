#pragma once

// Scenario files: a JSON object describing a background spectrum plus an
// instrument and/or an orbit. Frequencies are given in Hz and converted to
// angular frequency when the library objects are built.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gwdecoh/background.hpp"
#include "gwdecoh/interferometer.hpp"
#include "gwdecoh/montecarlo.hpp"
#include "gwdecoh/planetary.hpp"

namespace gwdecoh {

struct SpectrumSpec {
  std::string model = "white";  // white | power_law | tabulated
  double level_per_hz = 0.0;
  double amplitude_per_hz = 0.0;
  double exponent = 0.0;
  double pivot_hz = 1.0;
  std::array<double, 2> band_hz{0.0, 0.0};
  /// (f [Hz], S_h [Hz^-1]); files are read at parse time.
  std::vector<std::pair<double, double>> points_hz;
  Interpolation interpolation = Interpolation::LogLog;

  StrainSpectrum build() const;

  bool operator==(const SpectrumSpec&) const = default;
};

struct InstrumentSpec {
  double atom_mass_kg = 0.0;
  double atom_velocity_m_per_s = 0.0;
  double arm_time_s = 0.0;
  double sin_aperture = 0.0;
  double laser_frequency_hz = 0.0;
  double photon_path_m = 0.0;

  InstrumentConfig build() const;

  bool operator==(const InstrumentSpec&) const = default;
};

struct ChannelSpec {
  std::string name;
  double damping_per_s = 0.0;
  double temperature_k = 0.0;

  bool operator==(const ChannelSpec&) const = default;
};

struct OrbitSpec {
  double mass_a_kg = 0.0;
  double mass_b_kg = 0.0;
  double radius_m = 0.0;
  std::vector<double> separations_m;
  double exposure_time_s = 1.0;
  /// Non-gravitational damping channels compared with the gravitational one.
  std::vector<ChannelSpec> channels;
  /// Channel the ratios are taken against ("" = gravitational).
  std::string reference_channel;

  OrbitConfig build() const;

  bool operator==(const OrbitSpec&) const = default;
};

struct SimulationSpec {
  std::uint64_t seed = 0;
  std::size_t realizations = 2;
  double dt_s = 0.0;
  double duration_s = 0.0;
  /// Defaults to the scenario background when absent.
  std::optional<SpectrumSpec> spectrum;
  unsigned workers = 0;
  bool dump_phases = false;

  bool operator==(const SimulationSpec&) const = default;
};

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
  bool log = true;
  /// Explicit values override min/max/count when non-empty.
  std::vector<double> values;

  std::vector<double> expand() const;

  bool operator==(const GridSpec&) const = default;
};

struct PlanckSpec {
  GridSpec mass_grid_kg;
  GridSpec velocity_grid_m_per_s;
  std::optional<double> sin_aperture;
  std::optional<double> exposure_s;
  /// Frequency at which S_h is converted to Theta_gr; defaults to the
  /// geometric centre of the background band.
  std::optional<double> reference_frequency_hz;

  bool operator==(const PlanckSpec&) const = default;
};

struct Scenario {
  std::string name;
  SpectrumSpec background;
  std::optional<InstrumentSpec> instrument;
  std::optional<OrbitSpec> orbit;
  std::optional<SimulationSpec> simulation;
  std::optional<PlanckSpec> planck;
  std::vector<std::string> outputs;

  /// Throws ConfigError unless at least one of instrument/orbit is present
  /// and every requested output is computable.
  void validate() const;
  SimulationConfig simulation_config() const;

  bool operator==(const Scenario&) const = default;
};

/// Subcommands that produce outputs, in report order.
const std::vector<std::string>& known_products();
/// Whether `product` can be computed from the sections present.
bool computable(const Scenario& s, const std::string& product);

/// Parses a scenario; relative spectrum file paths resolve against `base_dir`.
Scenario parse_scenario(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

/// Normalized JSON form; parse_scenario(to_json(s)) reproduces s.
nlohmann::json to_json(const Scenario& s);

}  // namespace gwdecoh
