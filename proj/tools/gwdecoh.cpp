// gwdecoh: scenario-driven decoherence calculator.
//
//   gwdecoh <subcommand> --config scenario.json [--seed N] [--out DIR] [--format json|csv]
//   gwdecoh --config scenario.json --dump-config

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "gwdecoh/commands.hpp"
#include "gwdecoh/error.hpp"
#include "gwdecoh/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Gravitational-wave background decoherence calculator"};
  app.require_subcommand(0, 1);

  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::string format = "json";
  unsigned workers = 0;
  bool dump_config = false;

  app.add_option("--config", config, "scenario file")->required()->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "override the Monte Carlo seed");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--format", format, "record format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--workers", workers, "Monte Carlo worker threads (0 = hardware concurrency)");
  app.add_flag("--dump-config", dump_config, "print the normalized scenario and exit");

  const std::pair<const char*, const char*> subcommands[] = {
      {"background", "strain PSD and its temperature, graviton number and Theta equivalents"},
      {"atom", "atomic dephasing variance, filter response and arm-time curve"},
      {"photon", "photonic dephasing and equivalent displacement noise"},
      {"montecarlo", "synthesized-strain ensemble against the analytic variance"},
      {"planetary", "orbital damping, momentum diffusion and decoherence times"},
      {"planck", "Planck-scale scaling variance and transition scan"},
      {"report", "every product listed in outputs, in one record"},
  };
  for (const auto& [name, help] : subcommands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    gwdecoh::Scenario scenario = gwdecoh::load_scenario(config);
    if (seed) {
      if (!scenario.simulation) throw gwdecoh::ConfigError("--seed: scenario has no simulation section");
      scenario.simulation->seed = *seed;
    }
    if (dump_config) {
      std::cout << gwdecoh::to_json(scenario).dump(2) << '\n';
      return 0;
    }
    if (app.get_subcommands().empty()) {
      std::cerr << "gwdecoh: a subcommand is required (or --dump-config)\n";
      return 2;
    }
    const std::string sub = app.get_subcommands().front()->get_name();
    const auto product = gwdecoh::run_product(scenario, sub, workers);
    const auto files =
        gwdecoh::write_product(out_dir, scenario.name, sub, gwdecoh::format_from_string(format), product);
    for (const auto& f : files) std::cout << f.string() << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "gwdecoh: error: " << e.what() << '\n';
    return 1;
  }
}
