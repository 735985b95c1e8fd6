#pragma once

// Scenario products behind the CLI subcommands. Each product is a flat
// record plus optional numeric tables (curves, scans, per-channel rows).

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "gwdecoh/report.hpp"
#include "gwdecoh/scenario.hpp"

namespace gwdecoh {

struct ProductOutput {
  Record record;
  /// (suffix, table); written as <scenario>.<subcommand>.<suffix>.csv.
  std::vector<std::pair<std::string, Table>> tables;
};

ProductOutput run_background(const Scenario& s);
ProductOutput run_atom(const Scenario& s);
ProductOutput run_photon(const Scenario& s);
/// Worker count is an execution detail and never appears in the output.
ProductOutput run_montecarlo(const Scenario& s, unsigned workers_override = 0);
ProductOutput run_planetary(const Scenario& s);
ProductOutput run_planck(const Scenario& s);
/// The requested outputs (all computable products when none are listed),
/// merged with keys prefixed by the product name.
ProductOutput run_report(const Scenario& s, unsigned workers_override = 0);

/// Dispatch by subcommand name; ConfigError for unknown or non-computable
/// products.
ProductOutput run_product(const Scenario& s, const std::string& subcommand, unsigned workers_override = 0);

/// Writes the record, its schema sidecar and every table (with sidecars) to
/// `dir`. Returns the paths written, main file first.
std::vector<std::filesystem::path> write_product(const std::filesystem::path& dir, const std::string& scenario,
                                                 const std::string& subcommand, Format format,
                                                 const ProductOutput& out);

}  // namespace gwdecoh
