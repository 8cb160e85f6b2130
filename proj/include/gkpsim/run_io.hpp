#pragma once

#include <functional>
#include <string>

#include "gkpsim/bundle.hpp"
#include "gkpsim/experiment.hpp"

namespace gkpsim {

/// Full description of one experiment run. Paths inside the config file are
/// resolved relative to the file; output paths are taken as given.
struct RunConfig {
  std::string code_bundle;
  std::string schedule;  // bundled variant, "greedy", "serial"; "" = default
  int rounds = 3;
  std::vector<double> squeezing_db;
  std::vector<LlrMode> modes = {LlrMode::Uniform, LlrMode::Prior,
                                LlrMode::RealTime};
  DecoderConfig decoder;
  long long failure_target = 1000;
  long long trial_cap = 10'000'000;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string out_csv = "results.csv";
  std::string out_manifest = "run_manifest.json";
};

RunConfig parse_run_config(const std::string& path);

/// Rejects degenerate configurations (empty grid, failure target < 1, ...).
void validate_run_config(const RunConfig& config);

/// Loads the bundle, builds the circuit-level matrix, runs the experiment,
/// and writes the results CSV plus the JSON run manifest. CSV rows are
/// flushed as each grid point completes. The CSV bytes are a pure function
/// of (config contents, bundle files): reruns and different worker counts
/// produce identical files.
std::vector<PointResult> execute_run(const RunConfig& config);

/// CSV row formatting shared by execute_run; exposed for tests.
std::string results_csv_header();
std::string format_result_row(const std::string& code_name,
                              const PointResult& point, std::uint64_t seed);

}  // namespace gkpsim
