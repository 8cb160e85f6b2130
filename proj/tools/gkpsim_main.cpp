#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include "gkpsim/bundle.hpp"
#include "gkpsim/detector_model.hpp"
#include "gkpsim/run_io.hpp"

namespace fs = std::filesystem;
using namespace gkpsim;

namespace {

int cmd_validate(const std::string& code_path) {
  const CodeBundle bundle = load_bundle(code_path);
  std::printf("bundle '%s': [[%d,%d,%d]] valid\n", bundle.name.c_str(),
              bundle.code.n, bundle.code.k, bundle.code.distance);
  std::printf("  h_x: %d x %d (%zu ones)\n", bundle.code.h_x.rows(),
              bundle.code.h_x.cols(), bundle.code.h_x.ones());
  std::printf("  h_z: %d x %d (%zu ones)\n", bundle.code.h_z.rows(),
              bundle.code.h_z.cols(), bundle.code.h_z.ones());
  for (const auto& [name, variant] : bundle.schedules) {
    if (variant.x)
      std::printf("  schedule '%s': depth %d (x), %d (z)\n", name.c_str(),
                  variant.x->depth(), variant.z.depth());
    else
      std::printf("  schedule '%s': depth %d (z)\n", name.c_str(),
                  variant.z.depth());
  }
  return 0;
}

int cmd_build(const std::string& code_path, const std::string& schedule,
              int rounds, const std::string& out_dir) {
  const CodeBundle bundle = load_bundle(code_path);
  const ScheduleVariant variant = resolve_schedule(bundle, schedule);
  const CircuitCheckMatrix ccm = build_circuit_check_matrix(
      bundle.code, variant.x ? &*variant.x : nullptr, variant.z, rounds);

  fs::create_directories(out_dir);
  const std::string matrix_path = (fs::path(out_dir) / "hcirc.txt").string();
  const std::string sidecar_path =
      (fs::path(out_dir) / "hcirc_columns.txt").string();
  save_check_matrix(matrix_path, sidecar_path, ccm);

  std::printf("H_circ for '%s': %d rows x %d columns (%zu before merging)\n",
              bundle.name.c_str(), ccm.matrix.rows(), ccm.matrix.cols(),
              ccm.pre_dedup_columns);
  static const FaultKind kKinds[] = {FaultKind::Idle, FaultKind::Prepare,
                                     FaultKind::Measure, FaultKind::CnotControl,
                                     FaultKind::CnotTarget};
  for (FaultKind kind : kKinds)
    std::printf("  %s locations: %zu\n", fault_kind_name(kind),
                ccm.mechanism_counts[static_cast<int>(kind)]);
  std::printf("wrote %s and %s\n", matrix_path.c_str(), sidecar_path.c_str());
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& seed_override,
            int workers_override, const std::string& out_override) {
  RunConfig config = parse_run_config(config_path);
  if (!seed_override.empty()) config.seed = std::stoull(seed_override);
  if (workers_override > 0) config.workers = workers_override;
  if (!out_override.empty()) config.out_csv = out_override;

  const auto results = execute_run(config);
  for (const PointResult& point : results)
    std::printf("%5.2f dB  %-8s  fer %.3e  [%.3e, %.3e]  (%lld/%lld)\n",
                point.squeezing_db, llr_mode_name(point.mode), point.fer.fer,
                point.fer.lo, point.fer.hi, point.fer.failures,
                point.fer.trials);
  std::printf("results: %s\nmanifest: %s\n", config.out_csv.c_str(),
              config.out_manifest.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concatenated QLDPC-GKP circuit-noise simulator and decoder"};
  app.require_subcommand(1);

  std::string code_path, schedule, out_dir = "build_out";
  int rounds = 3;
  auto* validate = app.add_subcommand("validate", "check a code bundle");
  validate->add_option("--code", code_path, "bundle manifest")->required();

  auto* build = app.add_subcommand(
      "build", "assemble and export the circuit-level check matrix");
  build->add_option("--code", code_path, "bundle manifest")->required();
  build->add_option("--schedule", schedule,
                    "bundled variant name, 'greedy', or 'serial'");
  build->add_option("--rounds", rounds, "measurement rounds")
      ->check(CLI::PositiveNumber);
  build->add_option("--out", out_dir, "output directory");

  std::string config_path, seed_override, out_override;
  int workers_override = 0;
  auto* run = app.add_subcommand("run", "run a memory experiment");
  run->add_option("--config", config_path, "run config (JSON)")->required();
  run->add_option("--seed", seed_override, "override the master seed");
  run->add_option("--workers", workers_override, "override the worker count");
  run->add_option("--out", out_override, "override the results CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(code_path);
    if (build->parsed()) return cmd_build(code_path, schedule, rounds, out_dir);
    if (run->parsed())
      return cmd_run(config_path, seed_override, workers_override,
                     out_override);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
