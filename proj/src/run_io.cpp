#include "gkpsim/run_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace gkpsim {

namespace fs = std::filesystem;
using nlohmann::json;

RunConfig parse_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }

  RunConfig config;
  try {
    const fs::path dir = fs::path(path).parent_path();
    config.code_bundle = (dir / doc.at("code").get<std::string>()).string();
    config.schedule = doc.value("schedule", "");
    config.rounds = doc.value("rounds", 3);
    config.squeezing_db = doc.at("squeezing_db").get<std::vector<double>>();
    if (doc.contains("modes")) {
      config.modes.clear();
      for (const auto& m : doc.at("modes"))
        config.modes.push_back(llr_mode_from_name(m.get<std::string>()));
    }
    if (doc.contains("decoder")) {
      const auto& d = doc.at("decoder");
      const std::string rule = d.value("rule", "tanh");
      if (rule == "tanh")
        config.decoder.rule = CheckRule::TanhProduct;
      else if (rule == "minsum")
        config.decoder.rule = CheckRule::MinSum;
      else
        throw std::runtime_error("unknown decoder rule: " + rule);
      config.decoder.max_iters = d.value("max_iters", 32);
      config.decoder.osd_order = d.value("osd_order", 0);
    }
    config.failure_target = doc.value("failure_target", 1000LL);
    config.trial_cap = doc.value("trial_cap", 10'000'000LL);
    config.seed = doc.value("seed", 1ULL);
    config.workers = doc.value("workers", 1);
    config.out_csv = doc.value("out_csv", "results.csv");
    config.out_manifest = doc.value("out_manifest", "run_manifest.json");
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return config;
}

void validate_run_config(const RunConfig& config) {
  if (config.code_bundle.empty())
    throw std::invalid_argument("config: missing code bundle path");
  if (config.rounds < 1)
    throw std::invalid_argument("config: rounds must be >= 1");
  if (config.squeezing_db.empty())
    throw std::invalid_argument("config: squeezing grid is empty");
  if (config.modes.empty())
    throw std::invalid_argument("config: no decoding modes requested");
  if (config.failure_target < 1)
    throw std::invalid_argument("config: failure target must be >= 1");
  if (config.trial_cap < 1)
    throw std::invalid_argument("config: trial cap must be >= 1");
  if (config.workers < 1)
    throw std::invalid_argument("config: workers must be >= 1");
  if (config.decoder.max_iters < 1)
    throw std::invalid_argument("config: max_iters must be >= 1");
  if (config.decoder.osd_order < 0)
    throw std::invalid_argument("config: osd_order must be >= 0");
}

std::string results_csv_header() {
  return "code,mode,squeezing_db,trials,failures,fer,fer_lo,fer_hi,seed\n";
}

std::string format_result_row(const std::string& code_name,
                              const PointResult& point, std::uint64_t seed) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%s,%s,%.10g,%lld,%lld,%.10g,%.10g,%.10g,%llu\n",
                code_name.c_str(), llr_mode_name(point.mode),
                point.squeezing_db, point.fer.trials, point.fer.failures,
                point.fer.fer, point.fer.lo, point.fer.hi,
                static_cast<unsigned long long>(seed));
  return buf;
}

std::vector<PointResult> execute_run(const RunConfig& config) {
  validate_run_config(config);

  const CodeBundle bundle = load_bundle(config.code_bundle);
  const ScheduleVariant schedule = resolve_schedule(bundle, config.schedule);
  const CircuitCheckMatrix ccm = build_circuit_check_matrix(
      bundle.code, schedule.x ? &*schedule.x : nullptr, schedule.z,
      config.rounds);

  std::ofstream csv(config.out_csv);
  if (!csv) throw std::runtime_error("cannot write CSV: " + config.out_csv);
  csv << results_csv_header();
  csv.flush();

  ExperimentConfig exp;
  exp.squeezing_db = config.squeezing_db;
  exp.modes = config.modes;
  exp.decoder = config.decoder;
  exp.failure_target = config.failure_target;
  exp.trial_cap = config.trial_cap;
  exp.seed = config.seed;
  exp.workers = config.workers;

  std::vector<PointResult> results =
      run_experiment(ccm, exp, [&](const PointResult& point) {
        csv << format_result_row(bundle.name, point, config.seed);
        csv.flush();
      });
  if (!csv) throw std::runtime_error("write failed: " + config.out_csv);

  json manifest;
  manifest["code"] = bundle.name;
  manifest["code_bundle"] = config.code_bundle;
  manifest["schedule"] = config.schedule.empty() ? bundle.default_schedule
                                                 : config.schedule;
  manifest["rounds"] = config.rounds;
  manifest["squeezing_db"] = config.squeezing_db;
  {
    std::vector<std::string> names;
    for (LlrMode mode : config.modes) names.push_back(llr_mode_name(mode));
    manifest["modes"] = names;
  }
  manifest["decoder"] = {
      {"rule",
       config.decoder.rule == CheckRule::TanhProduct ? "tanh" : "minsum"},
      {"max_iters", config.decoder.max_iters},
      {"osd_order", config.decoder.osd_order}};
  manifest["failure_target"] = config.failure_target;
  manifest["trial_cap"] = config.trial_cap;
  manifest["seed"] = config.seed;
  manifest["matrix"] = {{"rows", ccm.matrix.rows()},
                        {"cols", ccm.matrix.cols()},
                        {"pre_dedup_cols", ccm.pre_dedup_columns}};
  json hashes = json::object();
  for (const auto& [file, hash] : bundle.file_hashes) {
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(hash));
    hashes[file] = hex;
  }
  manifest["input_hashes"] = hashes;

  std::ofstream mf(config.out_manifest);
  if (!mf)
    throw std::runtime_error("cannot write manifest: " + config.out_manifest);
  mf << manifest.dump(2) << '\n';
  if (!mf) throw std::runtime_error("write failed: " + config.out_manifest);

  return results;
}

}  // namespace gkpsim
