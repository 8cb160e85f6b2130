#include "gkpsim/bundle.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace gkpsim {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t fnv1a_file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file for hashing: " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
    if (!in) break;
  }
  return h;
}

CodeBundle load_bundle(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in)
    throw std::runtime_error("cannot open bundle manifest: " + manifest_path);
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::exception& e) {
    throw std::runtime_error(manifest_path + ": " + e.what());
  }

  const fs::path dir = fs::path(manifest_path).parent_path();
  CodeBundle bundle;

  auto resolve = [&](const std::string& rel) {
    const std::string full = (dir / rel).string();
    bundle.file_hashes.emplace_back(rel, fnv1a_file_hash(full));
    return full;
  };

  try {
    bundle.name = doc.at("name").get<std::string>();
    BinaryMatrix h_x = load_matrix(resolve(doc.at("h_x").get<std::string>()));
    BinaryMatrix h_z = load_matrix(resolve(doc.at("h_z").get<std::string>()));
    const int declared_n = doc.at("n").get<int>();
    const int declared_k = doc.at("k").get<int>();
    const int declared_d = doc.value("d", 0);

    bundle.code = validate_css(std::move(h_x), std::move(h_z), declared_d);
    if (bundle.code.n != declared_n)
      throw std::runtime_error("bundle declares n=" +
                               std::to_string(declared_n) + " but matrices give " +
                               std::to_string(bundle.code.n));
    if (bundle.code.k != declared_k)
      throw std::runtime_error("bundle declares k=" +
                               std::to_string(declared_k) + " but GF(2) ranks give " +
                               std::to_string(bundle.code.k));

    if (doc.contains("schedules")) {
      for (const auto& [variant, files] : doc.at("schedules").items()) {
        ScheduleVariant sv;
        if (files.contains("x") && !files.at("x").is_null()) {
          sv.x = load_schedule(resolve(files.at("x").get<std::string>()));
          sv.x->validate(bundle.code.h_x);
        } else if (bundle.code.h_x.ones() != 0) {
          throw std::runtime_error("schedule variant '" + variant +
                                   "' is missing the X schedule");
        }
        sv.z = load_schedule(resolve(files.at("z").get<std::string>()));
        sv.z.validate(bundle.code.h_z);
        bundle.schedules.emplace(variant, std::move(sv));
      }
    }
    bundle.default_schedule = doc.value("default_schedule", "");
    if (!bundle.default_schedule.empty() &&
        !bundle.schedules.count(bundle.default_schedule))
      throw std::runtime_error("default_schedule '" + bundle.default_schedule +
                               "' is not a bundled variant");
  } catch (const json::exception& e) {
    throw std::runtime_error(manifest_path + ": " + e.what());
  }
  return bundle;
}

ScheduleVariant resolve_schedule(const CodeBundle& bundle,
                                 const std::string& selection) {
  std::string choice = selection;
  if (choice.empty()) choice = bundle.default_schedule;
  if (choice.empty())
    throw std::runtime_error("bundle '" + bundle.name +
                             "' has no default schedule; pass one explicitly");

  if (auto it = bundle.schedules.find(choice); it != bundle.schedules.end())
    return it->second;

  const bool has_x = bundle.code.h_x.ones() != 0;
  ScheduleVariant sv;
  if (choice == "greedy") {
    if (has_x) sv.x = greedy_schedule(bundle.code.h_x);
    sv.z = greedy_schedule(bundle.code.h_z);
    return sv;
  }
  if (choice == "serial") {
    if (has_x) sv.x = serialized_schedule(bundle.code.h_x);
    sv.z = serialized_schedule(bundle.code.h_z);
    return sv;
  }
  throw std::runtime_error("unknown schedule selection '" + choice +
                           "' (bundled variants, 'greedy', or 'serial')");
}

}  // namespace gkpsim
