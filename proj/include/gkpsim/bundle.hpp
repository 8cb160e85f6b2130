#pragma once

#include <map>
#include <optional>
#include <string>

#include "gkpsim/css_code.hpp"
#include "gkpsim/schedule.hpp"

namespace gkpsim {

/// Named pair of per-basis schedules; x is absent for codes without X checks.
struct ScheduleVariant {
  std::optional<Schedule> x;
  Schedule z;
};

/// A code bundle is a JSON manifest naming the check-matrix files, the
/// declared [[n, k, d]], and any number of schedule variants. All paths are
/// relative to the manifest's directory.
struct CodeBundle {
  std::string name;
  CssCode code;
  std::map<std::string, ScheduleVariant> schedules;
  std::string default_schedule;  // empty when no variants are bundled

  /// (relative path, FNV-1a 64 content hash) of every file the bundle read.
  std::vector<std::pair<std::string, std::uint64_t>> file_hashes;
};

/// Loads and fully validates a bundle: CSS commutation, declared n and k
/// against the computed values, and every schedule against its matrix.
CodeBundle load_bundle(const std::string& manifest_path);

/// Resolves a schedule selection for a bundle: a bundled variant name, or
/// the generated options "greedy" and "serial".
ScheduleVariant resolve_schedule(const CodeBundle& bundle,
                                 const std::string& selection);

std::uint64_t fnv1a_file_hash(const std::string& path);

}  // namespace gkpsim
