#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gkpsim/binary_matrix.hpp"

namespace gkpsim {

/// CNOT measurement schedule for one check matrix: an ordered list of gate
/// levels, each touching every check and every qubit at most once, covering
/// the support of the matrix exactly once overall.
struct Schedule {
  std::vector<std::vector<std::pair<int, int>>> levels;  // (check, qubit)

  int depth() const { return static_cast<int>(levels.size()); }

  /// Throws std::invalid_argument when coverage or disjointness fails.
  void validate(const BinaryMatrix& h) const;
};

/// Greedy edge coloring of the Tanner graph, edges in row-major order.
/// Depth is at least the maximum row/column weight of h.
Schedule greedy_schedule(const BinaryMatrix& h);

/// One gate per level, row-major order (the fully serialized circuit).
Schedule serialized_schedule(const BinaryMatrix& h);

/// Proper bipartite edge coloring with exactly max-degree many levels
/// (Koenig). Used to generate the bundled optimal-depth schedules.
Schedule edge_coloring_schedule(const BinaryMatrix& h);

/// Refines each level into `ways` round-robin sub-levels (depth * ways
/// levels); sub-level gate sets stay disjoint. Used for deliberately deep
/// schedule variants.
Schedule split_schedule(const Schedule& s, int ways);

/// One line per level, whitespace-separated "check:qubit" pairs.
Schedule load_schedule(const std::string& path);
void save_schedule(const std::string& path, const Schedule& s);

}  // namespace gkpsim
