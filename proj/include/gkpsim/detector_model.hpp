#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "gkpsim/fault_propagation.hpp"

namespace gkpsim {

/// Circuit-level parity-check matrix for the X-error memory experiment.
///
/// Rows are the rounds * m Z-check detectors. Every fault location of every
/// round of both basis circuits is propagated once; locations with identical
/// (syndrome, data_error) effects share a column. Column order follows first
/// occurrence in enumeration order (X rounds before Z rounds, then round,
/// slot, data-before-ancilla, qubit index), so the construction is a pure
/// function of (code, schedules, rounds).
struct CircuitCheckMatrix {
  BinaryMatrix matrix;
  CircuitModel model;

  std::vector<FaultLocation> locations;        // global enumeration order
  std::vector<int> location_column;            // location -> column
  std::vector<std::vector<int>> column_groups; // column -> locations
  std::vector<BitVec> column_syndrome;
  std::vector<BitVec> column_data_effect;

  /// (control leg, target leg) location indices of every CNOT instance.
  std::vector<std::pair<int, int>> cnot_pairs;
  /// location -> index into cnot_pairs, or -1 for single-leg mechanisms.
  std::vector<int> location_pair;

  int checks_per_round = 0;
  int rounds = 0;
  int data_count = 0;
  std::size_t pre_dedup_columns = 0;  // rounds * (r_X + r_Z)
  std::array<std::size_t, 5> mechanism_counts{};  // indexed by FaultKind

  int columns() const { return matrix.cols(); }
  int detector_bits() const { return rounds * checks_per_round; }
};

CircuitCheckMatrix build_circuit_check_matrix(const CssCode& code,
                                              const Schedule* schedule_x,
                                              const Schedule& schedule_z,
                                              int rounds = 3);

/// Probability that an odd number of independent faults occur:
///   1/2 - 1/2 * prod_i (1 - 2 p_i).
double merge_probabilities(const std::vector<double>& probabilities);

/// L = ln((1 - p) / p), with p clamped to [1e-12, 1 - 1e-12] first.
double probability_to_llr(double p);

enum class LlrMode : std::uint8_t { Uniform, Prior, RealTime };

const char* llr_mode_name(LlrMode mode);
LlrMode llr_mode_from_name(const std::string& name);

/// Per-location fault probabilities, before column merging.
///   Prior: lattice-tail probability of each mechanism's effective variance.
///   RealTime: posterior given the trial's measured residues; CNOT legs use
///   the joint two-leg posterior reduced to per-leg marginals.
/// residues is indexed like CircuitCheckMatrix::locations and is required in
/// RealTime mode only.
std::vector<double> location_probabilities(
    LlrMode mode, const CircuitCheckMatrix& ccm, const GkpParams& params,
    const std::vector<double>* residues = nullptr);

/// Per-column decoder input: group probabilities merged, then converted to
/// LLRs. Uniform mode fills every column with the LLR of the mean prior
/// location probability.
Eigen::VectorXd init_llrs(LlrMode mode, const CircuitCheckMatrix& ccm,
                          const GkpParams& params,
                          const std::vector<double>* residues = nullptr);

/// Writes the matrix in the interchange format plus a sidecar listing the
/// fault locations behind each column.
void save_check_matrix(const std::string& matrix_path,
                       const std::string& sidecar_path,
                       const CircuitCheckMatrix& ccm);

}  // namespace gkpsim
