#pragma once

#include <string>
#include <vector>

#include "gkpsim/css_code.hpp"
#include "gkpsim/gkp_channel.hpp"
#include "gkpsim/schedule.hpp"

namespace gkpsim {

enum class CheckBasis : std::uint8_t { X, Z };

inline const char* basis_name(CheckBasis b) {
  return b == CheckBasis::X ? "X" : "Z";
}

/// One CNOT between an ancilla (one per check) and a data qubit. The gate
/// direction follows the stabilizer type: data -> ancilla for Z checks,
/// ancilla -> data for X checks.
struct CircuitGate {
  int ancilla = 0;
  int data = 0;
};

/// Leveled syndrome-measurement circuit for one check matrix. Every ancilla
/// is prepared once before the first level (|0> for Z checks, |+> for X
/// checks) and measured once after the last level in the matching basis.
struct MeasurementCircuit {
  CheckBasis basis = CheckBasis::Z;
  int data_count = 0;
  int ancilla_count = 0;
  std::vector<std::vector<CircuitGate>> levels;

  int depth() const { return static_cast<int>(levels.size()); }
};

MeasurementCircuit build_circuit(const CssCode& code, const Schedule& schedule,
                                 CheckBasis basis);

/// One potential X fault. Slots count inter-level gaps: slot 0 precedes the
/// first gate level, slot L follows level L, and slot depth+1 is the
/// dedicated pre-measurement slot on ancillas. A qubit touched by a CNOT in
/// level L carries the matching control/target fault at slot L, otherwise the
/// slot is an idle; ancillas get Prepare at slot 0 and Measure at depth+1.
struct FaultLocation {
  FaultKind kind = FaultKind::Idle;
  CheckBasis basis = CheckBasis::Z;
  int round = 0;         // measurement round of this basis
  int slot = 0;
  bool on_ancilla = false;
  int qubit = 0;         // data index, or ancilla (check row) index

  bool operator==(const FaultLocation&) const = default;
};

/// Deterministic enumeration for a single measurement round (round = 0): by
/// slot, then data qubits in index order, then ancillas in index order.
/// Counts obey: prepares = measures = ancilla_count, controls = targets =
/// ones(H), total = (data + ancillas) * (depth + 1) + ancillas.
std::vector<FaultLocation> enumerate_fault_locations(
    const MeasurementCircuit& circuit);

/// Human-readable layout of levels and fault slots, for golden tests.
std::string dump_circuit(const MeasurementCircuit& circuit);

}  // namespace gkpsim
