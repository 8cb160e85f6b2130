#include "gkpsim/measurement_circuit.hpp"

#include <sstream>
#include <stdexcept>

namespace gkpsim {

MeasurementCircuit build_circuit(const CssCode& code, const Schedule& schedule,
                                 CheckBasis basis) {
  const BinaryMatrix& h = basis == CheckBasis::Z ? code.h_z : code.h_x;
  if (h.rows() == 0 || h.ones() == 0)
    throw std::invalid_argument(std::string("build_circuit: code has no ") +
                                basis_name(basis) + " checks");
  schedule.validate(h);

  MeasurementCircuit circuit;
  circuit.basis = basis;
  circuit.data_count = code.n;
  circuit.ancilla_count = h.rows();
  circuit.levels.reserve(schedule.levels.size());
  for (const auto& level : schedule.levels) {
    std::vector<CircuitGate> gates;
    gates.reserve(level.size());
    for (const auto& [check, qubit] : level)
      gates.push_back(CircuitGate{check, qubit});
    circuit.levels.push_back(std::move(gates));
  }
  return circuit;
}

std::vector<FaultLocation> enumerate_fault_locations(
    const MeasurementCircuit& circuit) {
  std::vector<FaultLocation> out;
  const int depth = circuit.depth();
  if (circuit.ancilla_count == 0) return out;

  // kind of the slot-L fault on each qubit, L >= 1: set by the level-L gates.
  auto gate_kind_at = [&](int level, bool ancilla, int qubit,
                          FaultKind& kind) {
    for (const CircuitGate& g : circuit.levels[level - 1]) {
      if (ancilla && g.ancilla == qubit) {
        kind = circuit.basis == CheckBasis::Z ? FaultKind::CnotTarget
                                              : FaultKind::CnotControl;
        return true;
      }
      if (!ancilla && g.data == qubit) {
        kind = circuit.basis == CheckBasis::Z ? FaultKind::CnotControl
                                              : FaultKind::CnotTarget;
        return true;
      }
    }
    return false;
  };

  for (int slot = 0; slot <= depth; ++slot) {
    for (int d = 0; d < circuit.data_count; ++d) {
      FaultLocation loc;
      loc.basis = circuit.basis;
      loc.slot = slot;
      loc.qubit = d;
      loc.kind = FaultKind::Idle;
      if (slot > 0) gate_kind_at(slot, false, d, loc.kind);
      out.push_back(loc);
    }
    for (int a = 0; a < circuit.ancilla_count; ++a) {
      FaultLocation loc;
      loc.basis = circuit.basis;
      loc.slot = slot;
      loc.on_ancilla = true;
      loc.qubit = a;
      loc.kind = slot == 0 ? FaultKind::Prepare : FaultKind::Idle;
      if (slot > 0) gate_kind_at(slot, true, a, loc.kind);
      out.push_back(loc);
    }
  }
  for (int a = 0; a < circuit.ancilla_count; ++a) {
    FaultLocation loc;
    loc.basis = circuit.basis;
    loc.slot = depth + 1;
    loc.on_ancilla = true;
    loc.qubit = a;
    loc.kind = FaultKind::Measure;
    out.push_back(loc);
  }
  return out;
}

std::string dump_circuit(const MeasurementCircuit& circuit) {
  std::ostringstream os;
  os << basis_name(circuit.basis) << "-check circuit: "
     << circuit.data_count << " data, " << circuit.ancilla_count
     << " ancilla, depth " << circuit.depth() << "\n";
  const auto locations = enumerate_fault_locations(circuit);
  std::size_t cursor = 0;
  auto dump_slot = [&](int slot) {
    os << "slot " << slot << ":";
    while (cursor < locations.size() && locations[cursor].slot == slot) {
      const auto& loc = locations[cursor];
      os << ' ' << (loc.on_ancilla ? 'A' : 'D') << loc.qubit << '='
         << fault_kind_name(loc.kind);
      ++cursor;
    }
    os << '\n';
  };
  dump_slot(0);
  for (int level = 1; level <= circuit.depth(); ++level) {
    os << "level " << level << ":";
    for (const CircuitGate& g : circuit.levels[level - 1]) {
      if (circuit.basis == CheckBasis::Z)
        os << " D" << g.data << ">A" << g.ancilla;
      else
        os << " A" << g.ancilla << ">D" << g.data;
    }
    os << '\n';
    dump_slot(level);
  }
  dump_slot(circuit.depth() + 1);
  return os.str();
}

}  // namespace gkpsim
