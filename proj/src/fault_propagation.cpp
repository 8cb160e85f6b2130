#include "gkpsim/fault_propagation.hpp"

#include <algorithm>
#include <stdexcept>

namespace gkpsim {

CircuitModel make_circuit_model(const CssCode& code, const Schedule* schedule_x,
                                const Schedule& schedule_z, int rounds) {
  if (rounds < 1)
    throw std::invalid_argument("make_circuit_model: rounds must be >= 1");
  CircuitModel model;
  model.code = code;
  model.rounds = rounds;
  model.z_circuit = build_circuit(code, schedule_z, CheckBasis::Z);
  if (code.h_x.rows() > 0 && code.h_x.ones() > 0) {
    if (!schedule_x)
      throw std::invalid_argument(
          "make_circuit_model: code has X checks but no X schedule");
    model.x_circuit = build_circuit(code, *schedule_x, CheckBasis::X);
  }
  return model;
}

namespace {

const MeasurementCircuit& circuit_for(const CircuitModel& model,
                                      CheckBasis basis) {
  return basis == CheckBasis::Z ? model.z_circuit : model.x_circuit;
}

}  // namespace

void validate_location(const FaultLocation& loc, const CircuitModel& model) {
  if (loc.basis == CheckBasis::X && !model.has_x())
    throw std::invalid_argument("fault location: code has no X circuit");
  const MeasurementCircuit& circ = circuit_for(model, loc.basis);
  if (loc.round < 0 || loc.round >= model.rounds)
    throw std::invalid_argument("fault location: round out of range");
  const int depth = circ.depth();
  if (loc.slot < 0 || loc.slot > depth + 1)
    throw std::invalid_argument("fault location: slot out of range");
  const int limit = loc.on_ancilla ? circ.ancilla_count : circ.data_count;
  if (loc.qubit < 0 || loc.qubit >= limit)
    throw std::invalid_argument("fault location: qubit out of range");

  const bool gate_slot = loc.slot >= 1 && loc.slot <= depth;
  bool in_gate = false;
  if (gate_slot) {
    for (const CircuitGate& g : circ.levels[loc.slot - 1]) {
      if ((loc.on_ancilla && g.ancilla == loc.qubit) ||
          (!loc.on_ancilla && g.data == loc.qubit)) {
        in_gate = true;
        break;
      }
    }
  }
  switch (loc.kind) {
    case FaultKind::Prepare:
      if (!loc.on_ancilla || loc.slot != 0)
        throw std::invalid_argument("fault location: misplaced Prepare");
      return;
    case FaultKind::Measure:
      if (!loc.on_ancilla || loc.slot != depth + 1)
        throw std::invalid_argument("fault location: misplaced Measure");
      return;
    case FaultKind::CnotControl:
    case FaultKind::CnotTarget: {
      if (!in_gate)
        throw std::invalid_argument(
            "fault location: no CNOT touches this qubit at this slot");
      const bool is_control =
          (loc.basis == CheckBasis::Z) ? !loc.on_ancilla : loc.on_ancilla;
      if (is_control != (loc.kind == FaultKind::CnotControl))
        throw std::invalid_argument("fault location: wrong CNOT leg");
      return;
    }
    case FaultKind::Idle:
      if (loc.slot == depth + 1)
        throw std::invalid_argument("fault location: idle in measure slot");
      if (loc.on_ancilla && loc.slot == 0)
        throw std::invalid_argument("fault location: ancilla slot 0 prepares");
      if (in_gate)
        throw std::invalid_argument("fault location: gate slot typed idle");
      return;
  }
  throw std::invalid_argument("fault location: unknown kind");
}

FaultEffect propagate_faults(const std::vector<FaultLocation>& faults,
                             const CircuitModel& model) {
  for (const FaultLocation& f : faults) validate_location(f, model);

  const int m = model.checks_per_round();
  const int rounds = model.rounds;
  BitVec frame_data(model.code.n);
  BitVec raw(rounds * m);

  // Bucket faults per circuit instance; instances without faults and without
  // live frames are skipped (X circuits never move a data-only frame).
  auto bucket_key = [&](CheckBasis basis, int round) {
    return (basis == CheckBasis::X ? 0 : rounds) + round;
  };
  std::vector<std::vector<const FaultLocation*>> buckets(2 * rounds);
  for (const FaultLocation& f : faults)
    buckets[bucket_key(f.basis, f.round)].push_back(&f);

  const int segments = model.has_x() ? 2 : 1;
  for (int seg = 0; seg < segments; ++seg) {
    const CheckBasis basis =
        (model.has_x() && seg == 0) ? CheckBasis::X : CheckBasis::Z;
    const MeasurementCircuit& circ = circuit_for(model, basis);
    BitVec frame_anc(circ.ancilla_count);
    for (int round = 0; round < rounds; ++round) {
      const auto& here = buckets[bucket_key(basis, round)];
      if (basis == CheckBasis::X && here.empty()) continue;
      if (basis == CheckBasis::Z && here.empty() && !frame_data.any())
        continue;
      frame_anc.clear();  // fresh ancilla preparation each round

      auto insert_at = [&](int slot) {
        for (const FaultLocation* f : here) {
          if (f->slot != slot) continue;
          if (f->on_ancilla) {
            // X on a fresh |+> ancilla is the identity.
            if (basis == CheckBasis::X && f->kind == FaultKind::Prepare)
              continue;
            frame_anc.flip(f->qubit);
          } else {
            frame_data.flip(f->qubit);
          }
        }
      };

      insert_at(0);
      for (int level = 1; level <= circ.depth(); ++level) {
        for (const CircuitGate& g : circ.levels[level - 1]) {
          if (basis == CheckBasis::Z) {
            if (frame_data.get(g.data)) frame_anc.flip(g.ancilla);
          } else {
            if (frame_anc.get(g.ancilla)) frame_data.flip(g.data);
          }
        }
        insert_at(level);
      }
      insert_at(circ.depth() + 1);

      if (basis == CheckBasis::Z) {
        // X frames flip Z-basis ancilla outcomes; X-basis outcomes are blind
        // to X frames, so X rounds record nothing.
        for (int a = 0; a < m; ++a)
          if (frame_anc.get(a)) raw.flip(round * m + a);
      }
    }
  }

  FaultEffect effect;
  effect.syndrome = BitVec(rounds * m);
  for (int r = 0; r < rounds; ++r)
    for (int i = 0; i < m; ++i) {
      const bool now = raw.get(r * m + i);
      const bool before = r > 0 && raw.get((r - 1) * m + i);
      if (now != before) effect.syndrome.set(r * m + i, true);
    }
  effect.data_error = std::move(frame_data);
  return effect;
}

FaultEffect propagate_fault(const FaultLocation& fault,
                            const CircuitModel& model) {
  return propagate_faults({fault}, model);
}

FaultEffect propagate_fault(const FaultLocation& fault, const CssCode& code,
                            const Schedule* schedule_x,
                            const Schedule& schedule_z, int rounds) {
  return propagate_fault(fault,
                         make_circuit_model(code, schedule_x, schedule_z, rounds));
}

}  // namespace gkpsim
