#pragma once

#include <vector>

#include "gkpsim/measurement_circuit.hpp"

namespace gkpsim {

/// Effect of a set of X faults on the experiment record.
///
/// syndrome holds rounds * m detector bits for the Z-check measurements,
/// round-differenced: detector (r, i) fires when the raw outcome of check i
/// changed between round r-1 and round r (round -1 is the ideal zero).
/// data_error is the residual X frame on the data qubits at circuit end.
struct FaultEffect {
  BitVec syndrome;
  BitVec data_error;
};

/// Prebuilt circuit sequence for one memory experiment: `rounds` repetitions
/// of the X-check circuit followed by `rounds` repetitions of the Z-check
/// circuit. Codes without X checks simply have no X segment.
struct CircuitModel {
  CssCode code;
  MeasurementCircuit x_circuit;  // unused when has_x() is false
  MeasurementCircuit z_circuit;
  int rounds = 0;

  bool has_x() const { return x_circuit.ancilla_count > 0; }
  int checks_per_round() const { return z_circuit.ancilla_count; }
  int detector_bits() const { return rounds * checks_per_round(); }
};

/// schedule_x may be null when the code has no X checks.
CircuitModel make_circuit_model(const CssCode& code, const Schedule* schedule_x,
                                const Schedule& schedule_z, int rounds);

/// Throws std::invalid_argument when the location does not exist in the
/// model (bad slot, wrong mechanism for the slot, out-of-range indices).
void validate_location(const FaultLocation& loc, const CircuitModel& model);

/// Frame propagation of simultaneous X faults. X on a CNOT control copies to
/// the target; X flips a Z-basis measurement outcome and leaves an X-basis
/// one untouched; an X landing on a freshly prepared |+> ancilla is the
/// identity and is dropped at insertion. Effects are linear: the result is
/// the XOR of the single-fault effects.
FaultEffect propagate_faults(const std::vector<FaultLocation>& faults,
                             const CircuitModel& model);

FaultEffect propagate_fault(const FaultLocation& fault,
                            const CircuitModel& model);

/// Convenience form that builds the circuit model on the fly.
FaultEffect propagate_fault(const FaultLocation& fault, const CssCode& code,
                            const Schedule* schedule_x,
                            const Schedule& schedule_z, int rounds);

}  // namespace gkpsim
