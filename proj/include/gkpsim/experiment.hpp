#pragma once

#include <functional>
#include <vector>

#include "gkpsim/bpd_decoder.hpp"
#include "gkpsim/detector_model.hpp"
#include "gkpsim/rng.hpp"

namespace gkpsim {

/// One Monte Carlo draw of the full fault configuration with its analog
/// record. Per-location shifts come from each mechanism's model (CNOT legs
/// are drawn jointly and classified against the correlated lattice);
/// column_indicator is the XOR of each group's flips, and data_error /
/// syndrome are assembled from the flipped columns' cached effects.
struct FaultSample {
  std::vector<double> shifts;
  std::vector<double> residues;
  std::vector<std::uint8_t> flips;
  std::vector<std::uint8_t> column_indicator;
  BitVec syndrome;
  BitVec data_error;  // e0
};

FaultSample sample_faults(const CircuitCheckMatrix& ccm,
                          const GkpParams& params, Rng& rng);

/// Deterministic sample with a prescribed flip set (residues default to the
/// flipped shifts' ideal values); used by tests to plant fault patterns.
FaultSample sample_from_flips(const CircuitCheckMatrix& ccm,
                              const std::vector<int>& flipped_locations);

/// Representatives of the logical Z operators: a basis of ker(H_X) modulo
/// the row space of H_Z. A residual X error that clears every H_Z check is a
/// logical error iff it pairs oddly with one of these.
struct LogicalBasis {
  std::vector<BitVec> z_ops;
};
LogicalBasis logical_z_basis(const CssCode& code);

struct TrialOutcome {
  bool success = false;
  int residual_weight = 0;
  bool decoder_converged = false;
};

/// Decode one sample: circuit-level decoding, recovery, then the base-code
/// check. Success means the post-recovery residual, after the base decoder's
/// correction, is a stabilizer (zero H_Z syndrome and trivial pairing with
/// every logical Z).
TrialOutcome run_trial(const FaultSample& sample, const CircuitCheckMatrix& ccm,
                       const Eigen::VectorXd& circuit_llrs,
                       BpOsdDecoder& circuit_decoder, BpOsdDecoder& base_decoder,
                       const Eigen::VectorXd& base_llrs,
                       const LogicalBasis& logicals);

/// Spec-shaped convenience: initializes the LLRs for `mode` internally.
TrialOutcome run_trial(const FaultSample& sample, const CircuitCheckMatrix& ccm,
                       LlrMode mode, const GkpParams& params,
                       BpOsdDecoder& circuit_decoder, BpOsdDecoder& base_decoder,
                       const Eigen::VectorXd& base_llrs,
                       const LogicalBasis& logicals);

struct FerEstimate {
  long long failures = 0;
  long long trials = 0;
  double fer = 0.0;
  double lo = 0.0;  // 95% Wilson interval
  double hi = 1.0;
};
FerEstimate make_fer_estimate(long long failures, long long trials);

/// Deterministic stopping loop shared by all experiments. trial_fn(index,
/// worker) returns a bitmask with one failure bit per channel; trials run in
/// fixed-size chunks, workers split each chunk by striding, and outcomes are
/// committed in trial-index order until every channel reached
/// failure_target (or the cap). The committed prefix is a pure function of
/// trial_fn, so results are identical for any worker count.
struct StopResult {
  long long trials = 0;
  std::vector<long long> failures;
};
StopResult run_until_failures(
    const std::function<std::uint32_t(long long, int)>& trial_fn, int channels,
    long long failure_target, long long trial_cap, int workers);

struct ExperimentConfig {
  std::vector<double> squeezing_db;
  std::vector<LlrMode> modes = {LlrMode::Uniform, LlrMode::Prior,
                                LlrMode::RealTime};
  DecoderConfig decoder;
  long long failure_target = 1000;
  long long trial_cap = 10'000'000;
  std::uint64_t seed = 1;
  int workers = 1;
};

struct PointResult {
  double squeezing_db = 0.0;
  LlrMode mode = LlrMode::Uniform;
  FerEstimate fer;
};

/// Quantum memory experiment over the squeezing grid. All modes of a point
/// decode the same fault samples (per-trial substreams keyed by point and
/// trial index), so mode comparisons are paired. on_point, when given, is
/// called with each result as soon as its grid point completes.
std::vector<PointResult> run_experiment(
    const CircuitCheckMatrix& ccm, const ExperimentConfig& config,
    const std::function<void(const PointResult&)>& on_point = {});

}  // namespace gkpsim
