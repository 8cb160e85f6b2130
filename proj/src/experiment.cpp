#include "gkpsim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace gkpsim {

FaultSample sample_faults(const CircuitCheckMatrix& ccm,
                          const GkpParams& params, Rng& rng) {
  const std::size_t count = ccm.locations.size();
  FaultSample s;
  s.shifts.assign(count, 0.0);
  s.residues.assign(count, 0.0);
  s.flips.assign(count, 0);

  // Locations are visited in enumeration order; a CNOT draws its joint shifts
  // when its first leg is reached, so the rng consumption order is fixed.
  for (std::size_t i = 0; i < count; ++i) {
    const int pair_id = ccm.location_pair[i];
    if (pair_id < 0) {
      const double variance = mechanism_variance(ccm.locations[i].kind, params);
      const double shift = sample_shift(variance, rng);
      s.shifts[i] = shift;
      s.residues[i] = canonical_residue(shift);
      s.flips[i] = is_logical_flip(shift) ? 1 : 0;
      continue;
    }
    const auto& [control, target] = ccm.cnot_pairs[pair_id];
    if (static_cast<std::size_t>(std::min(control, target)) != i) continue;
    const CnotShifts shifts = sample_cnot_shifts(params, rng);
    const PairClass cls = classify_pair_shift(shifts.q, params);
    s.shifts[control] = shifts.q.control;
    s.shifts[target] = shifts.q.target;
    s.residues[control] = canonical_residue(shifts.q.control);
    s.residues[target] = canonical_residue(shifts.q.target);
    s.flips[control] = cls.control;
    s.flips[target] = cls.target;
  }

  s.column_indicator.assign(ccm.columns(), 0);
  for (std::size_t i = 0; i < count; ++i)
    if (s.flips[i]) s.column_indicator[ccm.location_column[i]] ^= 1;

  s.syndrome = BitVec(ccm.detector_bits());
  s.data_error = BitVec(ccm.data_count);
  for (int c = 0; c < ccm.columns(); ++c) {
    if (!s.column_indicator[c]) continue;
    s.syndrome ^= ccm.column_syndrome[c];
    s.data_error ^= ccm.column_data_effect[c];
  }
  return s;
}

FaultSample sample_from_flips(const CircuitCheckMatrix& ccm,
                              const std::vector<int>& flipped_locations) {
  FaultSample s;
  const std::size_t count = ccm.locations.size();
  s.shifts.assign(count, 0.0);
  s.residues.assign(count, 0.0);
  s.flips.assign(count, 0);
  for (int i : flipped_locations) {
    if (i < 0 || static_cast<std::size_t>(i) >= count)
      throw std::out_of_range("sample_from_flips: bad location index");
    s.flips[i] ^= 1;
  }
  s.column_indicator.assign(ccm.columns(), 0);
  for (std::size_t i = 0; i < count; ++i)
    if (s.flips[i]) s.column_indicator[ccm.location_column[i]] ^= 1;
  s.syndrome = BitVec(ccm.detector_bits());
  s.data_error = BitVec(ccm.data_count);
  for (int c = 0; c < ccm.columns(); ++c) {
    if (!s.column_indicator[c]) continue;
    s.syndrome ^= ccm.column_syndrome[c];
    s.data_error ^= ccm.column_data_effect[c];
  }
  return s;
}

LogicalBasis logical_z_basis(const CssCode& code) {
  Gf2Basis span(code.n);  // row space of H_Z, then the collected logicals
  for (int r = 0; r < code.h_z.rows(); ++r)
    span.insert(code.h_z.row_as_bits(r));

  LogicalBasis basis;
  for (BitVec& v : gf2_kernel_basis(code.h_x)) {
    BitVec reduced = span.reduce(v);
    if (!reduced.any()) continue;
    span.insert(reduced);
    basis.z_ops.push_back(std::move(reduced));
  }
  if (static_cast<int>(basis.z_ops.size()) != code.k)
    throw std::logic_error("logical_z_basis: dimension does not match k");
  return basis;
}

TrialOutcome run_trial(const FaultSample& sample, const CircuitCheckMatrix& ccm,
                       const Eigen::VectorXd& circuit_llrs,
                       BpOsdDecoder& circuit_decoder, BpOsdDecoder& base_decoder,
                       const Eigen::VectorXd& base_llrs,
                       const LogicalBasis& logicals) {
  const DecodeResult circuit = circuit_decoder.decode(sample.syndrome,
                                                      circuit_llrs);

  BitVec recovery(ccm.data_count);
  for (int c = 0; c < ccm.columns(); ++c)
    if (circuit.estimate[c]) recovery ^= ccm.column_data_effect[c];

  BitVec residual_error = sample.data_error;
  residual_error ^= recovery;

  const BitVec base_syndrome = ccm.model.code.h_z.mul(residual_error);
  const DecodeResult base = base_decoder.decode(base_syndrome, base_llrs);

  BitVec residual = residual_error;
  for (int q = 0; q < ccm.data_count; ++q)
    if (base.estimate[q]) residual.flip(q);

  if (ccm.model.code.h_z.mul(residual).any())
    throw std::logic_error("run_trial: base correction left a syndrome");

  bool logical_error = false;
  for (const BitVec& op : logicals.z_ops)
    if (residual.dot(op)) {
      logical_error = true;
      break;
    }

  TrialOutcome out;
  out.success = !logical_error;
  out.residual_weight = residual.popcount();
  out.decoder_converged = circuit.converged;
  return out;
}

TrialOutcome run_trial(const FaultSample& sample, const CircuitCheckMatrix& ccm,
                       LlrMode mode, const GkpParams& params,
                       BpOsdDecoder& circuit_decoder, BpOsdDecoder& base_decoder,
                       const Eigen::VectorXd& base_llrs,
                       const LogicalBasis& logicals) {
  const Eigen::VectorXd llrs =
      init_llrs(mode, ccm, params,
                mode == LlrMode::RealTime ? &sample.residues : nullptr);
  return run_trial(sample, ccm, llrs, circuit_decoder, base_decoder, base_llrs,
                   logicals);
}

FerEstimate make_fer_estimate(long long failures, long long trials) {
  if (trials < 1)
    throw std::invalid_argument("make_fer_estimate: trials must be >= 1");
  if (failures < 0 || failures > trials)
    throw std::invalid_argument("make_fer_estimate: bad failure count");
  FerEstimate est;
  est.failures = failures;
  est.trials = trials;
  est.fer = static_cast<double>(failures) / static_cast<double>(trials);

  const double z = 1.959963984540054;  // 95%
  const double n = static_cast<double>(trials);
  const double p = est.fer;
  const double denom = 1.0 + z * z / n;
  const double center = (p + z * z / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  est.lo = std::max(0.0, center - half);
  est.hi = std::min(1.0, center + half);
  return est;
}

StopResult run_until_failures(
    const std::function<std::uint32_t(long long, int)>& trial_fn, int channels,
    long long failure_target, long long trial_cap, int workers) {
  if (channels < 1 || channels > 32)
    throw std::invalid_argument("run_until_failures: bad channel count");
  if (failure_target < 1)
    throw std::invalid_argument("run_until_failures: failure target must be >= 1");
  if (trial_cap < 1)
    throw std::invalid_argument("run_until_failures: trial cap must be >= 1");
  workers = std::max(1, workers);

  // Chunk size is a fixed constant: outcomes are committed by the in-order
  // scan below, so neither the chunking nor the worker striding can change
  // the reported counts.
  constexpr long long kChunk = 4096;

  StopResult result;
  result.failures.assign(channels, 0);

  std::vector<std::uint32_t> masks;
  for (long long base = 0; base < trial_cap; base += kChunk) {
    const long long count = std::min(kChunk, trial_cap - base);
    masks.assign(count, 0);

    std::exception_ptr error;
    auto body = [&](int worker) {
      try {
        for (long long i = worker; i < count; i += workers)
          masks[i] = trial_fn(base + i, worker);
      } catch (...) {
        if (!error) error = std::current_exception();
      }
    };
    if (workers == 1) {
      body(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (int w = 0; w < workers; ++w) pool.emplace_back(body, w);
      for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);

    for (long long i = 0; i < count; ++i) {
      ++result.trials;
      for (int ch = 0; ch < channels; ++ch)
        if (masks[i] & (1u << ch)) ++result.failures[ch];
      bool all_done = true;
      for (int ch = 0; ch < channels; ++ch)
        if (result.failures[ch] < failure_target) {
          all_done = false;
          break;
        }
      if (all_done) return result;
    }
  }
  return result;
}

std::vector<PointResult> run_experiment(
    const CircuitCheckMatrix& ccm, const ExperimentConfig& config,
    const std::function<void(const PointResult&)>& on_point) {
  if (config.squeezing_db.empty())
    throw std::invalid_argument("run_experiment: empty squeezing grid");
  if (config.modes.empty())
    throw std::invalid_argument("run_experiment: no modes requested");

  const CssCode& code = ccm.model.code;
  const LogicalBasis logicals = logical_z_basis(code);
  const int workers = std::max(1, config.workers);
  const int modes = static_cast<int>(config.modes.size());

  std::vector<PointResult> results;
  for (std::size_t pi = 0; pi < config.squeezing_db.size(); ++pi) {
    const double db = config.squeezing_db[pi];
    const GkpParams params = GkpParams::from_db(db);
    const std::uint64_t point_seed = Rng::mix(config.seed, pi);

    Eigen::VectorXd base_llrs(code.n);
    base_llrs.setConstant(probability_to_llr(
        prior_flip_probability(mechanism_variance(FaultKind::Idle, params))));

    // Uniform and Prior LLRs do not depend on the sample.
    std::vector<Eigen::VectorXd> static_llrs(modes);
    for (int mi = 0; mi < modes; ++mi)
      if (config.modes[mi] != LlrMode::RealTime)
        static_llrs[mi] = init_llrs(config.modes[mi], ccm, params);

    struct WorkerState {
      BpOsdDecoder circuit;
      BpOsdDecoder base;
    };
    std::vector<WorkerState> states;
    states.reserve(workers);
    for (int w = 0; w < workers; ++w)
      states.push_back(WorkerState{BpOsdDecoder(ccm.matrix, config.decoder),
                                   BpOsdDecoder(code.h_z, config.decoder)});

    auto trial_fn = [&](long long trial, int worker) -> std::uint32_t {
      Rng rng = Rng::substream(point_seed, static_cast<std::uint64_t>(trial));
      const FaultSample sample = sample_faults(ccm, params, rng);
      WorkerState& state = states[worker];
      std::uint32_t mask = 0;
      for (int mi = 0; mi < modes; ++mi) {
        const Eigen::VectorXd& llrs =
            config.modes[mi] == LlrMode::RealTime
                ? init_llrs(LlrMode::RealTime, ccm, params, &sample.residues)
                : static_llrs[mi];
        const TrialOutcome outcome = run_trial(
            sample, ccm, llrs, state.circuit, state.base, base_llrs, logicals);
        if (!outcome.success) mask |= 1u << mi;
      }
      return mask;
    };

    const StopResult stop =
        run_until_failures(trial_fn, modes, config.failure_target,
                           config.trial_cap, workers);
    for (int mi = 0; mi < modes; ++mi) {
      results.push_back(PointResult{
          db, config.modes[mi],
          make_fer_estimate(stop.failures[mi], stop.trials)});
      if (on_point) on_point(results.back());
    }
  }
  return results;
}

}  // namespace gkpsim
