#include "gkpsim/detector_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

namespace gkpsim {

namespace {

struct EffectKey {
  BitVec syndrome;
  BitVec data;
  bool operator==(const EffectKey&) const = default;
};

struct EffectKeyHash {
  std::size_t operator()(const EffectKey& k) const {
    const BitVecHash h;
    return h(k.syndrome) * 0x9e3779b97f4a7c15ULL + h(k.data);
  }
};

}  // namespace

CircuitCheckMatrix build_circuit_check_matrix(const CssCode& code,
                                              const Schedule* schedule_x,
                                              const Schedule& schedule_z,
                                              int rounds) {
  CircuitCheckMatrix ccm;
  ccm.model = make_circuit_model(code, schedule_x, schedule_z, rounds);
  ccm.rounds = rounds;
  ccm.checks_per_round = ccm.model.checks_per_round();
  ccm.data_count = code.n;

  // Global enumeration: all X rounds precede all Z rounds.
  auto append_rounds = [&](const MeasurementCircuit& circ) {
    const auto per_round = enumerate_fault_locations(circ);
    for (int r = 0; r < rounds; ++r)
      for (FaultLocation loc : per_round) {
        loc.round = r;
        ccm.locations.push_back(loc);
      }
  };
  std::size_t x_offset = 0;
  if (ccm.model.has_x()) {
    append_rounds(ccm.model.x_circuit);
    x_offset = ccm.locations.size();
  }
  append_rounds(ccm.model.z_circuit);
  ccm.pre_dedup_columns = ccm.locations.size();

  // Positional index of a location inside the global enumeration.
  auto location_index = [&](CheckBasis basis, int round, int slot,
                            bool on_ancilla, int qubit) -> int {
    const MeasurementCircuit& circ =
        basis == CheckBasis::Z ? ccm.model.z_circuit : ccm.model.x_circuit;
    const int width = circ.data_count + circ.ancilla_count;
    const std::size_t per_round =
        static_cast<std::size_t>(width) * (circ.depth() + 1) +
        circ.ancilla_count;
    std::size_t idx = (basis == CheckBasis::Z ? x_offset : 0) +
                      static_cast<std::size_t>(round) * per_round;
    idx += static_cast<std::size_t>(slot) * width;
    idx += on_ancilla ? circ.data_count + qubit : qubit;
    return static_cast<int>(idx);
  };

  // CNOT leg pairing, one entry per gate instance.
  ccm.location_pair.assign(ccm.locations.size(), -1);
  auto pair_circuit = [&](const MeasurementCircuit& circ) {
    for (int r = 0; r < rounds; ++r)
      for (int level = 1; level <= circ.depth(); ++level)
        for (const CircuitGate& g : circ.levels[level - 1]) {
          const bool control_on_ancilla = circ.basis == CheckBasis::X;
          const int control = location_index(
              circ.basis, r, level, control_on_ancilla,
              control_on_ancilla ? g.ancilla : g.data);
          const int target = location_index(
              circ.basis, r, level, !control_on_ancilla,
              control_on_ancilla ? g.data : g.ancilla);
          const int pair_id = static_cast<int>(ccm.cnot_pairs.size());
          ccm.cnot_pairs.emplace_back(control, target);
          ccm.location_pair[control] = pair_id;
          ccm.location_pair[target] = pair_id;
        }
  };
  if (ccm.model.has_x()) pair_circuit(ccm.model.x_circuit);
  pair_circuit(ccm.model.z_circuit);

  // Propagate every location and merge identical (syndrome, data) effects.
  std::unordered_map<EffectKey, int, EffectKeyHash> column_of;
  ccm.location_column.resize(ccm.locations.size());
  for (std::size_t i = 0; i < ccm.locations.size(); ++i) {
    const FaultLocation& loc = ccm.locations[i];
    ccm.mechanism_counts[static_cast<int>(loc.kind)]++;
    FaultEffect effect = propagate_fault(loc, ccm.model);
    EffectKey key{effect.syndrome, effect.data_error};
    auto [it, inserted] =
        column_of.try_emplace(std::move(key),
                              static_cast<int>(ccm.column_groups.size()));
    if (inserted) {
      ccm.column_groups.emplace_back();
      ccm.column_syndrome.push_back(std::move(effect.syndrome));
      ccm.column_data_effect.push_back(std::move(effect.data_error));
    }
    ccm.location_column[i] = it->second;
    ccm.column_groups[it->second].push_back(static_cast<int>(i));
  }

  const int cols = static_cast<int>(ccm.column_groups.size());
  ccm.matrix = BinaryMatrix(ccm.detector_bits(), cols);
  for (int c = 0; c < cols; ++c)
    for (int bit : ccm.column_syndrome[c].ones()) ccm.matrix.add_entry(bit, c);
  return ccm;
}

double merge_probabilities(const std::vector<double>& probabilities) {
  double prod = 1.0;
  for (double p : probabilities) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("merge_probabilities: p outside [0, 1]");
    prod *= 1.0 - 2.0 * p;
  }
  return 0.5 - 0.5 * prod;
}

double probability_to_llr(double p) {
  constexpr double kFloor = 1e-12;
  p = std::clamp(p, kFloor, 1.0 - kFloor);
  return std::log((1.0 - p) / p);
}

const char* llr_mode_name(LlrMode mode) {
  switch (mode) {
    case LlrMode::Uniform:
      return "uniform";
    case LlrMode::Prior:
      return "prior";
    case LlrMode::RealTime:
      return "realtime";
  }
  return "?";
}

LlrMode llr_mode_from_name(const std::string& name) {
  if (name == "uniform") return LlrMode::Uniform;
  if (name == "prior") return LlrMode::Prior;
  if (name == "realtime") return LlrMode::RealTime;
  throw std::invalid_argument("unknown LLR mode: " + name);
}

std::vector<double> location_probabilities(LlrMode mode,
                                           const CircuitCheckMatrix& ccm,
                                           const GkpParams& params,
                                           const std::vector<double>* residues) {
  const std::size_t count = ccm.locations.size();
  std::vector<double> probs(count, 0.0);
  if (mode == LlrMode::RealTime) {
    if (!residues || residues->size() != count)
      throw std::invalid_argument(
          "location_probabilities: RealTime mode needs per-location residues");
    for (std::size_t i = 0; i < count; ++i) {
      if (ccm.location_pair[i] >= 0) continue;  // filled via the pair below
      probs[i] = posterior_flip_probability(
          (*residues)[i], mechanism_variance(ccm.locations[i].kind, params));
    }
    for (const auto& [control, target] : ccm.cnot_pairs) {
      const Eigen::Vector4d post = pair_posterior(
          (*residues)[control], (*residues)[target], Quadrature::Q, params);
      probs[control] = post[2] + post[3];
      probs[target] = post[1] + post[3];
    }
  } else {
    for (std::size_t i = 0; i < count; ++i)
      probs[i] = prior_flip_probability(
          mechanism_variance(ccm.locations[i].kind, params));
  }
  return probs;
}

Eigen::VectorXd init_llrs(LlrMode mode, const CircuitCheckMatrix& ccm,
                          const GkpParams& params,
                          const std::vector<double>* residues) {
  const int cols = ccm.columns();
  Eigen::VectorXd llrs(cols);
  if (mode == LlrMode::Uniform) {
    const auto priors =
        location_probabilities(LlrMode::Prior, ccm, params, nullptr);
    double mean = 0.0;
    for (double p : priors) mean += p;
    mean /= static_cast<double>(priors.size());
    llrs.setConstant(probability_to_llr(mean));
    return llrs;
  }
  const auto probs = location_probabilities(mode, ccm, params, residues);
  std::vector<double> group;
  for (int c = 0; c < cols; ++c) {
    group.clear();
    for (int loc : ccm.column_groups[c]) group.push_back(probs[loc]);
    llrs[c] = probability_to_llr(merge_probabilities(group));
  }
  return llrs;
}

void save_check_matrix(const std::string& matrix_path,
                       const std::string& sidecar_path,
                       const CircuitCheckMatrix& ccm) {
  save_matrix(matrix_path, ccm.matrix);
  std::ofstream out(sidecar_path);
  if (!out) throw std::runtime_error("cannot write sidecar: " + sidecar_path);
  out << "# column  basis round slot qubit kind, ...\n";
  for (std::size_t c = 0; c < ccm.column_groups.size(); ++c) {
    out << c;
    for (int i : ccm.column_groups[c]) {
      const FaultLocation& loc = ccm.locations[i];
      out << ' ' << basis_name(loc.basis) << loc.round << ".s" << loc.slot
          << '.' << (loc.on_ancilla ? 'A' : 'D') << loc.qubit << '.'
          << fault_kind_name(loc.kind);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + sidecar_path);
}

}  // namespace gkpsim
