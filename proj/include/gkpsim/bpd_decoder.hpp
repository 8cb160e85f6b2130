#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gkpsim/binary_matrix.hpp"

namespace gkpsim {

enum class CheckRule : std::uint8_t { TanhProduct, MinSum };

struct DecoderConfig {
  CheckRule rule = CheckRule::TanhProduct;
  int max_iters = 32;
  int osd_order = 0;
};

struct DecodeResult {
  std::vector<std::uint8_t> estimate;
  bool converged = false;      // BP satisfied the syndrome before OSD
  int iterations_used = 0;
  Eigen::VectorXd posterior_llrs;
};

/// Syndrome BP with ordered-statistics post-processing.
///
/// BP runs flooding message passing with syndrome-adjusted check nodes and
/// stops as soon as the hard decision satisfies the syndrome. When it does
/// not converge, OSD solves for a syndrome-satisfying estimate: columns are
/// eliminated in reliability order (|posterior LLR| descending, ties by
/// index), free columns keep their hard decisions, and order-w reprocessing
/// exhaustively flips the w least reliable free columns keeping the smallest
/// soft weight. The final estimate always satisfies H e = s.
///
/// A decoder instance carries its message workspace: use one instance per
/// worker over the shared matrix.
class BpOsdDecoder {
 public:
  explicit BpOsdDecoder(const BinaryMatrix& h, DecoderConfig config = {});

  DecodeResult decode(const BitVec& syndrome, const Eigen::VectorXd& llrs);

  DecodeResult bp_decode(const BitVec& syndrome, const Eigen::VectorXd& llrs);

  /// Requires the syndrome to lie in the column space of H (always true for
  /// syndromes produced by actual fault patterns); throws otherwise.
  std::vector<std::uint8_t> osd_postprocess(const BitVec& syndrome,
                                            const Eigen::VectorXd& posterior_llrs,
                                            int order) const;

  const DecoderConfig& config() const { return config_; }
  int checks() const { return rows_; }
  int variables() const { return cols_; }

 private:
  bool syndrome_satisfied(const std::vector<std::uint8_t>& estimate,
                          const BitVec& syndrome) const;

  DecoderConfig config_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::vector<int>> check_edges_;  // check -> edge ids
  std::vector<std::vector<int>> var_edges_;    // var -> edge ids
  std::vector<int> edge_var_;
  std::vector<int> edge_check_;
  // sparse row supports for syndrome checks
  std::vector<std::vector<int>> row_support_;

  // workspace
  std::vector<double> v2c_, c2v_, fwd_, bwd_;
  std::vector<std::uint8_t> hard_;
};

}  // namespace gkpsim
