#include "gkpsim/bpd_decoder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gkpsim {

namespace {

constexpr double kMessageClamp = 50.0;
constexpr double kTanhClamp = 1.0 - 1e-15;

double clamp_message(double x) {
  return std::clamp(x, -kMessageClamp, kMessageClamp);
}

double boxplus_from_tanh(double t) {
  return 2.0 * std::atanh(std::clamp(t, -kTanhClamp, kTanhClamp));
}

}  // namespace

BpOsdDecoder::BpOsdDecoder(const BinaryMatrix& h, DecoderConfig config)
    : config_(config), rows_(h.rows()), cols_(h.cols()) {
  if (config_.max_iters < 1)
    throw std::invalid_argument("BpOsdDecoder: max_iters must be >= 1");
  if (config_.osd_order < 0)
    throw std::invalid_argument("BpOsdDecoder: osd_order must be >= 0");
  check_edges_.resize(rows_);
  var_edges_.resize(cols_);
  row_support_.resize(rows_);
  int edge = 0;
  for (int r = 0; r < rows_; ++r) {
    row_support_[r] = h.row(r);
    for (int c : h.row(r)) {
      check_edges_[r].push_back(edge);
      var_edges_[c].push_back(edge);
      edge_var_.push_back(c);
      edge_check_.push_back(r);
      ++edge;
    }
  }
  v2c_.resize(edge);
  c2v_.resize(edge);
  hard_.resize(cols_);
}

bool BpOsdDecoder::syndrome_satisfied(const std::vector<std::uint8_t>& estimate,
                                      const BitVec& syndrome) const {
  for (int r = 0; r < rows_; ++r) {
    int parity = 0;
    for (int c : row_support_[r]) parity ^= estimate[c];
    if (parity != syndrome.get(r)) return false;
  }
  return true;
}

DecodeResult BpOsdDecoder::bp_decode(const BitVec& syndrome,
                                     const Eigen::VectorXd& llrs) {
  if (syndrome.size() != rows_ || llrs.size() != cols_)
    throw std::invalid_argument("bp_decode: dimension mismatch");

  DecodeResult result;
  result.posterior_llrs.resize(cols_);

  for (std::size_t e = 0; e < v2c_.size(); ++e) v2c_[e] = llrs[edge_var_[e]];

  const bool minsum = config_.rule == CheckRule::MinSum;
  for (int iter = 1; iter <= config_.max_iters; ++iter) {
    // Check-node update with leave-one-out forward/backward products; the
    // syndrome bit flips the sign of every outgoing message of its check.
    for (int r = 0; r < rows_; ++r) {
      const auto& edges = check_edges_[r];
      const int deg = static_cast<int>(edges.size());
      if (deg == 0) continue;
      const double sign_s = syndrome.get(r) ? -1.0 : 1.0;
      fwd_.resize(deg);
      bwd_.resize(deg);
      if (!minsum) {
        auto t = [&](int j) {
          return std::tanh(0.5 * clamp_message(v2c_[edges[j]]));
        };
        fwd_[0] = t(0);
        for (int j = 1; j < deg; ++j) fwd_[j] = fwd_[j - 1] * t(j);
        bwd_[deg - 1] = t(deg - 1);
        for (int j = deg - 2; j >= 0; --j) bwd_[j] = bwd_[j + 1] * t(j);
        for (int j = 0; j < deg; ++j) {
          double prod = 1.0;
          if (j > 0) prod *= fwd_[j - 1];
          if (j + 1 < deg) prod *= bwd_[j + 1];
          c2v_[edges[j]] = sign_s * boxplus_from_tanh(prod);
        }
      } else {
        // forward/backward pairs (sign, min |.|) packed into two arrays
        auto combine = [](double a, double b) {
          const double mag = std::min(std::abs(a), std::abs(b));
          return std::copysign(mag, a * b >= 0 ? 1.0 : -1.0);
        };
        auto m = [&](int j) { return clamp_message(v2c_[edges[j]]); };
        fwd_[0] = m(0);
        for (int j = 1; j < deg; ++j) fwd_[j] = combine(fwd_[j - 1], m(j));
        bwd_[deg - 1] = m(deg - 1);
        for (int j = deg - 2; j >= 0; --j) bwd_[j] = combine(bwd_[j + 1], m(j));
        for (int j = 0; j < deg; ++j) {
          double excl;
          if (deg == 1) {
            excl = kMessageClamp;  // empty product: certain even parity
          } else if (j == 0) {
            excl = bwd_[1];
          } else if (j == deg - 1) {
            excl = fwd_[deg - 2];
          } else {
            excl = combine(fwd_[j - 1], bwd_[j + 1]);
          }
          c2v_[edges[j]] = sign_s * excl;
        }
      }
    }

    // Variable-node update, posterior, and hard decision.
    for (int c = 0; c < cols_; ++c) {
      double total = llrs[c];
      for (int e : var_edges_[c]) total += c2v_[e];
      result.posterior_llrs[c] = total;
      hard_[c] = total < 0.0 ? 1 : 0;
      for (int e : var_edges_[c]) v2c_[e] = clamp_message(total - c2v_[e]);
    }

    result.iterations_used = iter;
    if (syndrome_satisfied(hard_, syndrome)) {
      result.converged = true;
      break;
    }
  }

  result.estimate = hard_;
  return result;
}

std::vector<std::uint8_t> BpOsdDecoder::osd_postprocess(
    const BitVec& syndrome, const Eigen::VectorXd& posterior_llrs,
    int order) const {
  if (syndrome.size() != rows_ || posterior_llrs.size() != cols_)
    throw std::invalid_argument("osd_postprocess: dimension mismatch");
  if (order < 0) throw std::invalid_argument("osd_postprocess: order < 0");

  std::vector<std::uint8_t> hard(cols_);
  for (int c = 0; c < cols_; ++c) hard[c] = posterior_llrs[c] < 0.0 ? 1 : 0;
  if (syndrome_satisfied(hard, syndrome)) return hard;

  // Reliability order: |LLR| descending, ties by column index. Elimination
  // in this order pivots on the most reliable basis; the remaining (free)
  // columns keep their hard decisions.
  std::vector<int> order_idx(cols_);
  std::iota(order_idx.begin(), order_idx.end(), 0);
  std::sort(order_idx.begin(), order_idx.end(), [&](int a, int b) {
    const double ra = std::abs(posterior_llrs[a]);
    const double rb = std::abs(posterior_llrs[b]);
    if (ra != rb) return ra > rb;
    return a < b;
  });

  std::vector<BitVec> rows;
  rows.reserve(rows_);
  std::vector<std::uint8_t> rhs(rows_);
  for (int r = 0; r < rows_; ++r) {
    BitVec row(cols_);
    for (int c : row_support_[r]) row.set(c, true);
    rows.push_back(std::move(row));
    rhs[r] = syndrome.get(r);
  }

  std::vector<std::uint8_t> row_used(rows_, 0);
  std::vector<int> pivot_rows, pivot_cols;
  std::vector<std::uint8_t> is_pivot_col(cols_, 0);
  for (int c : order_idx) {
    int pivot = -1;
    for (int r = 0; r < rows_; ++r)
      if (!row_used[r] && rows[r].get(c)) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    row_used[pivot] = 1;
    for (int r = 0; r < rows_; ++r)
      if (r != pivot && rows[r].get(c)) {
        rows[r] ^= rows[pivot];
        rhs[r] ^= rhs[pivot];
      }
    pivot_rows.push_back(pivot);
    pivot_cols.push_back(c);
    is_pivot_col[c] = 1;
    if (static_cast<int>(pivot_rows.size()) == rows_) break;
  }
  for (int r = 0; r < rows_; ++r)
    if (!row_used[r] && rhs[r])
      throw std::invalid_argument(
          "osd_postprocess: syndrome outside the column space");

  // Free columns in ascending reliability: flip candidates come first.
  std::vector<int> free_cols;
  for (auto it = order_idx.rbegin(); it != order_idx.rend(); ++it)
    if (!is_pivot_col[*it]) free_cols.push_back(*it);

  const int rank = static_cast<int>(pivot_cols.size());
  BitVec free_assign(cols_);  // hard decisions on free columns only
  for (int f : free_cols)
    if (hard[f]) free_assign.set(f, true);

  auto pivot_values = [&](const BitVec& assign) {
    BitVec vals(rank);
    for (int i = 0; i < rank; ++i) {
      bool v = rhs[pivot_rows[i]];
      if (rows[pivot_rows[i]].dot(assign)) v = !v;
      if (v) vals.set(i, true);
    }
    return vals;
  };

  auto soft_weight = [&](const BitVec& assign, const BitVec& pivots) {
    double w = 0.0;
    for (int f : free_cols)
      if (assign.get(f)) w += std::abs(posterior_llrs[f]);
    for (int i = 0; i < rank; ++i)
      if (pivots.get(i)) w += std::abs(posterior_llrs[pivot_cols[i]]);
    return w;
  };

  const int flips = std::min<int>(order, static_cast<int>(free_cols.size()));
  BitVec best_assign = free_assign;
  BitVec best_pivots = pivot_values(free_assign);
  double best_weight = soft_weight(best_assign, best_pivots);
  for (std::uint32_t mask = 1; mask < (1u << flips); ++mask) {
    BitVec assign = free_assign;
    for (int b = 0; b < flips; ++b)
      if (mask & (1u << b)) assign.flip(free_cols[b]);
    const BitVec pivots = pivot_values(assign);
    const double w = soft_weight(assign, pivots);
    if (w < best_weight) {
      best_weight = w;
      best_assign = assign;
      best_pivots = pivots;
    }
  }

  std::vector<std::uint8_t> estimate(cols_, 0);
  for (int f : free_cols) estimate[f] = best_assign.get(f);
  for (int i = 0; i < rank; ++i) estimate[pivot_cols[i]] = best_pivots.get(i);
  return estimate;
}

DecodeResult BpOsdDecoder::decode(const BitVec& syndrome,
                                  const Eigen::VectorXd& llrs) {
  DecodeResult result = bp_decode(syndrome, llrs);
  if (!result.converged)
    result.estimate =
        osd_postprocess(syndrome, result.posterior_llrs, config_.osd_order);
  return result;
}

}  // namespace gkpsim
