#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gkpsim/bit_vec.hpp"

namespace gkpsim {

/// Sparse binary matrix over GF(2).
///
/// Entries are stored as sorted adjacency lists in both orientations so that
/// row-centric (check-node) and column-centric (variable-node) traversals are
/// both cheap. Coordinates are unique; inserting a duplicate is an error.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(int rows, int cols);

  static BinaryMatrix from_entries(
      int rows, int cols, const std::vector<std::pair<int, int>>& entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void add_entry(int r, int c);
  bool at(int r, int c) const;

  const std::vector<int>& row(int r) const { return row_[r]; }
  const std::vector<int>& col(int c) const { return col_[c]; }

  std::size_t ones() const;
  int max_row_weight() const;
  int max_col_weight() const;

  /// Entries in row-major order.
  std::vector<std::pair<int, int>> entries() const;

  BitVec mul(const BitVec& x) const;  // y = M x over GF(2)
  BinaryMatrix transposed() const;

  BitVec row_as_bits(int r) const;

  bool operator==(const BinaryMatrix& o) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<std::vector<int>> row_, col_;
};

/// Interchange format: header "rows cols", then one "r c" pair per line.
BinaryMatrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const BinaryMatrix& m);

int gf2_rank(const BinaryMatrix& m);

/// Basis of { x : M x = 0 }.
std::vector<BitVec> gf2_kernel_basis(const BinaryMatrix& m);

/// Incrementally built reduced GF(2) basis; used for rank computations and
/// quotient-space constructions.
class Gf2Basis {
 public:
  explicit Gf2Basis(int n) : n_(n) {}

  /// Reduces v against the basis; inserts the residual if nonzero.
  /// Returns true when the vector increased the rank.
  bool insert(BitVec v);

  /// Residual of v after reduction (zero iff v is in the span).
  BitVec reduce(BitVec v) const;

  int rank() const { return static_cast<int>(rows_.size()); }
  int dimension() const { return n_; }

 private:
  int n_;
  std::vector<std::pair<int, BitVec>> rows_;  // (pivot, row)
};

}  // namespace gkpsim
