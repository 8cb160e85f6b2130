#include "gkpsim/binary_matrix.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gkpsim {

BinaryMatrix::BinaryMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), row_(rows), col_(cols) {
  if (rows < 0 || cols < 0)
    throw std::invalid_argument("BinaryMatrix: negative dimension");
}

BinaryMatrix BinaryMatrix::from_entries(
    int rows, int cols, const std::vector<std::pair<int, int>>& entries) {
  BinaryMatrix m(rows, cols);
  for (const auto& [r, c] : entries) m.add_entry(r, c);
  return m;
}

void BinaryMatrix::add_entry(int r, int c) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("BinaryMatrix: entry (" + std::to_string(r) +
                            ", " + std::to_string(c) + ") out of range");
  auto& rr = row_[r];
  auto it = std::lower_bound(rr.begin(), rr.end(), c);
  if (it != rr.end() && *it == c)
    throw std::invalid_argument("BinaryMatrix: duplicate entry (" +
                                std::to_string(r) + ", " + std::to_string(c) +
                                ")");
  rr.insert(it, c);
  auto& cc = col_[c];
  cc.insert(std::lower_bound(cc.begin(), cc.end(), r), r);
}

bool BinaryMatrix::at(int r, int c) const {
  const auto& rr = row_[r];
  return std::binary_search(rr.begin(), rr.end(), c);
}

std::size_t BinaryMatrix::ones() const {
  std::size_t n = 0;
  for (const auto& r : row_) n += r.size();
  return n;
}

int BinaryMatrix::max_row_weight() const {
  std::size_t w = 0;
  for (const auto& r : row_) w = std::max(w, r.size());
  return static_cast<int>(w);
}

int BinaryMatrix::max_col_weight() const {
  std::size_t w = 0;
  for (const auto& c : col_) w = std::max(w, c.size());
  return static_cast<int>(w);
}

std::vector<std::pair<int, int>> BinaryMatrix::entries() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(ones());
  for (int r = 0; r < rows_; ++r)
    for (int c : row_[r]) out.emplace_back(r, c);
  return out;
}

BitVec BinaryMatrix::mul(const BitVec& x) const {
  if (x.size() != cols_)
    throw std::invalid_argument("BinaryMatrix::mul: size mismatch");
  BitVec y(rows_);
  for (int r = 0; r < rows_; ++r) {
    int parity = 0;
    for (int c : row_[r]) parity ^= x.get(c);
    if (parity) y.set(r, true);
  }
  return y;
}

BinaryMatrix BinaryMatrix::transposed() const {
  BinaryMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c : row_[r]) t.add_entry(c, r);
  return t;
}

BitVec BinaryMatrix::row_as_bits(int r) const {
  BitVec v(cols_);
  for (int c : row_[r]) v.set(c, true);
  return v;
}

bool BinaryMatrix::operator==(const BinaryMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && row_ == o.row_;
}

BinaryMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);
  std::string line;
  int lineno = 0;
  int rows = -1, cols = -1;
  std::vector<std::pair<int, int>> entries;
  while (std::getline(in, line)) {
    ++lineno;
    // strip comments and blank lines
    if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
    std::istringstream ls(line);
    long long a, b;
    if (!(ls >> a)) continue;
    if (!(ls >> b)) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected two integers");
    }
    std::string rest;
    if (ls >> rest)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": trailing tokens");
    if (rows < 0) {
      rows = static_cast<int>(a);
      cols = static_cast<int>(b);
      if (rows < 0 || cols < 0)
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": bad header");
      continue;
    }
    if (a < 0 || a >= rows || b < 0 || b >= cols)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": coordinate out of range");
    entries.emplace_back(static_cast<int>(a), static_cast<int>(b));
  }
  if (rows < 0) throw std::runtime_error(path + ": missing header");
  try {
    return BinaryMatrix::from_entries(rows, cols, entries);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void save_matrix(const std::string& path, const BinaryMatrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write matrix file: " + path);
  out << m.rows() << ' ' << m.cols() << '\n';
  for (const auto& [r, c] : m.entries()) out << r << ' ' << c << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

bool Gf2Basis::insert(BitVec v) {
  if (v.size() != n_) throw std::invalid_argument("Gf2Basis: size mismatch");
  for (const auto& [pivot, row] : rows_)
    if (v.get(pivot)) v ^= row;
  const int pivot = v.lowest_set();
  if (pivot < 0) return false;
  // keep the basis reduced: clear the new pivot from existing rows
  for (auto& [p, row] : rows_)
    if (row.get(pivot)) row ^= v;
  rows_.emplace_back(pivot, std::move(v));
  return true;
}

BitVec Gf2Basis::reduce(BitVec v) const {
  if (v.size() != n_) throw std::invalid_argument("Gf2Basis: size mismatch");
  for (const auto& [pivot, row] : rows_)
    if (v.get(pivot)) v ^= row;
  return v;
}

int gf2_rank(const BinaryMatrix& m) {
  Gf2Basis basis(m.cols());
  for (int r = 0; r < m.rows(); ++r) basis.insert(m.row_as_bits(r));
  return basis.rank();
}

std::vector<BitVec> gf2_kernel_basis(const BinaryMatrix& m) {
  const int n = m.cols();
  // Row echelon form with recorded pivot columns.
  std::vector<BitVec> rows;
  rows.reserve(m.rows());
  for (int r = 0; r < m.rows(); ++r) rows.push_back(m.row_as_bits(r));

  std::vector<int> pivot_of_col(n, -1);
  int rank = 0;
  for (int c = 0; c < n && rank < static_cast<int>(rows.size()); ++c) {
    int sel = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r].get(c)) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(rows[rank], rows[sel]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
      if (r != rank && rows[r].get(c)) rows[r] ^= rows[rank];
    pivot_of_col[c] = rank;
    ++rank;
  }

  std::vector<BitVec> kernel;
  for (int c = 0; c < n; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    BitVec v(n);
    v.set(c, true);
    for (int pc = 0; pc < n; ++pc) {
      const int pr = pivot_of_col[pc];
      if (pr >= 0 && rows[pr].get(c)) v.set(pc, true);
    }
    kernel.push_back(std::move(v));
  }
  return kernel;
}

}  // namespace gkpsim
