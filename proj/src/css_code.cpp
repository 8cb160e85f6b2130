#include "gkpsim/css_code.hpp"

#include <stdexcept>
#include <string>

namespace gkpsim {

namespace {

// Kronecker-style index helpers for the hypergraph product blocks.
int kron_index(int i, int j, int inner) { return i * inner + j; }

}  // namespace

CssCode validate_css(BinaryMatrix h_x, BinaryMatrix h_z, int distance) {
  if (h_x.cols() != h_z.cols())
    throw std::invalid_argument(
        "validate_css: column counts differ (" + std::to_string(h_x.cols()) +
        " vs " + std::to_string(h_z.cols()) + ")");
  const int n = h_x.cols();

  // H_X H_Z^T = 0: every X row must share an even overlap with every Z row.
  std::vector<BitVec> x_rows;
  x_rows.reserve(h_x.rows());
  for (int i = 0; i < h_x.rows(); ++i) x_rows.push_back(h_x.row_as_bits(i));
  for (int j = 0; j < h_z.rows(); ++j) {
    const BitVec z_row = h_z.row_as_bits(j);
    for (int i = 0; i < h_x.rows(); ++i) {
      if (x_rows[i].dot(z_row))
        throw std::invalid_argument(
            "validate_css: checks anticommute (h_x row " + std::to_string(i) +
            ", h_z row " + std::to_string(j) + ")");
    }
  }

  CssCode code;
  code.n = n;
  code.k = n - gf2_rank(h_x) - gf2_rank(h_z);
  code.distance = distance;
  code.h_x = std::move(h_x);
  code.h_z = std::move(h_z);
  return code;
}

CssCode hypergraph_product(const BinaryMatrix& h1, const BinaryMatrix& h2) {
  if (h1.ones() == 0 || h2.ones() == 0)
    throw std::invalid_argument("hypergraph_product: zero matrix input");
  const int m1 = h1.rows(), n1 = h1.cols();
  const int m2 = h2.rows(), n2 = h2.cols();
  const int n = n1 * n2 + m1 * m2;

  BinaryMatrix h_x(m1 * n2, n);
  for (const auto& [r, c] : h1.entries())
    for (int j = 0; j < n2; ++j)
      h_x.add_entry(kron_index(r, j, n2), kron_index(c, j, n2));
  for (const auto& [r, c] : h2.entries())  // I (x) H2^T places (c, r) blocks
    for (int i = 0; i < m1; ++i)
      h_x.add_entry(kron_index(i, c, n2), n1 * n2 + kron_index(i, r, m2));

  BinaryMatrix h_z(n1 * m2, n);
  for (const auto& [r, c] : h2.entries())
    for (int i = 0; i < n1; ++i)
      h_z.add_entry(kron_index(i, r, m2), kron_index(i, c, n2));
  for (const auto& [r, c] : h1.entries())  // H1^T (x) I places (c, r) blocks
    for (int j = 0; j < m2; ++j)
      h_z.add_entry(kron_index(c, j, m2), n1 * n2 + kron_index(r, j, m2));

  return validate_css(std::move(h_x), std::move(h_z));
}

namespace {

struct LiftedEntry {
  int block_row;
  int block_col;
  std::vector<int> shifts;
};

void check_base(const GroupAlgebraMatrix& base, int lift_size,
                const char* name) {
  if (base.empty() || base[0].empty())
    throw std::invalid_argument(std::string("lifted_product: empty base ") +
                                name);
  const std::size_t cols = base[0].size();
  for (const auto& row : base) {
    if (row.size() != cols)
      throw std::invalid_argument(std::string("lifted_product: ragged base ") +
                                  name);
    for (const auto& entry : row)
      for (int e : entry)
        if (e < 0 || e >= lift_size)
          throw std::invalid_argument(
              std::string("lifted_product: exponent out of range in base ") +
              name);
  }
}

// Flat accessors treating a GroupAlgebraMatrix as a ring matrix; transpose_of
// applies the ring anti-involution x^e -> x^(l - e).
std::vector<int> conj_shifts(const std::vector<int>& shifts, int lift_size) {
  std::vector<int> out;
  out.reserve(shifts.size());
  for (int e : shifts) out.push_back(e == 0 ? 0 : lift_size - e);
  return out;
}

void emit_circulant(BinaryMatrix& m, int row0, int col0,
                    const std::vector<int>& shifts, int lift_size) {
  // Circulant of x^e maps unit row i to column (i + e) mod l.
  for (int e : shifts)
    for (int i = 0; i < lift_size; ++i)
      m.add_entry(row0 + i, col0 + (i + e) % lift_size);
}

}  // namespace

CssCode lifted_product(const GroupAlgebraMatrix& base1,
                       const GroupAlgebraMatrix& base2, int lift_size) {
  if (lift_size < 1)
    throw std::invalid_argument("lifted_product: lift_size must be >= 1");
  check_base(base1, lift_size, "1");
  check_base(base2, lift_size, "2");

  const int m1 = static_cast<int>(base1.size());
  const int n1 = static_cast<int>(base1[0].size());
  const int m2 = static_cast<int>(base2.size());
  const int n2 = static_cast<int>(base2[0].size());
  const int block_cols = n1 * n2 + m1 * m2;
  const int n = block_cols * lift_size;

  std::vector<LiftedEntry> x_entries, z_entries;

  // H_X = [A (x) I_{n2} | I_{m1} (x) B*]
  for (int r = 0; r < m1; ++r)
    for (int c = 0; c < n1; ++c)
      if (!base1[r][c].empty())
        for (int j = 0; j < n2; ++j)
          x_entries.push_back({kron_index(r, j, n2), kron_index(c, j, n2),
                               base1[r][c]});
  for (int r = 0; r < m2; ++r)
    for (int c = 0; c < n2; ++c)
      if (!base2[r][c].empty())
        for (int i = 0; i < m1; ++i)
          x_entries.push_back({kron_index(i, c, n2),
                               n1 * n2 + kron_index(i, r, m2),
                               conj_shifts(base2[r][c], lift_size)});

  // H_Z = [I_{n1} (x) B | A* (x) I_{m2}]
  for (int r = 0; r < m2; ++r)
    for (int c = 0; c < n2; ++c)
      if (!base2[r][c].empty())
        for (int i = 0; i < n1; ++i)
          z_entries.push_back({kron_index(i, r, m2), kron_index(i, c, n2),
                               base2[r][c]});
  for (int r = 0; r < m1; ++r)
    for (int c = 0; c < n1; ++c)
      if (!base1[r][c].empty())
        for (int j = 0; j < m2; ++j)
          z_entries.push_back({kron_index(c, j, m2),
                               n1 * n2 + kron_index(r, j, m2),
                               conj_shifts(base1[r][c], lift_size)});

  BinaryMatrix h_x(m1 * n2 * lift_size, n);
  for (const auto& e : x_entries)
    emit_circulant(h_x, e.block_row * lift_size, e.block_col * lift_size,
                   e.shifts, lift_size);
  BinaryMatrix h_z(n1 * m2 * lift_size, n);
  for (const auto& e : z_entries)
    emit_circulant(h_z, e.block_row * lift_size, e.block_col * lift_size,
                   e.shifts, lift_size);

  return validate_css(std::move(h_x), std::move(h_z));
}

BinaryMatrix repetition_checks(int n) {
  if (n < 2) throw std::invalid_argument("repetition_checks: n must be >= 2");
  BinaryMatrix h(n - 1, n);
  for (int i = 0; i + 1 < n; ++i) {
    h.add_entry(i, i);
    h.add_entry(i, i + 1);
  }
  return h;
}

}  // namespace gkpsim
