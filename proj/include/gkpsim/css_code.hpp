#pragma once

#include <string>
#include <vector>

#include "gkpsim/binary_matrix.hpp"

namespace gkpsim {

/// CSS code given by its X- and Z-check matrices. Construction enforces
/// H_X H_Z^T = 0 over GF(2); k is computed from the GF(2) ranks. distance is
/// declared metadata (0 when unknown), never computed here.
struct CssCode {
  BinaryMatrix h_x;
  BinaryMatrix h_z;
  int n = 0;
  int k = 0;
  int distance = 0;
};

/// Validates the pair and computes k = n - rank(H_X) - rank(H_Z).
/// Throws std::invalid_argument naming the first anticommuting row pair.
CssCode validate_css(BinaryMatrix h_x, BinaryMatrix h_z, int distance = 0);

/// Hypergraph product of two classical check matrices:
///   H_X = [H1 (x) I | I (x) H2^T],  H_Z = [I (x) H2 | H1^T (x) I].
CssCode hypergraph_product(const BinaryMatrix& h1, const BinaryMatrix& h2);

/// Matrix over the circulant group algebra F2[x]/(x^l - 1); each entry is the
/// set of cyclic-shift exponents whose permutation matrices sum to the block.
using GroupAlgebraMatrix = std::vector<std::vector<std::vector<int>>>;

/// Lifted product: the hypergraph-product block structure evaluated over the
/// group algebra, with transposes taking x^e to x^(l-e), then expanded into
/// binary circulant blocks. lift_size = 1 reduces to hypergraph_product.
CssCode lifted_product(const GroupAlgebraMatrix& base1,
                       const GroupAlgebraMatrix& base2, int lift_size);

/// Repetition-code check matrix: (n-1) x n with rows {i, i+1}.
BinaryMatrix repetition_checks(int n);

}  // namespace gkpsim
