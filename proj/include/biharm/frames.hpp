#pragma once

// Orthonormalization in an indefinite inner product.

#include <vector>

#include "biharm/ambient.hpp"

namespace biharm {

// Result of pivoted Gram-Schmidt on k candidate vectors described only by
// their Gram matrix. Output vector a is sum_j coefficients(j, a) * v_j and
// satisfies <e_a, e_b> = signs[a] * delta_ab.
struct IndefiniteBasis {
  Matrix coefficients;      // k x r
  Vector signs;             // r entries, each -1 or +1
  std::vector<int> pivots;  // candidate chosen at each step (-1 - j marks a v_i + v_j pair pivot)

  int rank() const { return static_cast<int>(signs.size()); }
};

// Full-pivoting Gram-Schmidt: at each step the remaining candidate with the
// largest |<v,v>| is normalized; when every remaining candidate is (near)
// null but two of them pair nontrivially, their sum or difference is used.
// Stops at `max_rank` vectors or when every remaining pivot is below
// rel_tol * max|G_ij|.
IndefiniteBasis indefinite_gram_schmidt(const Matrix& gram, int max_rank, double rel_tol = 1e-10);

// Sylvester signature (neg, pos) of a symmetric matrix via the pivoted
// decomposition above. Throws DegenerateInducedMetric on a vanishing pivot.
Signature metric_signature(const Matrix& g, double rel_tol = 1e-10);

}  // namespace biharm
