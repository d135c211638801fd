#include "biharm/frames.hpp"

#include <cmath>

#include "biharm/error.hpp"

namespace biharm {

IndefiniteBasis indefinite_gram_schmidt(const Matrix& gram, int max_rank, double rel_tol) {
  const int k = static_cast<int>(gram.rows());
  const double scale = gram.cwiseAbs().maxCoeff();
  const double tol = rel_tol * (scale > 0.0 ? scale : 1.0);

  // Columns are the working candidates in coefficient space.
  Matrix cand = Matrix::Identity(k, k);
  std::vector<bool> used(static_cast<std::size_t>(k), false);

  IndefiniteBasis out;
  out.coefficients.resize(k, 0);
  std::vector<double> signs;

  auto ip = [&](const Vector& a, const Vector& b) { return a.dot(gram * b); };

  while (static_cast<int>(signs.size()) < max_rank) {
    int best = -1;
    double best_q = 0.0;
    for (int j = 0; j < k; ++j) {
      if (used[j]) continue;
      const double q = ip(cand.col(j), cand.col(j));
      if (std::abs(q) > std::abs(best_q)) {
        best = j;
        best_q = q;
      }
    }
    int pivot_tag = best;
    if (best < 0 || std::abs(best_q) <= tol) {
      // Every remaining candidate is null; try a pair with nonzero pairing.
      int pa = -1;
      int pb = -1;
      double best_pair = 0.0;
      for (int a = 0; a < k; ++a) {
        if (used[a]) continue;
        for (int b = a + 1; b < k; ++b) {
          if (used[b]) continue;
          const double p = ip(cand.col(a), cand.col(b));
          if (std::abs(p) > std::abs(best_pair)) {
            best_pair = p;
            pa = a;
            pb = b;
          }
        }
      }
      if (pa < 0 || std::abs(best_pair) <= tol) break;
      cand.col(pa) += (best_pair > 0.0 ? 1.0 : -1.0) * cand.col(pb);
      best = pa;
      best_q = ip(cand.col(pa), cand.col(pa));
      pivot_tag = -1 - pb;
    }
    used[best] = true;
    const double sign = best_q > 0.0 ? 1.0 : -1.0;
    const Vector e = cand.col(best) / std::sqrt(std::abs(best_q));
    for (int j = 0; j < k; ++j) {
      if (used[j]) continue;
      cand.col(j) -= sign * ip(cand.col(j), e) * e;
    }
    out.coefficients.conservativeResize(k, out.coefficients.cols() + 1);
    out.coefficients.col(out.coefficients.cols() - 1) = e;
    signs.push_back(sign);
    out.pivots.push_back(pivot_tag);
  }
  out.signs = Eigen::Map<Vector>(signs.data(), static_cast<Eigen::Index>(signs.size()));
  return out;
}

Signature metric_signature(const Matrix& g, double rel_tol) {
  if (g.rows() != g.cols()) throw Error(ErrorCode::DimensionMismatch, "metric must be square");
  const int m = static_cast<int>(g.rows());
  const IndefiniteBasis basis = indefinite_gram_schmidt(0.5 * (g + g.transpose()), m, rel_tol);
  if (basis.rank() < m) {
    throw Error(ErrorCode::DegenerateInducedMetric,
                "metric has rank " + std::to_string(basis.rank()) + " < " + std::to_string(m));
  }
  Signature s;
  for (int a = 0; a < basis.rank(); ++a) (basis.signs[a] < 0.0 ? s.neg : s.pos)++;
  return s;
}

}  // namespace biharm
