#include "biharm/ambient.hpp"

#include <cmath>
#include <sstream>

#include "biharm/error.hpp"

namespace biharm {

double QuadricSpace::curvature() const {
  const double c = 1.0 / (radius * radius);
  return kind == QuadricKind::Sphere ? c : -c;
}

double QuadricSpace::level() const {
  const double r2 = radius * radius;
  return kind == QuadricKind::Sphere ? r2 : -r2;
}

// ---------------------------------------------------------------------------

ChartSpace::ChartSpace(std::vector<std::string> coords, std::vector<std::vector<Expr>> metric)
    : coords_(std::move(coords)), metric_(std::move(metric)) {
  const std::size_t n = coords_.size();
  if (n == 0 || metric_.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "chart metric must be a square matrix matching the coordinates");
  }
  for (const auto& row : metric_) {
    if (row.size() != n) throw Error(ErrorCode::DimensionMismatch, "chart metric row length");
  }
  // Only the upper triangle is trusted; the lower one mirrors it.
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < a; ++b) metric_[a][b] = metric_[b][a];
  }
  d1_.assign(n, std::vector<std::vector<Expr>>(n, std::vector<Expr>(n)));
  d2_.assign(n, std::vector<std::vector<std::vector<Expr>>>(
                    n, std::vector<std::vector<Expr>>(n, std::vector<Expr>(n))));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        d1_[c][a][b] = differentiate(metric_[a][b], coords_[c]);
        d1_[c][b][a] = d1_[c][a][b];
      }
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t d = c; d < n; ++d) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
          Expr e = differentiate(d1_[c][a][b], coords_[d]);
          d2_[c][d][a][b] = e;
          d2_[c][d][b][a] = e;
          d2_[d][c][a][b] = e;
          d2_[d][c][b][a] = e;
        }
      }
    }
  }
}

Bindings ChartSpace::bind(const Vector& y) const {
  if (y.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "chart point dimension");
  Bindings b;
  b.reserve(coords_.size());
  for (int i = 0; i < dim(); ++i) b.emplace_back(coords_[i], y[i]);
  return b;
}

Matrix ChartSpace::metric(const Vector& y) const {
  const Bindings b = bind(y);
  const int n = dim();
  Matrix h(n, n);
  for (int a = 0; a < n; ++a) {
    for (int c = a; c < n; ++c) {
      h(a, c) = evaluate(metric_[a][c], b);
      h(c, a) = h(a, c);
    }
  }
  return h;
}

std::vector<Matrix> ChartSpace::metric_derivative(const Vector& y) const {
  const Bindings b = bind(y);
  const int n = dim();
  std::vector<Matrix> out(n, Matrix(n, n));
  for (int c = 0; c < n; ++c) {
    for (int a = 0; a < n; ++a) {
      for (int e = a; e < n; ++e) {
        out[c](a, e) = evaluate(d1_[c][a][e], b);
        out[c](e, a) = out[c](a, e);
      }
    }
  }
  return out;
}

std::vector<std::vector<Matrix>> ChartSpace::metric_second_derivative(const Vector& y) const {
  const Bindings b = bind(y);
  const int n = dim();
  std::vector<std::vector<Matrix>> out(n, std::vector<Matrix>(n, Matrix(n, n)));
  for (int c = 0; c < n; ++c) {
    for (int d = c; d < n; ++d) {
      for (int a = 0; a < n; ++a) {
        for (int e = a; e < n; ++e) {
          const double v = evaluate(d2_[c][d][a][e], b);
          out[c][d](a, e) = out[c][d](e, a) = v;
          out[d][c](a, e) = out[d][c](e, a) = v;
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

AmbientSpace::AmbientSpace(FlatSpace flat) : model_(flat) {
  if (flat.dim < 1 || flat.index < 0 || flat.index > flat.dim) {
    throw Error(ErrorCode::UnsupportedSignature, "flat space R^" + std::to_string(flat.dim) + "_" +
                                                     std::to_string(flat.index));
  }
}

AmbientSpace::AmbientSpace(QuadricSpace quadric) : model_(quadric) {
  if (quadric.dim < 1 || quadric.index < 0 || quadric.index > quadric.dim) {
    throw Error(ErrorCode::UnsupportedSignature, "quadric of dimension " + std::to_string(quadric.dim) +
                                                     " and index " + std::to_string(quadric.index));
  }
  if (!(quadric.radius > 0.0)) throw Error(ErrorCode::InvalidRadius, std::to_string(quadric.radius));
}

AmbientSpace::AmbientSpace(ChartSpace chart) : model_(std::move(chart)) {}

AmbientSpace AmbientSpace::flat(int dim, int index) { return AmbientSpace(FlatSpace{dim, index}); }

AmbientSpace AmbientSpace::sphere(int dim, int index, double radius) {
  return AmbientSpace(QuadricSpace{QuadricKind::Sphere, dim, index, radius});
}

AmbientSpace AmbientSpace::hyperbolic(int dim, int index, double radius) {
  return AmbientSpace(QuadricSpace{QuadricKind::Hyperbolic, dim, index, radius});
}

AmbientSpace AmbientSpace::space_form(int dim, int index, double curvature) {
  if (curvature == 0.0) return flat(dim, index);
  if (curvature > 0.0) return sphere(dim, index, 1.0 / std::sqrt(curvature));
  return hyperbolic(dim, index, 1.0 / std::sqrt(-curvature));
}

int AmbientSpace::dim() const {
  if (const auto* f = as_flat()) return f->dim;
  if (const auto* q = as_quadric()) return q->dim;
  return as_chart()->dim();
}

int AmbientSpace::coordinate_dim() const {
  if (const auto* q = as_quadric()) return q->embedding_dim();
  return dim();
}

double AmbientSpace::curvature() const {
  if (const auto* q = as_quadric()) return q->curvature();
  if (as_flat() != nullptr) return 0.0;
  throw Error(ErrorCode::DimensionMismatch, "curvature() requested for a general chart");
}

Signature AmbientSpace::signature() const {
  if (const auto* f = as_flat()) return {f->index, f->dim - f->index};
  if (const auto* q = as_quadric()) return {q->index, q->dim - q->index};
  // Charts carry no global signature; it is only known pointwise.
  return {};
}

Matrix AmbientSpace::metric(const Vector& at) const {
  if (const auto* f = as_flat()) return flat_signs(f->dim, f->index).asDiagonal();
  if (const auto* q = as_quadric()) return flat_signs(q->embedding_dim(), q->embedding_index()).asDiagonal();
  const auto& chart = *as_chart();
  Matrix h = chart.metric(at);
  require_nondegenerate(h, "chart metric");
  return h;
}

std::string AmbientSpace::describe() const {
  std::ostringstream os;
  if (const auto* f = as_flat()) {
    os << "R^" << f->dim << "_" << f->index;
  } else if (const auto* q = as_quadric()) {
    os << (q->kind == QuadricKind::Sphere ? "S^" : "H^") << q->dim << "_" << q->index << "(" << q->radius
       << ")";
  } else {
    const auto& c = *as_chart();
    os << "chart[" << c.dim() << "](";
    for (int a = 0; a < c.dim(); ++a) {
      os << (a ? "; " : "");
      for (int b = 0; b < c.dim(); ++b) os << (b ? ", " : "") << to_string(c.metric_expr(a, b));
    }
    os << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------------------

Vector flat_signs(int dim, int index) {
  Vector s = Vector::Ones(dim);
  s.head(index).setConstant(-1.0);
  return s;
}

void require_nondegenerate(const Matrix& h, const std::string& where) {
  double scale = 1.0;
  for (int i = 0; i < h.rows(); ++i) scale *= h.row(i).norm();
  const double det = h.determinant();
  if (!(scale > 0.0) || !(std::abs(det) > 1e-10 * scale)) {
    throw Error(ErrorCode::DegenerateMetric, where + " has |det| = " + std::to_string(std::abs(det)));
  }
}

double inner(const Vector& a, const Vector& b, const AmbientSpace& amb, const Vector& at) {
  const int n = amb.coordinate_dim();
  if (a.size() != n || b.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "inner product of vectors of length " + std::to_string(a.size()) +
                                                  " and " + std::to_string(b.size()) + " in " + amb.describe());
  }
  if (const auto* chart = amb.as_chart()) {
    if (at.size() != n) throw Error(ErrorCode::DimensionMismatch, "chart inner product needs a base point");
    return a.dot(chart->metric(at) * b);
  }
  const Signature sig = amb.as_flat() ? amb.signature()
                                      : Signature{amb.as_quadric()->embedding_index(),
                                                  n - amb.as_quadric()->embedding_index()};
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += (i < sig.neg ? -1.0 : 1.0) * a[i] * b[i];
  return sum;
}

double quadric_residual(const Vector& x, const QuadricSpace& q) {
  const Vector s = flat_signs(q.embedding_dim(), q.embedding_index());
  if (x.size() != s.size()) throw Error(ErrorCode::DimensionMismatch, "quadric point dimension");
  return x.dot(s.asDiagonal() * x) - q.level();
}

std::vector<Matrix> christoffel(const ChartSpace& chart, const Vector& y) {
  const int n = chart.dim();
  const Matrix h = chart.metric(y);
  require_nondegenerate(h, "chart metric");
  const Matrix hinv = h.inverse();
  const auto dh = chart.metric_derivative(y);
  // first kind: [d](a, b) = 1/2 (d_a h_{db} + d_b h_{da} - d_d h_{ab})
  std::vector<Matrix> first(n, Matrix(n, n));
  for (int d = 0; d < n; ++d) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) first[d](a, b) = 0.5 * (dh[a](d, b) + dh[b](d, a) - dh[d](a, b));
    }
  }
  std::vector<Matrix> gamma(n, Matrix::Zero(n, n));
  for (int c = 0; c < n; ++c) {
    for (int d = 0; d < n; ++d) gamma[c] += hinv(c, d) * first[d];
  }
  return gamma;
}

std::vector<std::vector<Matrix>> christoffel_derivative(const ChartSpace& chart, const Vector& y) {
  const int n = chart.dim();
  const Matrix h = chart.metric(y);
  require_nondegenerate(h, "chart metric");
  const Matrix hinv = h.inverse();
  const auto dh = chart.metric_derivative(y);
  const auto ddh = chart.metric_second_derivative(y);

  std::vector<Matrix> first(n, Matrix(n, n));
  for (int d = 0; d < n; ++d) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) first[d](a, b) = 0.5 * (dh[a](d, b) + dh[b](d, a) - dh[d](a, b));
    }
  }
  std::vector<std::vector<Matrix>> out(n, std::vector<Matrix>(n, Matrix::Zero(n, n)));
  for (int e = 0; e < n; ++e) {
    const Matrix dhinv = -hinv * dh[e] * hinv;
    for (int d = 0; d < n; ++d) {
      Matrix dfirst(n, n);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          dfirst(a, b) = 0.5 * (ddh[e][a](d, b) + ddh[e][b](d, a) - ddh[e][d](a, b));
        }
      }
      for (int c = 0; c < n; ++c) out[e][c] += dhinv(c, d) * first[d] + hinv(c, d) * dfirst;
    }
  }
  return out;
}

Vector riemann(const ChartSpace& chart, const Vector& y, const Vector& X, const Vector& Y, const Vector& Z) {
  const int n = chart.dim();
  if (X.size() != n || Y.size() != n || Z.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "riemann arguments must be chart vectors");
  }
  const auto gamma = christoffel(chart, y);
  const auto dgamma = christoffel_derivative(chart, y);
  // (R(d_a, d_b) d_c)^d = d_a G^d_{bc} - d_b G^d_{ac} + G^d_{ae} G^e_{bc} - G^d_{be} G^e_{ac}
  Vector out = Vector::Zero(n);
  for (int d = 0; d < n; ++d) {
    double sum = 0.0;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const double xy = X[a] * Y[b] - X[b] * Y[a];
        if (xy == 0.0) continue;
        for (int c = 0; c < n; ++c) {
          // Sum over (a, b) of X^a Y^b (T_ab - T_ba) == sum of T_ab (X^a Y^b - X^b Y^a).
          double r = dgamma[a][d](b, c);
          for (int e = 0; e < n; ++e) r += gamma[d](a, e) * gamma[e](b, c);
          sum += xy * Z[c] * r;
        }
      }
    }
    out[d] = sum;
  }
  return out;
}

Vector spaceform_curvature(double C, const Vector& X, const Vector& Y, const Vector& Z,
                           const AmbientSpace& amb, const Vector& at) {
  if (C == 0.0) return Vector::Zero(X.size());
  return C * (inner(Y, Z, amb, at) * X - inner(X, Z, amb, at) * Y);
}

Vector curvature(const AmbientSpace& amb, const Vector& at, const Vector& X, const Vector& Y, const Vector& Z) {
  if (const auto* chart = amb.as_chart()) return riemann(*chart, at, X, Y, Z);
  return spaceform_curvature(amb.curvature(), X, Y, Z, amb, at);
}

RicciValue ricci_operator(const AmbientSpace& amb, const Vector& at, const Vector& xi) {
  const int n = amb.coordinate_dim();
  if (xi.size() != n) throw Error(ErrorCode::DimensionMismatch, "ricci argument dimension");
  RicciValue out;
  if (amb.is_space_form()) {
    // Ric(Y, Z) = (n - 1) C <Y, Z> for constant curvature C in dimension n.
    const double k = (amb.dim() - 1) * amb.curvature();
    out.scalar = k * inner(xi, xi, amb, at);
    out.vector = k * xi;
    return out;
  }
  const auto& chart = *amb.as_chart();
  const Matrix h = chart.metric(at);
  require_nondegenerate(h, "chart metric");
  // Ric(xi, d_b) = sum_a (R(d_a, xi) d_b)^a
  Vector covector(n);
  for (int b = 0; b < n; ++b) {
    double tr = 0.0;
    for (int a = 0; a < n; ++a) {
      tr += riemann(chart, at, Vector::Unit(n, a), xi, Vector::Unit(n, b))[a];
    }
    covector[b] = tr;
  }
  out.scalar = covector.dot(xi);
  out.vector = h.ldlt().solve(covector);
  return out;
}

}  // namespace biharm
