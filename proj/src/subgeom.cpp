#include "biharm/subgeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "biharm/error.hpp"

namespace biharm {

namespace {

std::string point_text(const Vector& u) {
  std::ostringstream os;
  os << "u = (";
  for (int i = 0; i < u.size(); ++i) os << (i ? ", " : "") << u[i];
  os << ")";
  return os.str();
}

Vector stack(const std::vector<Vector>& parts) {
  Eigen::Index total = 0;
  for (const auto& p : parts) total += p.size();
  Vector out(total);
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    out.segment(at, p.size()) = p;
    at += p.size();
  }
  return out;
}

std::vector<Vector> unstack(const Vector& v, int parts) {
  const Eigen::Index len = v.size() / parts;
  std::vector<Vector> out;
  for (int i = 0; i < parts; ++i) out.emplace_back(v.segment(i * len, len));
  return out;
}

Frame frame_from_basis(const Matrix& candidates, const IndefiniteBasis& basis) {
  // Time-like vectors first, otherwise keep pivot order.
  std::vector<int> order(static_cast<std::size_t>(basis.rank()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return basis.signs[a] < basis.signs[b]; });
  Frame f;
  f.vectors.resize(candidates.rows(), basis.rank());
  f.signs.resize(basis.rank());
  for (int a = 0; a < basis.rank(); ++a) {
    f.vectors.col(a) = candidates * basis.coefficients.col(order[a]);
    f.signs[a] = basis.signs[order[a]];
    f.pivots.push_back(basis.pivots[order[a]]);
  }
  return f;
}

std::vector<Vector> normal_connection_at(const Immersion& im, const PointGeometry& pg, const NormalField& field,
                                         double h) {
  const Vector V = field(pg.u);
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(pg.m()));
  for (int i = 0; i < pg.m(); ++i) {
    const Vector dV = richardson_derivative(field, pg.u, i, h);
    out.push_back(pg.normal_part(pg.covariant_derivative(i, dV, V)));
  }
  (void)im;
  return out;
}

Vector mean_curvature_at(const Immersion& im, const Vector& u) { return point_geometry(im, u).H; }

}  // namespace

// ---------------------------------------------------------------------------

Vector PointGeometry::normal_part(const Vector& v) const {
  Vector out = v - tangent_projector * v;
  if (on_quadric) out -= (inner(out, position) / inner(position, position)) * position;
  return out;
}

Vector PointGeometry::tangent_coordinates(const Vector& v) const {
  return g_inv * (jacobian.transpose() * (ambient_metric * v));
}

Vector PointGeometry::covariant_derivative(int i, const Vector& dV, const Vector& V) const {
  Vector out = dV;
  if (!ambient_christoffel.empty()) {
    const Vector Xi = jacobian.col(i);
    for (int c = 0; c < out.size(); ++c) out[c] += Xi.dot(ambient_christoffel[c] * V);
  }
  if (on_quadric) out -= (inner(out, position) / inner(position, position)) * position;
  return out;
}

Matrix PointGeometry::shape_operator(const Vector& eta) const {
  const int dim = m();
  Matrix lowered(dim, dim);  // <B_il, eta>
  for (int i = 0; i < dim; ++i) {
    for (int l = 0; l < dim; ++l) lowered(l, i) = inner(b(i, l), eta);
  }
  return g_inv * lowered;
}

double PointGeometry::B_norm_sq() const {
  const int dim = m();
  double sum = 0.0;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      for (int k = 0; k < dim; ++k) {
        for (int l = 0; l < dim; ++l) sum += g_inv(i, k) * g_inv(j, l) * inner(b(i, j), b(k, l));
      }
    }
  }
  return std::abs(sum);
}

// ---------------------------------------------------------------------------

PointGeometry point_geometry(const Immersion& im, const Vector& u) {
  const AmbientSpace& amb = im.ambient();
  const ImmersionJet jet = im.jet(u);
  const int N = im.coordinate_dim();
  const int m = im.param_count();

  PointGeometry pg;
  pg.u = u;
  pg.position = jet.position;
  pg.jacobian = jet.jacobian;

  if (const auto* q = amb.as_quadric()) {
    const double r = quadric_residual(jet.position, *q);
    if (std::abs(r) > 1e-8 * std::max(1.0, std::abs(q->level()))) {
      throw Error(ErrorCode::OffQuadric, point_text(u) + " has <x,x> - level = " + std::to_string(r));
    }
    pg.on_quadric = true;
  }
  pg.ambient_metric = amb.metric(jet.position);

  if (m > N) throw Error(ErrorCode::RankDeficientJacobian, point_text(u));
  {
    Eigen::JacobiSVD<Matrix> svd(pg.jacobian);
    const Vector& sv = svd.singularValues();
    if (!(sv[0] > 0.0) || sv[m - 1] < 1e-10 * sv[0]) {
      throw Error(ErrorCode::RankDeficientJacobian, point_text(u));
    }
  }

  const Matrix& G = pg.ambient_metric;
  const Matrix& J = pg.jacobian;
  pg.g = J.transpose() * G * J;
  pg.g = 0.5 * (pg.g + pg.g.transpose());
  try {
    pg.signature = metric_signature(pg.g);
  } catch (const Error& e) {
    throw Error(ErrorCode::DegenerateInducedMetric, point_text(u));
  }
  pg.g_inv = pg.g.inverse();
  pg.tangent_projector = J * pg.g_inv * J.transpose() * G;

  std::vector<Matrix> dG;  // ambient metric derivatives, charts only
  if (const auto* chart = amb.as_chart()) {
    pg.ambient_christoffel = christoffel(*chart, jet.position);
    dG = chart->metric_derivative(jet.position);
  }

  pg.hessian.resize(static_cast<std::size_t>(m * m));
  pg.B.resize(static_cast<std::size_t>(m * m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      Vector hess = jet.d2(i, j, m);
      if (!pg.ambient_christoffel.empty()) {
        for (int c = 0; c < N; ++c) hess[c] += J.col(i).dot(pg.ambient_christoffel[c] * J.col(j));
      }
      if (pg.on_quadric) hess -= (pg.inner(hess, pg.position) / pg.inner(pg.position, pg.position)) * pg.position;
      pg.hessian[static_cast<std::size_t>(i * m + j)] = hess;
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const Vector bij = pg.normal_part(pg.hessian[static_cast<std::size_t>(i * m + j)]);
      pg.B[static_cast<std::size_t>(i * m + j)] = bij;
      pg.B[static_cast<std::size_t>(j * m + i)] = bij;
    }
  }
  pg.H = Vector::Zero(N);
  double magnitude = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      pg.H += pg.g_inv(i, j) * pg.b(i, j);
      magnitude += std::abs(pg.g_inv(i, j)) * pg.b(i, j).norm();
    }
  }
  pg.H /= m;
  // Pure cancellation noise; nested finite differences would amplify it by 1/h^2.
  if (pg.H.norm() * m <= 64.0 * std::numeric_limits<double>::epsilon() * magnitude) pg.H.setZero();
  pg.H_sq = pg.inner(pg.H, pg.H);

  // d_k g_ij from the raw jet, independent of any projection.
  std::vector<Matrix> dg(static_cast<std::size_t>(m), Matrix(m, m));
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        double v = jet.d2(k, i, m).dot(G * J.col(j)) + J.col(i).dot(G * jet.d2(k, j, m));
        for (int c = 0; c < static_cast<int>(dG.size()); ++c) v += J(c, k) * J.col(i).dot(dG[c] * J.col(j));
        dg[k](i, j) = v;
      }
    }
  }
  pg.induced_christoffel.assign(static_cast<std::size_t>(m), Matrix::Zero(m, m));
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        double sum = 0.0;
        for (int l = 0; l < m; ++l) sum += pg.g_inv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        pg.induced_christoffel[k](i, j) = 0.5 * sum;
      }
    }
  }

  auto [tangent, normal] = orthonormal_frames(pg);
  pg.tangent_frame = std::move(tangent);
  pg.normal_frame = std::move(normal);
  return pg;
}

std::pair<Frame, Frame> orthonormal_frames(const PointGeometry& pg) {
  const int m = pg.m();
  const int N = pg.n_coords();
  const IndefiniteBasis tb = indefinite_gram_schmidt(pg.g, m);
  if (tb.rank() < m) throw Error(ErrorCode::DegenerateInducedMetric, point_text(pg.u));
  Frame tangent = frame_from_basis(pg.jacobian, tb);

  const int codim = N - m - (pg.on_quadric ? 1 : 0);
  Matrix candidates(N, N);
  for (int k = 0; k < N; ++k) candidates.col(k) = pg.normal_part(Vector::Unit(N, k));
  const Matrix gram = candidates.transpose() * pg.ambient_metric * candidates;
  const IndefiniteBasis nb = indefinite_gram_schmidt(0.5 * (gram + gram.transpose()), codim);
  if (nb.rank() < codim) {
    throw Error(ErrorCode::DegenerateNormalBundle, point_text(pg.u) + ": normal rank " +
                                                       std::to_string(nb.rank()) + " < " + std::to_string(codim));
  }
  Frame normal = frame_from_basis(candidates, nb);
  return {std::move(tangent), std::move(normal)};
}

// ---------------------------------------------------------------------------

Vector richardson_derivative(const std::function<Vector(const Vector&)>& f, const Vector& u, int i, double h) {
  // Divide by the offsets actually represented in floating point.
  const auto central = [&](double step) {
    Vector plus = u;
    Vector minus = u;
    plus[i] += step;
    minus[i] -= step;
    return Vector((f(plus) - f(minus)) / (plus[i] - minus[i]));
  };
  return (4.0 * central(h) - central(2.0 * h)) / 3.0;
}

Vector stencil_safe_point(const Immersion& im, const Vector& u, const FdOptions& fd, Diagnostics* diag) {
  const double margin = 4.0 * fd.step;
  Vector out = u;
  for (int i = 0; i < im.param_count(); ++i) {
    const Interval& iv = im.domain()[i];
    if (iv.width() < 2.0 * margin) {
      throw Error(ErrorCode::StencilOutsideDomain,
                  "interval of '" + im.params()[i] + "' is narrower than the stencil reach " + std::to_string(margin));
    }
    const double clamped = std::clamp(u[i], iv.lo + margin, iv.hi - margin);
    if (clamped != u[i]) {
      if (diag != nullptr) {
        std::ostringstream os;
        os << "stencil shift: " << im.params()[i] << " moved from " << u[i] << " to " << clamped;
        diag->push_back(os.str());
      }
      out[i] = clamped;
    }
  }
  return out;
}

std::vector<Vector> normal_connection(const Immersion& im, const Vector& u, const NormalField& field,
                                      const FdOptions& fd, Diagnostics* diag) {
  const Vector at = stencil_safe_point(im, u, fd, diag);
  return normal_connection_at(im, point_geometry(im, at), field, fd.step);
}

std::vector<Vector> normal_connection_H(const Immersion& im, const Vector& u, const FdOptions& fd,
                                        Diagnostics* diag) {
  return normal_connection(im, u, [&im](const Vector& w) { return mean_curvature_at(im, w); }, fd, diag);
}

MeanCurvatureDerivatives mean_curvature_derivatives(const Immersion& im, const Vector& u, const FdOptions& fd,
                                                    Diagnostics* diag) {
  const Vector at = stencil_safe_point(im, u, fd, diag);
  const double h = fd.step;
  const NormalField H_field = [&im](const Vector& w) { return mean_curvature_at(im, w); };
  // Stacked field w -> (nabla^perp_1 H, ..., nabla^perp_m H)(w).
  const auto nabla_stack = [&](const Vector& w) {
    return stack(normal_connection_at(im, point_geometry(im, w), H_field, h));
  };

  MeanCurvatureDerivatives out;
  out.pg = point_geometry(im, at);
  const PointGeometry& pg = out.pg;
  const int m = pg.m();
  out.nabla_H = normal_connection_at(im, pg, H_field, h);

  // second[i][j] = nabla^perp_i nabla^perp_j H
  std::vector<std::vector<Vector>> second(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const std::vector<Vector> d = unstack(richardson_derivative(nabla_stack, at, i, h), m);
    for (int j = 0; j < m; ++j) {
      second[i].push_back(pg.normal_part(pg.covariant_derivative(i, d[j], out.nabla_H[j])));
    }
  }
  Vector lap = Vector::Zero(pg.n_coords());
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      Vector term = second[i][j];
      for (int k = 0; k < m; ++k) term -= pg.induced_christoffel[k](i, j) * out.nabla_H[k];
      lap -= pg.g_inv(i, j) * term;
    }
  }
  out.laplacian_H = lap;
  return out;
}

Vector normal_laplacian(const Immersion& im, const Vector& u, const FdOptions& fd, Diagnostics* diag) {
  return mean_curvature_derivatives(im, u, fd, diag).laplacian_H;
}

Vector tension_field(const PointGeometry& pg) {
  const int m = pg.m();
  Vector tau = Vector::Zero(pg.n_coords());
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      Vector t = pg.hessian[static_cast<std::size_t>(i * m + j)];
      for (int k = 0; k < m; ++k) t -= pg.induced_christoffel[k](i, j) * pg.jacobian.col(k);
      tau += pg.g_inv(i, j) * t;
    }
  }
  return tau;
}

double codazzi_defect(const Immersion& im, const Vector& u, const FdOptions& fd) {
  const Vector at = stencil_safe_point(im, u, fd, nullptr);
  const PointGeometry pg = point_geometry(im, at);
  const int m = pg.m();
  const NormalField B_stack = [&im](const Vector& w) { return stack(point_geometry(im, w).B); };
  const std::vector<Vector> B0 = pg.B;

  // nabla^perp_i B_jk for all i, j, k
  std::vector<std::vector<Vector>> dB(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const std::vector<Vector> d = unstack(richardson_derivative(B_stack, at, i, fd.step), m * m);
    for (int jk = 0; jk < m * m; ++jk) {
      dB[i].push_back(pg.normal_part(pg.covariant_derivative(i, d[jk], B0[jk])));
    }
  }
  auto covB = [&](int i, int j, int k) {
    Vector v = dB[i][static_cast<std::size_t>(j * m + k)];
    for (int l = 0; l < m; ++l) {
      v -= pg.induced_christoffel[l](i, j) * pg.b(l, k) + pg.induced_christoffel[l](i, k) * pg.b(j, l);
    }
    return v;
  };
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      for (int k = 0; k < m; ++k) worst = std::max(worst, (covB(i, j, k) - covB(j, i, k)).norm());
    }
  }
  return worst / std::max(1.0, pg.B_norm_sq());
}

}  // namespace biharm
