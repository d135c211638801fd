#include "biharm/biharmonic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "biharm/error.hpp"

namespace biharm {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Minimal: return "minimal";
    case Verdict::ProperBiharmonic: return "proper-biharmonic";
    case Verdict::Biconservative: return "biconservative";
    case Verdict::NotBiharmonic: return "not-biharmonic";
  }
  return "not-biharmonic";
}

std::optional<Verdict> parse_verdict(std::string_view text) {
  std::string key;
  for (char c : text) key.push_back(c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (Verdict v : {Verdict::Minimal, Verdict::ProperBiharmonic, Verdict::Biconservative, Verdict::NotBiharmonic}) {
    if (key == to_string(v)) return v;
  }
  return std::nullopt;
}

namespace {

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

// Trace g^{ij} R(d_i phi, V) d_j phi.
Vector curvature_trace(const Immersion& im, const PointGeometry& pg, const Vector& V) {
  const AmbientSpace& amb = im.ambient();
  Vector out = Vector::Zero(pg.n_coords());
  if (amb.as_flat() != nullptr) return out;
  for (int i = 0; i < pg.m(); ++i) {
    for (int j = 0; j < pg.m(); ++j) {
      if (pg.g_inv(i, j) == 0.0) continue;
      out += pg.g_inv(i, j) * curvature(amb, pg.position, pg.jacobian.col(i), V, pg.jacobian.col(j));
    }
  }
  return out;
}

Vector scalar_as_vector(double x) { return Vector::Constant(1, x); }

}  // namespace

BitensionTerms bitension_terms(const Immersion& im, const Vector& u, const FdOptions& fd, Diagnostics* diag) {
  BitensionTerms t;
  t.md = mean_curvature_derivatives(im, u, fd, diag);
  const PointGeometry& pg = t.md.pg;
  const int m = pg.m();
  const int N = pg.n_coords();
  const Vector& H = pg.H;

  t.laplacian = t.md.laplacian_H;

  const Matrix AH = pg.shape_operator(H);
  t.shape_trace = Vector::Zero(N);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) t.shape_trace += pg.g_inv(i, j) * AH(k, i) * pg.b(k, j);
    }
  }

  const AmbientSpace& amb = im.ambient();
  if (amb.as_quadric() != nullptr) {
    // Trace of C(<H, Y>X - <X, Y>H) over tangent X = Y: purely normal.
    t.curvature_normal = -m * amb.curvature() * H;
    t.curvature_tangential = Vector::Zero(N);
  } else {
    const Vector R = curvature_trace(im, pg, H);
    t.curvature_normal = pg.normal_part(R);
    t.curvature_tangential = pg.tangent_part(R);
  }

  t.connection_trace = Vector::Zero(m);
  t.grad_H_sq = Vector::Zero(m);
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          t.connection_trace[k] += pg.g_inv(i, j) * pg.g_inv(k, l) * pg.inner(pg.b(j, l), t.md.nabla_H[i]);
        }
      }
      t.grad_H_sq[k] += pg.g_inv(k, l) * 2.0 * pg.inner(t.md.nabla_H[l], H);
    }
  }

  t.residual.normal = t.laplacian + t.shape_trace + t.curvature_normal;
  t.residual.tangential_coords =
      t.connection_trace + (m / 4.0) * t.grad_H_sq + pg.tangent_coordinates(t.curvature_tangential);
  t.residual.tangential = pg.jacobian * t.residual.tangential_coords;
  return t;
}

Residual bitension_residual(const Immersion& im, const Vector& u, const FdOptions& fd, Diagnostics* diag) {
  return bitension_terms(im, u, fd, diag).residual;
}

Vector bitension_field(const Immersion& im, const Vector& u, const FdOptions& fd) {
  const Vector at = stencil_safe_point(im, u, fd, nullptr);
  const double h = fd.step;
  const std::function<Vector(const Vector&)> tau = [&im](const Vector& w) {
    const PointGeometry pg = point_geometry(im, w);
    return Vector(pg.m() * pg.H);
  };
  // Ambient covariant derivatives of tau along every d_i, at w.
  const auto first = [&](const Vector& w, const PointGeometry& pg) {
    const Vector value = tau(w);
    std::vector<Vector> out;
    for (int i = 0; i < pg.m(); ++i) out.push_back(pg.covariant_derivative(i, richardson_derivative(tau, w, i, h), value));
    return out;
  };
  const std::function<Vector(const Vector&)> first_stack = [&](const Vector& w) {
    return stack(first(w, point_geometry(im, w)));
  };

  const PointGeometry pg = point_geometry(im, at);
  const int m = pg.m();
  const int N = pg.n_coords();
  const std::vector<Vector> D = first(at, pg);
  Vector rough = Vector::Zero(N);  // trace (nabla nabla - nabla_nabla) tau
  for (int i = 0; i < m; ++i) {
    const Vector d = richardson_derivative(first_stack, at, i, h);
    for (int j = 0; j < m; ++j) {
      Vector second = pg.covariant_derivative(i, d.segment(j * N, N), D[j]);
      for (int k = 0; k < m; ++k) second -= pg.induced_christoffel[k](i, j) * D[k];
      rough += pg.g_inv(i, j) * second;
    }
  }
  return rough - curvature_trace(im, pg, tau(at));
}

// ---------------------------------------------------------------------------

HypersurfaceEquations hypersurface_equations(const HypersurfaceTerms& t) {
  HypersurfaceEquations e;
  const double eps = t.epsilon;
  const double A_sq = (t.A * t.A).trace();
  e.laplacian_term = t.laplacian_f;
  e.shape_term = -eps * t.f * A_sq;
  e.ricci_term = eps * t.f * t.ricci_xi;
  e.shape_gradient_term = t.A * t.grad_f;
  e.gradient_term = eps * (t.m / 2.0) * t.f * t.grad_f;
  e.ricci_gradient_term = -t.f * t.ricci_tangent;
  return e;
}

HypersurfaceTerms spaceform_hypersurface_terms(int m, double epsilon, double C, double f, double laplacian_f,
                                               const Matrix& A, const Vector& grad_f) {
  HypersurfaceTerms t;
  t.m = m;
  t.epsilon = epsilon;
  t.f = f;
  t.laplacian_f = laplacian_f;
  t.A = A;
  t.grad_f = grad_f;
  t.ricci_xi = m * C * epsilon;
  t.ricci_tangent = Vector::Zero(grad_f.size());
  return t;
}

HypersurfaceResidual hypersurface_residual(const Immersion& im, const Vector& u, const FdOptions& fd,
                                           Diagnostics* diag) {
  const Vector at = stencil_safe_point(im, u, fd, diag);
  const PointGeometry pg = point_geometry(im, at);
  if (pg.normal_frame.size() != 1) {
    throw Error(ErrorCode::NotAHypersurface, "normal bundle has rank " + std::to_string(pg.normal_frame.size()));
  }
  const int m = pg.m();
  const double h = fd.step;
  const Vector xi0 = pg.normal_frame.vectors.col(0);
  const double eps = pg.normal_frame.signs[0];

  // f(w) = eps <H, xi> with xi oriented consistently with xi0.
  const std::function<Vector(const Vector&)> f_field = [&](const Vector& w) {
    const PointGeometry q = point_geometry(im, w);
    if (q.normal_frame.size() != 1) throw Error(ErrorCode::NotAHypersurface, "normal rank changed near the point");
    Vector xi = q.normal_frame.vectors.col(0);
    if (q.inner(xi, xi0) * eps < 0.0) xi = -xi;
    return scalar_as_vector(eps * q.inner(q.H, xi));
  };
  const std::function<Vector(const Vector&)> df_field = [&](const Vector& w) {
    Vector d(m);
    for (int i = 0; i < m; ++i) d[i] = richardson_derivative(f_field, w, i, h)[0];
    return d;
  };

  HypersurfaceTerms t;
  t.m = m;
  t.epsilon = eps;
  t.f = eps * pg.inner(pg.H, xi0);
  const Vector df = df_field(at);
  Matrix hess(m, m);
  for (int i = 0; i < m; ++i) hess.row(i) = richardson_derivative(df_field, at, i, h).transpose();
  hess = 0.5 * (hess + hess.transpose());
  double lap = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      double v = hess(i, j);
      for (int k = 0; k < m; ++k) v -= pg.induced_christoffel[k](i, j) * df[k];
      lap += pg.g_inv(i, j) * v;
    }
  }
  t.laplacian_f = lap;
  t.A = pg.shape_operator(xi0);
  t.grad_f = pg.g_inv * df;
  const RicciValue ric = ricci_operator(im.ambient(), pg.position, xi0);
  t.ricci_xi = ric.scalar;
  t.ricci_tangent = pg.tangent_coordinates(ric.vector);

  HypersurfaceResidual out;
  const HypersurfaceEquations eq = hypersurface_equations(t);
  out.terms = t;
  out.scalar = eq.scalar();
  out.tangential = pg.jacobian * eq.vector();
  out.xi = xi0;
  return out;
}

HypersurfaceResidual spacelike_residual(const Immersion& im, const Vector& u, const FdOptions& fd,
                                        Diagnostics* diag) {
  const Vector at = stencil_safe_point(im, u, fd, nullptr);
  const PointGeometry pg = point_geometry(im, at);
  if (pg.signature.neg != 0) {
    throw Error(ErrorCode::NotSpacelike, "induced metric has " + std::to_string(pg.signature.neg) +
                                             " time-like directions");
  }
  if (pg.normal_frame.size() != 1) {
    throw Error(ErrorCode::NotAHypersurface, "normal bundle has rank " + std::to_string(pg.normal_frame.size()));
  }
  if (pg.normal_frame.signs[0] > 0.0) throw Error(ErrorCode::NotSpacelike, "unit normal is space-like");
  return hypersurface_residual(im, u, fd, diag);
}

double pseudo_umbilical_residual(const PointGeometry& pg) {
  const int m = pg.m();
  const Matrix M = pg.shape_operator(pg.H) - pg.H_sq * Matrix::Identity(m, m);
  Matrix E(m, m);
  for (int a = 0; a < m; ++a) E.col(a) = pg.tangent_coordinates(pg.tangent_frame.vectors.col(a));
  const Matrix framed = E.inverse() * M * E;
  return framed.norm() / std::max(1.0, std::abs(pg.H_sq));
}

// ---------------------------------------------------------------------------

Verdict classify_verdict(const std::vector<SampleRecord>& samples, double tol_res, double tol_h) {
  double max_H = 0.0;
  double max_normal = 0.0;
  double max_tangential = 0.0;
  int valid = 0;
  for (const auto& s : samples) {
    if (!s.valid) continue;
    ++valid;
    max_H = std::max(max_H, s.H_norm);
    max_normal = std::max(max_normal, s.normal_normalized);
    max_tangential = std::max(max_tangential, s.tangential_normalized);
  }
  if (valid == 0) throw Error(ErrorCode::NoValidSamples, "no sample point could be evaluated");
  if (max_H < tol_h) return Verdict::Minimal;
  if (std::max(max_normal, max_tangential) < tol_res) return Verdict::ProperBiharmonic;
  if (max_tangential < tol_res) return Verdict::Biconservative;
  return Verdict::NotBiharmonic;
}

SampleRecord evaluate_sample(const Immersion& im, const Vector& u, const CheckOptions& opt, Diagnostics* diag) {
  SampleRecord rec;
  rec.u = u;
  try {
    const BitensionTerms t = bitension_terms(im, u, opt.fd, diag);
    const PointGeometry& pg = t.md.pg;
    rec.u = pg.u;
    rec.normal = t.residual.normal;
    rec.tangential = t.residual.tangential;
    rec.normal_norm = rec.normal.norm();
    rec.tangential_norm = rec.tangential.norm();
    rec.H_sq = pg.H_sq;
    rec.H_norm = pg.H.norm();
    rec.H_length = std::sqrt(std::abs(pg.H_sq));
    rec.scale = std::max({1.0, std::abs(pg.H_sq), pg.B_norm_sq()});
    rec.normal_normalized = rec.normal_norm / rec.scale;
    rec.tangential_normalized = rec.tangential_norm / rec.scale;
    rec.grad_H_sq_norm = (pg.jacobian * t.grad_H_sq).norm();
    rec.pseudo_umbilical = pseudo_umbilical_residual(pg);
    rec.valid = true;
  } catch (const Error& e) {
    rec.valid = false;
    rec.error = e.what();
  }
  return rec;
}

BiharmonicReport check_immersion(const Immersion& im, const CheckOptions& opt) {
  BiharmonicReport report;
  report.ambient = im.ambient().describe();
  report.m = im.param_count();
  report.samples_requested = im.sampling().count;
  report.seed = im.sampling().seed;
  report.options = opt;

  const std::vector<Vector> points = sample_points(im, 4.0 * opt.fd.step);
  const int n = static_cast<int>(points.size());
  std::vector<SampleRecord> records(static_cast<std::size_t>(n));
  std::vector<Diagnostics> diags(static_cast<std::size_t>(n));

  int threads = opt.threads > 0 ? opt.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, std::max(1, n));
  const auto worker = [&](int first) {
    for (int k = first; k < n; k += threads) {
      records[static_cast<std::size_t>(k)] = evaluate_sample(im, points[k], opt, &diags[static_cast<std::size_t>(k)]);
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& d : diags) report.diagnostics.insert(report.diagnostics.end(), d.begin(), d.end());
  report.samples = std::move(records);

  double H_sq_min = std::numeric_limits<double>::infinity();
  double H_sq_max = -std::numeric_limits<double>::infinity();
  report.min_H = std::numeric_limits<double>::infinity();
  std::string first_error;
  for (const auto& s : report.samples) {
    if (!s.valid) {
      if (first_error.empty()) first_error = s.error;
      continue;
    }
    ++report.valid_count;
    report.max_normal = std::max(report.max_normal, s.normal_normalized);
    report.max_tangential = std::max(report.max_tangential, s.tangential_normalized);
    report.max_normal_raw = std::max(report.max_normal_raw, s.normal_norm);
    report.max_tangential_raw = std::max(report.max_tangential_raw, s.tangential_norm);
    report.max_H = std::max(report.max_H, s.H_norm);
    report.min_H = std::min(report.min_H, s.H_norm);
    report.max_pseudo_umbilical = std::max(report.max_pseudo_umbilical, s.pseudo_umbilical);
    report.max_grad_H_sq = std::max(report.max_grad_H_sq, s.grad_H_sq_norm);
    H_sq_min = std::min(H_sq_min, s.H_sq);
    H_sq_max = std::max(H_sq_max, s.H_sq);
  }
  if (report.valid_count == 0) {
    throw Error(ErrorCode::NoValidSamples, "all " + std::to_string(n) + " sample points failed; first: " + first_error);
  }
  report.H_sq_spread = H_sq_max - H_sq_min;
  report.verdict = classify_verdict(report.samples, opt.tol_res, opt.tol_h);
  return report;
}

// ---------------------------------------------------------------------------

namespace {

long long isqrt_exact(long long v, bool& ok) {
  if (v < 0) {
    ok = false;
    return 0;
  }
  auto r = static_cast<long long>(std::llround(std::sqrt(static_cast<long double>(v))));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  ok = r * r == v;
  return r;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  bool ok_n = false;
  bool ok_d = false;
  const long long n = isqrt_exact(q.numerator(), ok_n);
  const long long d = isqrt_exact(q.denominator(), ok_d);
  if (!ok_n || !ok_d) return std::nullopt;
  return Rational(n, d);
}

}  // namespace

ClassificationResult classify_two_curvature(int n, int p, Rational C) {
  if (n < 2) throw Error(ErrorCode::InvalidRange, "n must be at least 2");
  if (p < 1 || p > n - 1) throw Error(ErrorCode::InvalidRange, "p must satisfy 1 <= p <= n-1");
  if (C == Rational(0)) throw Error(ErrorCode::InvalidRange, "C must be nonzero");

  ClassificationResult r;
  r.n = n;
  r.p = p;
  r.C = C;
  const Rational P(p);
  const Rational Q(n - p);
  const Rational Nn(n);

  // C2 = (2nC - p C1)/(n - p) into C (C1 + C2) = C1 C2 gives
  // p C1^2 - (n + 2p) C C1 + 2n C^2 = 0.
  const Rational a = P;
  const Rational b = -(Nn + 2 * P) * C;
  const Rational c = 2 * Nn * C * C;
  const Rational disc = b * b - 4 * a * c;
  const std::optional<Rational> root = rational_sqrt(disc);
  if (!root) {
    r.reason = "no rational solution";
    return r;
  }
  r.roots.push_back((-b - *root) / (2 * a));
  if (*root != Rational(0)) r.roots.push_back((-b + *root) / (2 * a));

  std::optional<Rational> chosen;
  std::optional<Rational> equalities_only;
  for (const Rational& C1 : r.roots) {
    if (C1 == Rational(0)) continue;
    const Rational C2 = (2 * Nn * C - P * C1) / Q;
    if (C2 == Rational(0)) continue;
    if (Rational(1) / C1 + Rational(1) / C2 != Rational(1) / C) continue;
    const bool inequality = P * P * C1 + Q * Q * C2 != Nn * Nn * C;
    if (inequality && !chosen) chosen = C1;
    if (!inequality && C1 == C2 && !equalities_only) equalities_only = C1;
  }
  if (chosen) {
    r.C1 = *chosen;
    r.C2 = (2 * Nn * C - P * *chosen) / Q;
    r.admissible = true;
    r.reason = "unique admissible root C1 = C2 = 2C";
    return r;
  }
  r.C1 = equalities_only.value_or(2 * C);
  r.C2 = r.C1;
  r.admissible = false;
  r.reason = n == 2 * p ? "n=2p" : "inequality violated";
  return r;
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(std::string_view text) {
  const auto bad = [&]() { return Error(ErrorCode::InvalidRange, "not a rational number: '" + std::string(text) + "'"); };
  const auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw bad();
    std::size_t i = 0;
    bool negative = false;
    if (s[0] == '-' || s[0] == '+') {
      negative = s[0] == '-';
      i = 1;
    }
    if (i == s.size()) throw bad();
    long long v = 0;
    long long scale = 1;
    bool seen_point = false;
    for (; i < s.size(); ++i) {
      if (s[i] == '.' && !seen_point) {
        seen_point = true;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw bad();
      if (v > 100000000000000LL) throw bad();
      v = v * 10 + (s[i] - '0');
      if (seen_point) scale *= 10;
    }
    return Rational(negative ? -v : v, scale);
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_int(text);
  const Rational den = parse_int(text.substr(slash + 1));
  if (den == Rational(0)) throw bad();
  return parse_int(text.substr(0, slash)) / den;
}

}  // namespace biharm
