#include "biharm/immersion.hpp"

#include <array>
#include <cmath>
#include <random>

#include "biharm/error.hpp"

namespace biharm {

Immersion::Immersion(std::vector<std::string> params, AmbientSpace ambient, std::vector<Expr> components,
                     std::vector<Interval> domain, SamplePolicy sampling)
    : params_(std::move(params)),
      ambient_(std::move(ambient)),
      components_(std::move(components)),
      domain_(std::move(domain)),
      sampling_(sampling) {
  const int m = param_count();
  if (m < 1) throw Error(ErrorCode::DimensionMismatch, "an immersion needs at least one parameter");
  if (coordinate_dim() != ambient_.coordinate_dim()) {
    throw Error(ErrorCode::DimensionMismatch, std::to_string(coordinate_dim()) + " components for ambient " +
                                                  ambient_.describe() + " with " +
                                                  std::to_string(ambient_.coordinate_dim()) + " coordinates");
  }
  if (static_cast<int>(domain_.size()) != m) {
    throw Error(ErrorCode::DimensionMismatch, "domain box needs one interval per parameter");
  }
  for (const auto& iv : domain_) {
    if (!(iv.hi > iv.lo)) throw Error(ErrorCode::InvalidRange, "empty domain interval");
  }
  d1_.resize(components_.size());
  d2_.resize(components_.size());
  for (std::size_t k = 0; k < components_.size(); ++k) {
    d1_[k].resize(m);
    d2_[k].assign(m, std::vector<Expr>(m));
    for (int i = 0; i < m; ++i) d1_[k][i] = differentiate(components_[k], params_[i]);
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        d2_[k][i][j] = differentiate(d1_[k][i], params_[j]);
        d2_[k][j][i] = d2_[k][i][j];
      }
    }
  }
}

Bindings Immersion::bind(const Vector& u) const {
  if (u.size() != param_count()) throw Error(ErrorCode::DimensionMismatch, "parameter point dimension");
  Bindings b;
  b.reserve(params_.size());
  for (int i = 0; i < param_count(); ++i) b.emplace_back(params_[i], u[i]);
  return b;
}

Vector Immersion::position(const Vector& u) const {
  const Bindings b = bind(u);
  Vector x(coordinate_dim());
  for (int k = 0; k < coordinate_dim(); ++k) x[k] = evaluate(components_[k], b);
  return x;
}

ImmersionJet Immersion::jet(const Vector& u) const {
  const Bindings b = bind(u);
  const int n = coordinate_dim();
  const int m = param_count();
  ImmersionJet jet;
  jet.position.resize(n);
  jet.jacobian.resize(n, m);
  jet.second.assign(static_cast<std::size_t>(m * m), Vector(n));
  for (int k = 0; k < n; ++k) {
    jet.position[k] = evaluate(components_[k], b);
    for (int i = 0; i < m; ++i) jet.jacobian(k, i) = evaluate(d1_[k][i], b);
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        const double v = evaluate(d2_[k][i][j], b);
        jet.second[static_cast<std::size_t>(i * m + j)][k] = v;
        jet.second[static_cast<std::size_t>(j * m + i)][k] = v;
      }
    }
  }
  return jet;
}

bool Immersion::in_domain(const Vector& u) const {
  for (int i = 0; i < param_count(); ++i) {
    if (!domain_[i].contains(u[i])) return false;
  }
  return true;
}

namespace {

constexpr std::array<int, 12> kPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

double radical_inverse(std::uint64_t index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

}  // namespace

std::vector<Vector> sample_points(const Immersion& im, double margin) {
  const int m = im.param_count();
  if (m > static_cast<int>(kPrimes.size())) {
    throw Error(ErrorCode::DimensionMismatch, "sampling supports at most 12 parameters");
  }
  std::mt19937_64 rng(im.sampling().seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> shift(m);
  for (auto& s : shift) s = unit(rng);

  std::vector<Vector> out;
  out.reserve(im.sampling().count);
  for (int n = 0; n < im.sampling().count; ++n) {
    Vector u(m);
    for (int i = 0; i < m; ++i) {
      const Interval& iv = im.domain()[i];
      const double lo = iv.lo + margin;
      const double hi = iv.hi - margin;
      if (!(hi > lo)) {
        throw Error(ErrorCode::StencilOutsideDomain, "domain interval of '" + im.params()[i] +
                                                         "' is narrower than twice the stencil margin");
      }
      double t = radical_inverse(static_cast<std::uint64_t>(n + 1), kPrimes[i]) + shift[i];
      t -= std::floor(t);
      u[i] = lo + t * (hi - lo);
    }
    out.push_back(std::move(u));
  }
  return out;
}

Immersion affine_reparametrize(const Immersion& im, const Matrix& A, const Vector& c) {
  const int m = im.param_count();
  if (A.rows() != m || A.cols() != m || c.size() != m) {
    throw Error(ErrorCode::DimensionMismatch, "affine map must be m x m");
  }
  if (std::abs(A.determinant()) < 1e-12) throw Error(ErrorCode::InvalidRange, "affine map is not invertible");

  std::vector<std::string> params;
  for (const auto& p : im.params()) params.push_back(p + "_w");
  std::vector<Expr> old_in_new(m);
  for (int i = 0; i < m; ++i) {
    Expr e = Expr(c[i]);
    for (int j = 0; j < m; ++j) e = e + Expr(A(i, j)) * Expr::variable(params[j]);
    old_in_new[i] = e;
  }
  // Rename first so that substituted expressions never capture old names.
  std::vector<Expr> components;
  for (const auto& comp : im.components()) {
    Expr e = comp;
    for (int i = 0; i < m; ++i) e = substitute(e, im.params()[i], Expr::variable("\x01" + std::to_string(i)));
    for (int i = 0; i < m; ++i) e = substitute(e, "\x01" + std::to_string(i), old_in_new[i]);
    components.push_back(e);
  }

  const Matrix Ainv = A.inverse();
  Vector lo = Vector::Constant(m, INFINITY);
  Vector hi = Vector::Constant(m, -INFINITY);
  for (int corner = 0; corner < (1 << m); ++corner) {
    Vector u(m);
    for (int i = 0; i < m; ++i) u[i] = (corner >> i & 1) ? im.domain()[i].hi : im.domain()[i].lo;
    const Vector w = Ainv * (u - c);
    lo = lo.cwiseMin(w);
    hi = hi.cwiseMax(w);
  }
  std::vector<Interval> domain;
  for (int i = 0; i < m; ++i) domain.push_back({lo[i], hi[i]});
  return Immersion(params, im.ambient(), components, domain, im.sampling());
}

}  // namespace biharm
