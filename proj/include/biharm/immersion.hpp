#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "biharm/ambient.hpp"
#include "biharm/expr.hpp"

namespace biharm {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

struct SamplePolicy {
  int count = 25;
  std::uint64_t seed = 20150212;
};

// Jet of an immersion at a parameter point: position, first and second
// coordinate derivatives of the component functions.
struct ImmersionJet {
  Vector position;                 // N
  Matrix jacobian;                 // N x m, column i = d_i phi
  std::vector<Vector> second;      // m*m entries, [i*m + j] = d_i d_j phi
  const Vector& d2(int i, int j, int m) const { return second[static_cast<std::size_t>(i * m + j)]; }
};

// m-parameter map u -> phi(u) into the coordinates of an ambient space
// (embedding coordinates for quadrics). Derivatives of the components are
// taken symbolically once at construction.
class Immersion {
 public:
  Immersion(std::vector<std::string> params, AmbientSpace ambient, std::vector<Expr> components,
            std::vector<Interval> domain, SamplePolicy sampling = {});

  int param_count() const { return static_cast<int>(params_.size()); }
  int coordinate_dim() const { return static_cast<int>(components_.size()); }
  const std::vector<std::string>& params() const { return params_; }
  const AmbientSpace& ambient() const { return ambient_; }
  const std::vector<Expr>& components() const { return components_; }
  const std::vector<Interval>& domain() const { return domain_; }
  const SamplePolicy& sampling() const { return sampling_; }
  void set_sampling(SamplePolicy s) { sampling_ = s; }

  Bindings bind(const Vector& u) const;
  Vector position(const Vector& u) const;
  ImmersionJet jet(const Vector& u) const;
  bool in_domain(const Vector& u) const;

 private:
  std::vector<std::string> params_;
  AmbientSpace ambient_;
  std::vector<Expr> components_;
  std::vector<Interval> domain_;
  SamplePolicy sampling_;
  std::vector<std::vector<Expr>> d1_;               // [k][i]
  std::vector<std::vector<std::vector<Expr>>> d2_;  // [k][i][j], symmetric
};

// Quasi-random (Halton, seeded Cranley-Patterson rotation) interior points of
// the domain box, kept at distance >= margin from the boundary.
std::vector<Vector> sample_points(const Immersion& im, double margin);

// Composes the immersion with u = A w + c. New parameters are named
// `<old>_w`; the new domain is the bounding box of the preimage of the old one.
Immersion affine_reparametrize(const Immersion& im, const Matrix& A, const Vector& c);

}  // namespace biharm
