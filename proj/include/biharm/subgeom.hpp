#pragma once

// First- and second-order invariants of an immersion at a parameter point,
// and the normal-bundle calculus (normal connection, normal Laplacian) built
// on finite differences of those pointwise-exact invariants.
//
// Conventions: traces are contractions with g^{ij}; B is normal-valued in
// ambient coordinates; in quadric ambients the normal bundle lies inside the
// quadric's tangent space, so B, H and A are the space-form quantities.

#include <functional>
#include <string>
#include <vector>

#include "biharm/ambient.hpp"
#include "biharm/frames.hpp"
#include "biharm/immersion.hpp"

namespace biharm {

struct Frame {
  Matrix vectors;  // N x r, columns are ambient vectors
  Vector signs;    // <e_a, e_b> = signs[a] delta_ab
  std::vector<int> pivots;

  int size() const { return static_cast<int>(vectors.cols()); }
};

struct PointGeometry {
  Vector u;
  Vector position;
  Matrix jacobian;        // N x m
  Matrix ambient_metric;  // N x N at position
  Matrix g;               // induced metric
  Matrix g_inv;
  Signature signature;
  std::vector<Vector> hessian;  // [i*m+j] ambient covariant Hessian, not projected
  std::vector<Vector> B;        // [i*m+j] second fundamental form
  Vector H;
  double H_sq = 0.0;                     // <H, H>
  std::vector<Matrix> induced_christoffel;  // [k](i, j) = Gamma^k_ij of g, from metric derivatives
  std::vector<Matrix> ambient_christoffel;  // chart ambients only, [c](a, b)
  Frame tangent_frame;
  Frame normal_frame;
  Matrix tangent_projector;  // N x N, J g^{-1} J^T G
  bool on_quadric = false;    // normal bundle excludes the position direction

  int m() const { return static_cast<int>(jacobian.cols()); }
  int n_coords() const { return static_cast<int>(jacobian.rows()); }
  const Vector& b(int i, int j) const { return B[static_cast<std::size_t>(i * m() + j)]; }

  double inner(const Vector& a, const Vector& c) const { return a.dot(ambient_metric * c); }
  // Component of v orthogonal to the tangent space (and, for quadrics, to the position).
  Vector normal_part(const Vector& v) const;
  // Coordinates (in the basis d_i phi) of the tangential component of v.
  Vector tangent_coordinates(const Vector& v) const;
  Vector tangent_part(const Vector& v) const { return jacobian * tangent_coordinates(v); }
  // Ambient covariant derivative along d_i of a vector field with value V and
  // coordinate derivative dV at this point.
  Vector covariant_derivative(int i, const Vector& dV, const Vector& V) const;
  // A_eta as a matrix acting on coordinate tangent vectors: (A)^k_i = g^{kl} <B_il, eta>.
  Matrix shape_operator(const Vector& eta) const;
  // |B|^2 = |g^{ik} g^{jl} <B_ij, B_kl>|
  double B_norm_sq() const;
};

struct FdOptions {
  double step = 1e-3;
};

using Diagnostics = std::vector<std::string>;

PointGeometry point_geometry(const Immersion& im, const Vector& u);

// Orthonormal tangent and normal frames with frame signs.
std::pair<Frame, Frame> orthonormal_frames(const PointGeometry& pg);

// Normal-vector-valued field along the immersion, evaluated at arbitrary parameter points.
using NormalField = std::function<Vector(const Vector& u)>;

// Moves u inward so the nested stencils (reach 4h) stay in the domain box.
// Records a diagnostic when a shift happens.
Vector stencil_safe_point(const Immersion& im, const Vector& u, const FdOptions& fd, Diagnostics* diag);

// nabla^perp_i field for every coordinate direction i, by Richardson-extrapolated
// central differences.
std::vector<Vector> normal_connection(const Immersion& im, const Vector& u, const NormalField& field,
                                      const FdOptions& fd = {}, Diagnostics* diag = nullptr);

// Normal connection of the mean curvature field.
std::vector<Vector> normal_connection_H(const Immersion& im, const Vector& u, const FdOptions& fd = {},
                                        Diagnostics* diag = nullptr);

// Delta^perp H = -g^{ij}(nabla^perp_i nabla^perp_j H - Gamma^k_ij nabla^perp_k H).
Vector normal_laplacian(const Immersion& im, const Vector& u, const FdOptions& fd = {},
                        Diagnostics* diag = nullptr);

// Trace of the covariant Hessian of phi computed without any normal
// projection: g^{ij}(nabla dphi(d_i, d_j) - Gamma^k_ij d_k phi). Equals m H.
Vector tension_field(const PointGeometry& pg);

// Max over (i, j, k) of |(nabla_i B)(j, k) - (nabla_j B)(i, k)| normalized by max(1, |B|^2).
double codazzi_defect(const Immersion& im, const Vector& u, const FdOptions& fd = {});

// Centered first derivative along coordinate i with one Richardson step (O(h^4)).
Vector richardson_derivative(const std::function<Vector(const Vector&)>& f, const Vector& u, int i, double h);

// Mean curvature together with its first and second normal derivatives at one point.
struct MeanCurvatureDerivatives {
  PointGeometry pg;
  std::vector<Vector> nabla_H;  // nabla^perp_i H
  Vector laplacian_H;           // Delta^perp H
};

MeanCurvatureDerivatives mean_curvature_derivatives(const Immersion& im, const Vector& u, const FdOptions& fd = {},
                                                    Diagnostics* diag = nullptr);

}  // namespace biharm
