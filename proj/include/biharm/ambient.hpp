#pragma once

// Ambient pseudo-Riemannian spaces: flat R^n_s, quadric space forms
// S^n_s(r) in R^{n+1}_s and H^n_s(r) in R^{n+1}_{s+1}, and general metric
// charts. Time-like coordinates come first in every flat model.

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "biharm/expr.hpp"

namespace biharm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct Signature {
  int neg = 0;  // time-like directions
  int pos = 0;  // space-like directions

  int dim() const { return neg + pos; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

struct FlatSpace {
  int dim = 0;
  int index = 0;
};

enum class QuadricKind { Sphere, Hyperbolic };

struct QuadricSpace {
  QuadricKind kind = QuadricKind::Sphere;
  int dim = 0;    // intrinsic dimension n
  int index = 0;  // intrinsic index s
  double radius = 1.0;

  // Sectional curvature: +1/r^2 for the pseudo-sphere, -1/r^2 for the pseudo-hyperbolic space.
  double curvature() const;
  int embedding_dim() const { return dim + 1; }
  int embedding_index() const { return kind == QuadricKind::Sphere ? index : index + 1; }
  // <x,x> on the quadric: r^2 or -r^2.
  double level() const;
};

// Metric h_{ab}(y) given by expressions in the chart coordinates. First and
// second partial derivatives of h are prepared symbolically at construction.
class ChartSpace {
 public:
  ChartSpace(std::vector<std::string> coords, std::vector<std::vector<Expr>> metric);

  int dim() const { return static_cast<int>(coords_.size()); }
  const std::vector<std::string>& coords() const { return coords_; }
  const Expr& metric_expr(int a, int b) const { return metric_[a][b]; }

  Matrix metric(const Vector& y) const;
  // d_c h_{ab}, indexed [c](a, b).
  std::vector<Matrix> metric_derivative(const Vector& y) const;
  // d_c d_d h_{ab}, indexed [c][d](a, b).
  std::vector<std::vector<Matrix>> metric_second_derivative(const Vector& y) const;

 private:
  Bindings bind(const Vector& y) const;

  std::vector<std::string> coords_;
  std::vector<std::vector<Expr>> metric_;
  std::vector<std::vector<std::vector<Expr>>> d1_;               // [c][a][b]
  std::vector<std::vector<std::vector<std::vector<Expr>>>> d2_;  // [c][d][a][b]
};

class AmbientSpace {
 public:
  AmbientSpace(FlatSpace flat);        // NOLINT(google-explicit-constructor)
  AmbientSpace(QuadricSpace quadric);  // NOLINT(google-explicit-constructor)
  AmbientSpace(ChartSpace chart);      // NOLINT(google-explicit-constructor)

  static AmbientSpace flat(int dim, int index);
  static AmbientSpace sphere(int dim, int index, double radius);
  static AmbientSpace hyperbolic(int dim, int index, double radius);
  // Unified space form N^n_s(C): flat, pseudo-sphere or pseudo-hyperbolic.
  static AmbientSpace space_form(int dim, int index, double curvature);

  const FlatSpace* as_flat() const { return std::get_if<FlatSpace>(&model_); }
  const QuadricSpace* as_quadric() const { return std::get_if<QuadricSpace>(&model_); }
  const ChartSpace* as_chart() const { return std::get_if<ChartSpace>(&model_); }

  // Intrinsic dimension n.
  int dim() const;
  // Number of coordinates of an ambient point or vector (n+1 for quadrics).
  int coordinate_dim() const;
  // True for flat spaces and quadrics.
  bool is_space_form() const { return as_chart() == nullptr; }
  double curvature() const;  // constant sectional curvature; space forms only
  Signature signature() const;

  // Coordinate metric matrix at `at` (constant diagonal for flat models).
  Matrix metric(const Vector& at) const;

  std::string describe() const;

 private:
  std::variant<FlatSpace, QuadricSpace, ChartSpace> model_;
};

// Diagonal sign pattern of R^n_s: first `index` entries are -1.
Vector flat_signs(int dim, int index);

double inner(const Vector& a, const Vector& b, const AmbientSpace& amb, const Vector& at = Vector());

double quadric_residual(const Vector& x, const QuadricSpace& q);

// Gamma^c_{ab} indexed [c](a, b).
std::vector<Matrix> christoffel(const ChartSpace& chart, const Vector& y);

// dGamma: [e][c](a, b) = d_e Gamma^c_{ab}.
std::vector<std::vector<Matrix>> christoffel_derivative(const ChartSpace& chart, const Vector& y);

// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z in chart coordinates.
Vector riemann(const ChartSpace& chart, const Vector& y, const Vector& X, const Vector& Y, const Vector& Z);

// Constant-curvature tensor R(X,Y)Z = C(<Y,Z>X - <X,Z>Y).
Vector spaceform_curvature(double C, const Vector& X, const Vector& Y, const Vector& Z,
                           const AmbientSpace& amb, const Vector& at);

// Curvature operator of any ambient model; charts use riemann(), space forms
// use spaceform_curvature().
Vector curvature(const AmbientSpace& amb, const Vector& at, const Vector& X, const Vector& Y,
                 const Vector& Z);

struct RicciValue {
  double scalar = 0.0;  // Ric(xi, xi)
  Vector vector;        // Ric(xi), defined by <Ric(xi), W> = Ric(xi, W)
};

RicciValue ricci_operator(const AmbientSpace& amb, const Vector& at, const Vector& xi);

// Throws DegenerateMetric unless |det h| exceeds 1e-10 times the product of the row norms.
void require_nondegenerate(const Matrix& h, const std::string& where);

}  // namespace biharm
