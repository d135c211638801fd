#pragma once

// Bitension residuals of an immersion into a pseudo-Riemannian manifold, the
// hypersurface specializations, pointwise/immersion verdicts and the
// two-principal-curvature classification algebra.

#include <boost/rational.hpp>
#include <optional>
#include <string>
#include <vector>

#include "biharm/subgeom.hpp"

namespace biharm {

enum class Verdict { Minimal, ProperBiharmonic, Biconservative, NotBiharmonic };

std::string_view to_string(Verdict v);
// Accepts "minimal", "proper-biharmonic", "biconservative", "not-biharmonic"
// (case-insensitive, '_' and '-' interchangeable).
std::optional<Verdict> parse_verdict(std::string_view text);

struct Residual {
  Vector normal;      // ambient coordinates
  Vector tangential;  // ambient coordinates
  Vector tangential_coords;  // in the basis d_i phi
};

// Pieces of the bitension system at one point, with the mean-curvature data used.
struct BitensionTerms {
  MeanCurvatureDerivatives md;
  Vector laplacian;        // Delta^perp H
  Vector shape_trace;      // g^{ij} B(A_H d_i, d_j)
  Vector curvature_normal;
  Vector connection_trace;  // coordinates of g^{ij} A_{nabla_i H} d_j
  Vector grad_H_sq;         // coordinates of grad <H, H>
  Vector curvature_tangential;  // ambient
  Residual residual;
};

BitensionTerms bitension_terms(const Immersion& im, const Vector& u, const FdOptions& fd = {},
                               Diagnostics* diag = nullptr);

// Normal part:   Delta^perp H + trace B(A_H ., .) + (trace R(dphi, H) dphi)^perp
// Tangential:    trace A_{nabla^perp H} + (m/4) grad <H, H> + (trace R(dphi, H) dphi)^T
Residual bitension_residual(const Immersion& im, const Vector& u, const FdOptions& fd = {},
                            Diagnostics* diag = nullptr);

// tau_2 = -Delta^phi tau - trace R(dphi, tau) dphi from nested finite differences
// of tau = m H, without the normal/tangential decomposition. Independent of
// bitension_residual: tau_2^perp = -m * normal and tau_2^T = -2m * tangential.
Vector bitension_field(const Immersion& im, const Vector& u, const FdOptions& fd = {});

// Algebraic data entering the hypersurface equations at one point.
struct HypersurfaceTerms {
  int m = 0;
  double epsilon = 1.0;  // <xi, xi>
  double f = 0.0;        // H = f xi
  double laplacian_f = 0.0;  // g^{ij}(d_i d_j f - Gamma^k_ij d_k f)
  Matrix A;              // A_xi on coordinate tangent vectors
  Vector grad_f;         // coordinates
  double ricci_xi = 0.0;  // Ric(xi, xi)
  Vector ricci_tangent;   // coordinates of Ric(xi)^T
};

// Term-by-term evaluation:
//   scalar = laplacian - eps f |A|^2 + eps f Ric(xi, xi)
//   vector = A grad f + eps (m/2) f grad f - f Ric(xi)^T
struct HypersurfaceEquations {
  double laplacian_term = 0.0;
  double shape_term = 0.0;
  double ricci_term = 0.0;
  Vector shape_gradient_term;
  Vector gradient_term;
  Vector ricci_gradient_term;

  double scalar() const { return laplacian_term + shape_term + ricci_term; }
  Vector vector() const { return shape_gradient_term + gradient_term + ricci_gradient_term; }
};

HypersurfaceEquations hypersurface_equations(const HypersurfaceTerms& t);

// Terms for a hypersurface of a space form of curvature C: Ric(xi, xi) = m C eps, Ric(xi)^T = 0.
HypersurfaceTerms spaceform_hypersurface_terms(int m, double epsilon, double C, double f, double laplacian_f,
                                               const Matrix& A, const Vector& grad_f);

struct HypersurfaceResidual {
  HypersurfaceTerms terms;
  double scalar = 0.0;
  Vector tangential;  // ambient coordinates
  Vector xi;          // unit normal used
};

HypersurfaceResidual hypersurface_residual(const Immersion& im, const Vector& u, const FdOptions& fd = {},
                                           Diagnostics* diag = nullptr);

// The space-like case of hypersurface_residual: requires signature (0, m) and <xi, xi> = -1.
HypersurfaceResidual spacelike_residual(const Immersion& im, const Vector& u, const FdOptions& fd = {},
                                        Diagnostics* diag = nullptr);

// Frobenius norm of A_H - <H,H> I written in an orthonormal tangent frame,
// normalized by max(1, |<H,H>|).
double pseudo_umbilical_residual(const PointGeometry& pg);

struct CheckOptions {
  FdOptions fd;
  double tol_res = 1e-6;
  double tol_h = 1e-3;
  int threads = 0;  // 0: hardware concurrency
};

struct SampleRecord {
  Vector u;
  bool valid = false;
  std::string error;
  Vector normal;
  Vector tangential;
  double normal_norm = 0.0;
  double tangential_norm = 0.0;
  double scale = 1.0;  // max(1, |<H,H>|, |B|^2)
  double normal_normalized = 0.0;
  double tangential_normalized = 0.0;
  double H_norm = 0.0;       // Euclidean norm of the coordinates of H
  double H_length = 0.0;     // sqrt|<H, H>|
  double H_sq = 0.0;         // <H, H>
  double grad_H_sq_norm = 0.0;
  double pseudo_umbilical = 0.0;
};

struct BiharmonicReport {
  std::string ambient;
  int m = 0;
  int samples_requested = 0;
  std::uint64_t seed = 0;
  CheckOptions options;
  std::vector<SampleRecord> samples;
  Diagnostics diagnostics;

  int valid_count = 0;
  double max_normal = 0.0;  // normalized
  double max_tangential = 0.0;
  double max_normal_raw = 0.0;
  double max_tangential_raw = 0.0;
  double max_H = 0.0;
  double min_H = 0.0;
  double H_sq_spread = 0.0;
  double max_pseudo_umbilical = 0.0;
  double max_grad_H_sq = 0.0;
  Verdict verdict = Verdict::NotBiharmonic;
};

// Minimal if max|H| < tol_h; else ProperBiharmonic if both residuals are below
// tol_res; else Biconservative if the tangential one is; else NotBiharmonic.
Verdict classify_verdict(const std::vector<SampleRecord>& samples, double tol_res = 1e-6, double tol_h = 1e-3);

SampleRecord evaluate_sample(const Immersion& im, const Vector& u, const CheckOptions& opt,
                             Diagnostics* diag = nullptr);

// Evaluates every sample point of the immersion's sampling policy concurrently.
BiharmonicReport check_immersion(const Immersion& im, const CheckOptions& opt = {});

using Rational = boost::rational<long long>;

struct ClassificationResult {
  int n = 0;
  int p = 0;
  Rational C;
  Rational C1;
  Rational C2;
  bool admissible = false;
  std::string reason;
  std::vector<Rational> roots;  // roots of the quadratic in C1, before the inequality filter
};

// Solves 1/C1 + 1/C2 = 1/C, p C1 + (n-p) C2 = 2nC exactly and filters by
// p^2 C1 + (n-p)^2 C2 != n^2 C.
ClassificationResult classify_two_curvature(int n, int p, Rational C);

std::string to_string(const Rational& r);
// "3", "-1", "3/2"; throws InvalidRange on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

}  // namespace biharm
