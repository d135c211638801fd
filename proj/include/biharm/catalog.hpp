#pragma once

// Named fixtures: model-space charts, small and product hypersurfaces of
// pseudo-spheres and pseudo-hyperbolic spaces, compositions of minimal
// immersions, and the four-dimensional classification table.

#include <optional>
#include <string>
#include <vector>

#include "biharm/biharmonic.hpp"

namespace biharm {

// Parametrization of a model quadric in flat coordinates, time-like coordinates first.
struct QuadricChart {
  std::vector<std::string> params;
  std::vector<Expr> components;
  std::vector<Interval> domain;
  int time_like = 0;
};

// S^n_s(r) in R^{n+1}_s:  (r sinh(rho) omega, r cosh(rho) theta), omega in S^{s-1}, theta in S^{n-s}.
// Parameters are named prefix1..prefixn.
QuadricChart pseudo_sphere_chart(int n, int s, double r, const std::string& prefix = "u");
// H^n_s(r) in R^{n+1}_{s+1}:  (r cosh(rho) omega, r sinh(rho) theta), omega in S^s, theta in S^{n-s-1}.
QuadricChart pseudo_hyperbolic_chart(int n, int s, double r, const std::string& prefix = "u");

Immersion build_pseudo_sphere(int n, int s, double r);
Immersion build_pseudo_hyperbolic(int n, int s, double r);

// Sphere: S^n_s(a) x {b} in S^{n+1}_s(1), point (a sigma, b).
// Hyperbolic: H^n_{s-1}(a) x {b} in H^{n+1}_s(1), point (b, a sigma).
// b = sqrt(1 - a^2).
Immersion build_small_hypersurface(QuadricKind kind, int n, int s, double a);

// Sphere: S^p_t(a) x S^q_l(b) in S^{p+q+1}_{t+l}(1).
// Hyperbolic: H^p_t(a) x H^q_l(b) in H^{p+q+1}_{t+l+1}(1).
Immersion build_product_hypersurface(QuadricKind kind, int p, int t, int q, int l, double a, double b);

// Verdict the classification predicts for the fixtures above. Off the 1/sqrt2
// radius these hypersurfaces are still CMC, hence biconservative.
Verdict expected_small_hypersurface_verdict(double a);
Verdict expected_product_verdict(int p, int q, double a, double b);

// Composes an immersion that is minimal in a quadric factor of radius a < 1
// with the slice at height b (sign chosen by `b_sign`): S^n_s(a) x {b} in
// S^{n+1}_s(1) or H^n_{s-1}(a) x {b} in H^{n+1}_s(1).
Immersion compose_minimal(const Immersion& minimal, double b_sign = 1.0);

// (phi, psi) for immersions minimal in factors of radii a, b with a^2 + b^2 = 1.
Immersion compose_minimal_product(const Immersion& first, const Immersion& second);

// Largest |H| of an immersion over its sample points; used to check minimality of factors.
double max_mean_curvature(const Immersion& im);

// Unit normal eta = xi / c of the slice at height b, xi = (x, -a^2/b) in the
// sphere ordering and (-a^2/b, x) in the hyperbolic one, c^2 = a^2 + a^4/b^2.
NormalField slice_unit_normal(const Immersion& composed, double a, double b);
double slice_normal_scale(double a, double b);

struct BuilderParams {
  std::string builder;  // "small", "product", "compose", "compose-product", "equator"
  QuadricKind kind = QuadricKind::Sphere;
  int n = 0;
  int s = 0;
  int p = 0;
  int t = 0;
  int q = 0;
  int l = 0;
  double a = 0.0;
  double b = 0.0;
};

struct CatalogEntry {
  std::string name;     // stable kebab-case key
  std::string title;    // e.g. "S³(1/√2) ⊂ S⁴(1)"
  std::string ambient;  // e.g. "S⁴₁(1)"
  std::string source;   // which family or construction the entry illustrates
  BuilderParams params;
  Immersion immersion;
  Verdict expected;
};

struct ExampleRow {
  std::string ambient;
  std::vector<CatalogEntry> entries;  // empty for flat ambients and H⁴(1)
};

// Proper biharmonic hypersurfaces with at most two principal curvatures in
// four-dimensional space forms of index 0..3, de-duplicated.
std::vector<ExampleRow> example_table();

// Table entries followed by sharpness, minimal, space-like and composition fixtures.
std::vector<CatalogEntry> full_catalog();

const CatalogEntry& find_entry(const std::vector<CatalogEntry>& catalog, std::string_view name);

// "S³₁(1/√2)"-style label of a model quadric.
std::string quadric_label(QuadricKind kind, int n, int s, const std::string& radius);

}  // namespace biharm
