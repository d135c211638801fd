#include "biharm/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "biharm/error.hpp"

namespace biharm {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const Interval kAngle{0.4, 1.3};
const Interval kRapidity{0.2, 1.0};

// Unit vector in R^k from k-1 hyperspherical angles.
std::vector<Expr> unit_vector(const std::vector<Expr>& angles) {
  const std::size_t k = angles.size() + 1;
  std::vector<Expr> out;
  Expr prefix(1.0);
  for (std::size_t j = 0; j + 1 < k; ++j) {
    out.push_back(prefix * cos(angles[j]));
    prefix = prefix * sin(angles[j]);
  }
  out.push_back(prefix);
  return out;
}

struct ParamPool {
  std::string prefix;
  QuadricChart* chart;

  Expr next(Interval domain) {
    const std::string name = prefix + std::to_string(chart->params.size() + 1);
    chart->params.push_back(name);
    chart->domain.push_back(domain);
    return Expr::variable(name);
  }
  std::vector<Expr> angles(int count) {
    std::vector<Expr> out;
    for (int i = 0; i < count; ++i) out.push_back(next(kAngle));
    return out;
  }
};

void require_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::InvalidRadius, "radius must be positive");
}

bool near(double x, double y) { return std::abs(x - y) < 1e-12; }

std::string superscript(int v) {
  static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string s;
  for (char c : std::to_string(v)) s += digits[c - '0'];
  return s;
}

std::string subscript(int v) {
  static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::string s;
  for (char c : std::to_string(v)) s += digits[c - '0'];
  return s;
}

std::string radius_label(double r) {
  if (near(r, kInvSqrt2)) return "1/√2";
  if (near(r, 1.0)) return "1";
  std::string s = std::to_string(r);
  s.erase(s.find_last_not_of('0') + 1);
  if (s.back() == '.') s.pop_back();
  return s;
}

std::string radius_key(double r) {
  if (near(r, kInvSqrt2)) return "1over-sqrt2";
  std::string s = radius_label(r);
  std::replace(s.begin(), s.end(), '.', 'p');
  return s;
}

std::string key(QuadricKind kind, int n, int s) {
  return std::string(kind == QuadricKind::Sphere ? "s" : "h") + std::to_string(n) +
         (s > 0 ? "i" + std::to_string(s) : "");
}

// Splits chart components into time-like and space-like parts.
std::pair<std::vector<Expr>, std::vector<Expr>> split(const std::vector<Expr>& comps, int time_like) {
  return {std::vector<Expr>(comps.begin(), comps.begin() + time_like),
          std::vector<Expr>(comps.begin() + time_like, comps.end())};
}

std::vector<Expr> scaled(const std::vector<Expr>& v, const Expr& by) {
  std::vector<Expr> out;
  for (const auto& e : v) out.push_back(by * e);
  return out;
}

const QuadricSpace& factor_quadric(const Immersion& im) {
  const auto* q = im.ambient().as_quadric();
  if (q == nullptr) throw Error(ErrorCode::DimensionMismatch, "composition needs an immersion into a quadric");
  return *q;
}

void require_minimal(const Immersion& im) {
  const double h = max_mean_curvature(im);
  if (h >= 1e-8) {
    throw Error(ErrorCode::NotMinimalInput, "factor immersion has |H| up to " + std::to_string(h));
  }
}

}  // namespace

std::string quadric_label(QuadricKind kind, int n, int s, const std::string& radius) {
  return std::string(kind == QuadricKind::Sphere ? "S" : "H") + superscript(n) + (s > 0 ? subscript(s) : "") + "(" +
         radius + ")";
}

QuadricChart pseudo_sphere_chart(int n, int s, double r, const std::string& prefix) {
  if (n < 1 || s < 0 || s > n) throw Error(ErrorCode::InvalidRange, "pseudo-sphere needs 0 <= s <= n, n >= 1");
  require_radius(r);
  QuadricChart chart;
  chart.time_like = s;
  ParamPool pool{prefix, &chart};
  if (s == 0) {
    chart.components = scaled(unit_vector(pool.angles(n)), Expr(r));
    return chart;
  }
  const Expr rho = pool.next(kRapidity);
  const std::vector<Expr> omega = unit_vector(pool.angles(s - 1));
  const std::vector<Expr> theta = unit_vector(pool.angles(n - s));
  chart.components = scaled(omega, r * sinh(rho));
  for (const auto& e : scaled(theta, r * cosh(rho))) chart.components.push_back(e);
  return chart;
}

QuadricChart pseudo_hyperbolic_chart(int n, int s, double r, const std::string& prefix) {
  if (n < 1 || s < 0 || s > n) throw Error(ErrorCode::InvalidRange, "pseudo-hyperbolic space needs 0 <= s <= n, n >= 1");
  require_radius(r);
  QuadricChart chart;
  chart.time_like = s + 1;
  ParamPool pool{prefix, &chart};
  if (s == n) {
    chart.components = scaled(unit_vector(pool.angles(n)), Expr(r));
    return chart;
  }
  const Expr rho = pool.next(kRapidity);
  const std::vector<Expr> omega = unit_vector(pool.angles(s));
  const std::vector<Expr> theta = unit_vector(pool.angles(n - s - 1));
  chart.components = scaled(omega, r * cosh(rho));
  for (const auto& e : scaled(theta, r * sinh(rho))) chart.components.push_back(e);
  return chart;
}

Immersion build_pseudo_sphere(int n, int s, double r) {
  QuadricChart c = pseudo_sphere_chart(n, s, r);
  return Immersion(c.params, AmbientSpace::flat(n + 1, s), c.components, c.domain);
}

Immersion build_pseudo_hyperbolic(int n, int s, double r) {
  QuadricChart c = pseudo_hyperbolic_chart(n, s, r);
  return Immersion(c.params, AmbientSpace::flat(n + 1, s + 1), c.components, c.domain);
}

Immersion build_small_hypersurface(QuadricKind kind, int n, int s, double a) {
  if (!(a > 0.0 && a < 1.0)) throw Error(ErrorCode::InvalidRadius, "small hypersurface radius must lie in (0, 1)");
  const double b = std::sqrt(1.0 - a * a);
  if (kind == QuadricKind::Sphere) {
    QuadricChart c = pseudo_sphere_chart(n, s, a);
    c.components.emplace_back(b);
    return Immersion(c.params, AmbientSpace::sphere(n + 1, s, 1.0), c.components, c.domain);
  }
  if (s < 1) throw Error(ErrorCode::UnsupportedSignature, "H^n_{s-1}(a) needs s >= 1");
  QuadricChart c = pseudo_hyperbolic_chart(n, s - 1, a);
  std::vector<Expr> comps{Expr(b)};
  comps.insert(comps.end(), c.components.begin(), c.components.end());
  return Immersion(c.params, AmbientSpace::hyperbolic(n + 1, s, 1.0), comps, c.domain);
}

Immersion build_product_hypersurface(QuadricKind kind, int p, int t, int q, int l, double a, double b) {
  require_radius(a);
  require_radius(b);
  if (std::abs(a * a + b * b - 1.0) > 1e-12) throw Error(ErrorCode::InvalidRadius, "product radii need a^2 + b^2 = 1");
  const bool sphere = kind == QuadricKind::Sphere;
  const QuadricChart c1 = sphere ? pseudo_sphere_chart(p, t, a, "u") : pseudo_hyperbolic_chart(p, t, a, "u");
  const QuadricChart c2 = sphere ? pseudo_sphere_chart(q, l, b, "v") : pseudo_hyperbolic_chart(q, l, b, "v");
  const auto [time1, space1] = split(c1.components, c1.time_like);
  const auto [time2, space2] = split(c2.components, c2.time_like);
  std::vector<Expr> comps;
  for (const auto* part : {&time1, &time2, &space1, &space2}) comps.insert(comps.end(), part->begin(), part->end());
  std::vector<std::string> params = c1.params;
  params.insert(params.end(), c2.params.begin(), c2.params.end());
  std::vector<Interval> domain = c1.domain;
  domain.insert(domain.end(), c2.domain.begin(), c2.domain.end());
  const int n = p + q;
  const AmbientSpace amb = sphere ? AmbientSpace::sphere(n + 1, t + l, 1.0) : AmbientSpace::hyperbolic(n + 1, t + l + 1, 1.0);
  return Immersion(params, amb, comps, domain);
}

Verdict expected_small_hypersurface_verdict(double a) {
  // Constant mean curvature keeps the tangential part zero at every radius.
  return near(a, kInvSqrt2) ? Verdict::ProperBiharmonic : Verdict::Biconservative;
}

Verdict expected_product_verdict(int p, int q, double a, double b) {
  if (near(a, kInvSqrt2) && near(b, kInvSqrt2)) return p == q ? Verdict::Minimal : Verdict::ProperBiharmonic;
  return Verdict::Biconservative;
}

double max_mean_curvature(const Immersion& im) {
  double worst = 0.0;
  for (const Vector& u : sample_points(im, 0.0)) worst = std::max(worst, point_geometry(im, u).H.norm());
  return worst;
}

Immersion compose_minimal(const Immersion& minimal, double b_sign) {
  const QuadricSpace& f = factor_quadric(minimal);
  const double a = f.radius;
  if (!(a > 0.0 && a < 1.0)) throw Error(ErrorCode::InvalidRadius, "factor radius must lie in (0, 1)");
  require_minimal(minimal);
  const double b = (b_sign < 0.0 ? -1.0 : 1.0) * std::sqrt(1.0 - a * a);
  std::vector<Expr> comps = minimal.components();
  if (f.kind == QuadricKind::Sphere) {
    comps.emplace_back(b);
    return Immersion(minimal.params(), AmbientSpace::sphere(f.dim + 1, f.index, 1.0), comps, minimal.domain(),
                     minimal.sampling());
  }
  comps.insert(comps.begin(), Expr(b));
  return Immersion(minimal.params(), AmbientSpace::hyperbolic(f.dim + 1, f.index + 1, 1.0), comps, minimal.domain(),
                   minimal.sampling());
}

Immersion compose_minimal_product(const Immersion& first, const Immersion& second) {
  const QuadricSpace& f1 = factor_quadric(first);
  const QuadricSpace& f2 = factor_quadric(second);
  if (f1.kind != f2.kind) throw Error(ErrorCode::DimensionMismatch, "product factors must be of the same kind");
  if (std::abs(f1.radius * f1.radius + f2.radius * f2.radius - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidRadius, "factor radii need a^2 + b^2 = 1");
  }
  std::set<std::string> names(first.params().begin(), first.params().end());
  for (const auto& p : second.params()) {
    if (!names.insert(p).second) throw Error(ErrorCode::DimensionMismatch, "parameter '" + p + "' used by both factors");
  }
  require_minimal(first);
  require_minimal(second);
  const auto [time1, space1] = split(first.components(), f1.embedding_index());
  const auto [time2, space2] = split(second.components(), f2.embedding_index());
  std::vector<Expr> comps;
  for (const auto* part : {&time1, &time2, &space1, &space2}) comps.insert(comps.end(), part->begin(), part->end());
  std::vector<std::string> params = first.params();
  params.insert(params.end(), second.params().begin(), second.params().end());
  std::vector<Interval> domain = first.domain();
  domain.insert(domain.end(), second.domain().begin(), second.domain().end());
  const int n = f1.dim + f2.dim;
  const AmbientSpace amb = f1.kind == QuadricKind::Sphere ? AmbientSpace::sphere(n + 1, f1.index + f2.index, 1.0)
                                                          : AmbientSpace::hyperbolic(n + 1, f1.index + f2.index + 1, 1.0);
  return Immersion(params, amb, comps, domain, first.sampling());
}

double slice_normal_scale(double a, double b) { return std::sqrt(a * a + a * a * a * a / (b * b)); }

NormalField slice_unit_normal(const Immersion& composed, double a, double b) {
  const auto* q = composed.ambient().as_quadric();
  if (q == nullptr) throw Error(ErrorCode::DimensionMismatch, "slice normal needs a quadric ambient");
  const bool sphere = q->kind == QuadricKind::Sphere;
  const double c = slice_normal_scale(a, b);
  return [composed, sphere, a, b, c](const Vector& u) {
    Vector xi = composed.position(u);
    xi[sphere ? xi.size() - 1 : 0] = -a * a / b;
    return Vector(xi / c);
  };
}

// ---------------------------------------------------------------------------

namespace {

CatalogEntry small_entry(QuadricKind kind, int n, int s, double a, std::string source) {
  CatalogEntry e{.name = "",
                 .title = "",
                 .ambient = "",
                 .source = std::move(source),
                 .params = {},
                 .immersion = build_small_hypersurface(kind, n, s, a),
                 .expected = expected_small_hypersurface_verdict(a)};
  const int fs = kind == QuadricKind::Sphere ? s : s - 1;
  e.name = key(kind, n, fs) + "-" + radius_key(a) + "-in-" + key(kind, n + 1, s);
  e.ambient = quadric_label(kind, n + 1, s, "1");
  e.title = quadric_label(kind, n, fs, radius_label(a)) + " ⊂ " + e.ambient;
  e.params = {.builder = "small", .kind = kind, .n = n, .s = s, .a = a, .b = std::sqrt(1.0 - a * a)};
  return e;
}

CatalogEntry product_entry(QuadricKind kind, int p, int t, int q, int l, double a, double b, std::string source) {
  CatalogEntry e{.name = "",
                 .title = "",
                 .ambient = "",
                 .source = std::move(source),
                 .params = {},
                 .immersion = build_product_hypersurface(kind, p, t, q, l, a, b),
                 .expected = expected_product_verdict(p, q, a, b)};
  const int n = p + q;
  const int s = kind == QuadricKind::Sphere ? t + l : t + l + 1;
  const std::string r = near(a, b) ? radius_key(a) : radius_key(a) + "-" + radius_key(b);
  e.name = key(kind, p, t) + "x" + key(kind, q, l) + "-" + r + "-in-" + key(kind, n + 1, s);
  e.ambient = quadric_label(kind, n + 1, s, "1");
  e.title = quadric_label(kind, p, t, radius_label(a)) + "×" + quadric_label(kind, q, l, radius_label(b)) + " ⊂ " +
            e.ambient;
  e.params = {.builder = "product", .kind = kind, .n = n, .s = s, .p = p, .t = t, .q = q, .l = l, .a = a, .b = b};
  return e;
}

// Curve through a quadric factor of radius a: great circle or geodesic, tilted by a fixed angle.
Immersion factor_geodesic(QuadricKind kind, double a, const std::string& param) {
  const Expr x = Expr::variable(param);
  const double tilt = 0.3;
  std::vector<Expr> comps;
  if (kind == QuadricKind::Sphere) {
    comps = {a * cos(x), a * std::cos(tilt) * sin(x), a * std::sin(tilt) * sin(x)};
    return Immersion({param}, AmbientSpace::sphere(2, 0, a), comps, {kAngle});
  }
  comps = {a * cosh(x), a * std::cos(tilt) * sinh(x), a * std::sin(tilt) * sinh(x)};
  return Immersion({param}, AmbientSpace::hyperbolic(2, 0, a), comps, {kRapidity});
}

// The whole factor H^1(a) or S^1(a), identity chart.
Immersion factor_line(QuadricKind kind, double a, const std::string& param) {
  const Expr x = Expr::variable(param);
  if (kind == QuadricKind::Sphere) return Immersion({param}, AmbientSpace::sphere(1, 0, a), {a * cos(x), a * sin(x)}, {kAngle});
  return Immersion({param}, AmbientSpace::hyperbolic(1, 0, a), {a * cosh(x), a * sinh(x)}, {kRapidity});
}

// Identity chart of a whole quadric factor.
Immersion factor_identity(QuadricKind kind, int n, int s, double a, const std::string& prefix) {
  const QuadricChart c = kind == QuadricKind::Sphere ? pseudo_sphere_chart(n, s, a, prefix)
                                                     : pseudo_hyperbolic_chart(n, s, a, prefix);
  const AmbientSpace amb = kind == QuadricKind::Sphere ? AmbientSpace::sphere(n, s, a) : AmbientSpace::hyperbolic(n, s, a);
  return Immersion(c.params, amb, c.components, c.domain);
}

}  // namespace

std::vector<ExampleRow> example_table() {
  using K = QuadricKind;
  const double r = kInvSqrt2;
  const std::string sph = "small hypersurface of a pseudo-sphere";
  const std::string hyp = "small hypersurface of a pseudo-hyperbolic space";
  const std::string sprod = "product of pseudo-spheres";
  const std::string hprod = "product of pseudo-hyperbolic spaces";

  std::vector<ExampleRow> rows;
  rows.push_back({"R⁴", {}});
  rows.push_back({"H⁴(1)", {}});
  rows.push_back({"S⁴(1)", {small_entry(K::Sphere, 3, 0, r, sph), product_entry(K::Sphere, 1, 0, 2, 0, r, r, sprod)}});
  rows.push_back({"R⁴₁", {}});
  rows.push_back({"S⁴₁(1)",
                  {small_entry(K::Sphere, 3, 1, r, sph), product_entry(K::Sphere, 1, 0, 2, 1, r, r, sprod),
                   product_entry(K::Sphere, 1, 1, 2, 0, r, r, sprod)}});
  // The H¹×H² family is listed twice for this ambient; kept once.
  rows.push_back({"H⁴₁(1)", {small_entry(K::Hyperbolic, 3, 1, r, hyp), product_entry(K::Hyperbolic, 1, 0, 2, 0, r, r, hprod)}});
  rows.push_back({"R⁴₂", {}});
  // S¹₁×S²₁ is listed twice for this ambient; kept once.
  rows.push_back({"S⁴₂(1)", {small_entry(K::Sphere, 3, 2, r, sph), product_entry(K::Sphere, 1, 1, 2, 1, r, r, sprod)}});
  rows.push_back({"H⁴₂(1)",
                  {small_entry(K::Hyperbolic, 3, 2, r, hyp), product_entry(K::Hyperbolic, 1, 0, 2, 1, r, r, hprod),
                   product_entry(K::Hyperbolic, 1, 1, 2, 0, r, r, hprod)}});
  rows.push_back({"R⁴₃", {}});
  rows.push_back({"S⁴₃(1)", {small_entry(K::Sphere, 3, 3, r, sph), product_entry(K::Sphere, 1, 1, 2, 2, r, r, sprod)}});
  rows.push_back({"H⁴₃(1)",
                  {small_entry(K::Hyperbolic, 3, 3, r, hyp), product_entry(K::Hyperbolic, 1, 0, 2, 2, r, r, hprod),
                   product_entry(K::Hyperbolic, 1, 1, 2, 1, r, r, hprod)}});
  return rows;
}

std::vector<CatalogEntry> full_catalog() {
  using K = QuadricKind;
  const double r = kInvSqrt2;
  std::vector<CatalogEntry> out;
  for (auto& row : example_table()) {
    for (auto& e : row.entries) out.push_back(std::move(e));
  }

  out.push_back(small_entry(K::Sphere, 2, 0, r, "small hypersurface of a pseudo-sphere"));
  out.push_back(small_entry(K::Sphere, 3, 0, 0.8, "off-radius small sphere"));
  out.push_back(small_entry(K::Sphere, 3, 0, 0.6, "off-radius small sphere"));
  out.push_back(product_entry(K::Sphere, 1, 0, 1, 0, r, r, "equal-split product"));
  out.push_back(product_entry(K::Sphere, 2, 0, 2, 0, r, r, "equal-split product"));

  {
    CatalogEntry e = small_entry(K::Hyperbolic, 2, 1, r, "space-like hypersurface of anti-de Sitter space");
    e.name = "h2-in-h3-anti-de-sitter";
    out.push_back(std::move(e));
  }
  {
    // Totally geodesic S²(1) at time 0 in de Sitter space S³₁(1).
    const QuadricChart c = pseudo_sphere_chart(2, 0, 1.0);
    std::vector<Expr> comps{Expr(0.0)};
    comps.insert(comps.end(), c.components.begin(), c.components.end());
    out.push_back({.name = "s2-equator-in-s3i1",
                   .title = "S²(1) ⊂ S³₁(1)",
                   .ambient = "S³₁(1)",
                   .source = "maximal space-like hypersurface of de Sitter space",
                   .params = {.builder = "equator", .kind = K::Sphere, .n = 2, .s = 1, .a = 1.0},
                   .immersion = Immersion(c.params, AmbientSpace::sphere(3, 1, 1.0), comps, c.domain),
                   .expected = Verdict::Minimal});
  }
  out.push_back({.name = "h1-geodesic-via-h2-into-h3i1",
                 .title = "geodesic of H²(1/√2) ⊂ H³₁(1)",
                 .ambient = "H³₁(1)",
                 .source = "minimal immersion into a hyperbolic slice",
                 .params = {.builder = "compose", .kind = K::Hyperbolic, .n = 2, .s = 1, .a = r, .b = r},
                 .immersion = compose_minimal(factor_geodesic(K::Hyperbolic, r, "t")),
                 .expected = Verdict::ProperBiharmonic});
  out.push_back({.name = "s1-great-circle-via-s2-into-s3",
                 .title = "great circle of S²(1/√2) ⊂ S³(1)",
                 .ambient = "S³(1)",
                 .source = "minimal immersion into a spherical slice",
                 .params = {.builder = "compose", .kind = K::Sphere, .n = 2, .s = 0, .a = r, .b = r},
                 .immersion = compose_minimal(factor_geodesic(K::Sphere, r, "t")),
                 .expected = Verdict::ProperBiharmonic});
  out.push_back({.name = "h1xh2-geodesics-into-h4i1",
                 .title = "H¹(1/√2) × geodesic of H²(1/√2) ⊂ H⁴₁(1)",
                 .ambient = "H⁴₁(1)",
                 .source = "product of minimal immersions of equal dimension",
                 .params = {.builder = "compose-product", .kind = K::Hyperbolic, .n = 3, .s = 1, .p = 1, .q = 2,
                            .a = r, .b = r},
                 .immersion = compose_minimal_product(factor_line(K::Hyperbolic, r, "x"),
                                                      factor_geodesic(K::Hyperbolic, r, "y")),
                 .expected = Verdict::Minimal});
  out.push_back({.name = "h1xh2-identity-into-h4i1",
                 .title = "H¹(1/√2) × H²(1/√2) ⊂ H⁴₁(1)",
                 .ambient = "H⁴₁(1)",
                 .source = "product of minimal immersions of different dimensions",
                 .params = {.builder = "compose-product", .kind = K::Hyperbolic, .n = 3, .s = 1, .p = 1, .q = 2,
                            .a = r, .b = r},
                 .immersion = compose_minimal_product(factor_line(K::Hyperbolic, r, "x"),
                                                      factor_identity(K::Hyperbolic, 2, 0, r, "y")),
                 .expected = Verdict::ProperBiharmonic});
  return out;
}

const CatalogEntry& find_entry(const std::vector<CatalogEntry>& catalog, std::string_view name) {
  for (const auto& e : catalog) {
    if (e.name == name) return e;
  }
  throw Error(ErrorCode::UnknownEntry, "no catalog entry named '" + std::string(name) + "'");
}

}  // namespace biharm
