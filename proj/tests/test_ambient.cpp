#include <gtest/gtest.h>

#include <cmath>

#include "biharm/ambient.hpp"
#include "biharm/catalog.hpp"
#include "biharm/error.hpp"
#include "biharm/subgeom.hpp"
#include "generators.hpp"

using namespace biharm;
using biharm::testing::Gen;

namespace {

Vector unit(int n, int i) {
  Vector v = Vector::Zero(n);
  v[i] = 1.0;
  return v;
}

ChartSpace round_sphere_chart(int n) {
  std::vector<std::string> coords;
  for (int i = 0; i < n; ++i) coords.push_back("a" + std::to_string(i + 1));
  std::vector<std::vector<Expr>> h(n, std::vector<Expr>(n, Expr(0.0)));
  Expr factor(1.0);
  for (int i = 0; i < n; ++i) {
    h[i][i] = factor;
    factor = factor * pow(sin(Expr::variable(coords[i])), 2.0);
  }
  return ChartSpace(coords, h);
}

ChartSpace warped_chart() {
  const Expr u = Expr::variable("u");
  return ChartSpace({"u", "v"}, {{Expr(1.0), Expr(0.0)}, {Expr(0.0), pow(u, 2.0)}});
}

ChartSpace random_chart(Gen& gen) {
  // Positive definite: diagonal 2 + tanh terms plus a small symmetric coupling.
  const std::vector<std::string> c{"x", "y", "z"};
  std::vector<std::vector<Expr>> h(3, std::vector<Expr>(3));
  for (int i = 0; i < 3; ++i) {
    h[i][i] = 2.0 + tanh(gen.smooth_expr(c, 2));
    for (int j = i + 1; j < 3; ++j) h[i][j] = h[j][i] = 0.2 * sin(gen.smooth_expr(c, 2));
  }
  return ChartSpace(c, h);
}

}  // namespace

TEST(AmbientInner, FlatExamples) {
  const AmbientSpace r21 = AmbientSpace::flat(2, 1);
  EXPECT_EQ(inner(unit(2, 0), unit(2, 0), r21), -1.0);
  EXPECT_EQ(inner(unit(2, 1), unit(2, 1), r21), 1.0);
  for (int n = 1; n <= 5; ++n) {
    const AmbientSpace amb = AmbientSpace::flat(n, n / 2);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j) EXPECT_EQ(inner(unit(n, i), unit(n, j), amb), 0.0);
      }
    }
  }
}

TEST(AmbientInner, SignBySignSummation) {
  Gen gen(42);
  const AmbientSpace amb = AmbientSpace::flat(4, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector a = gen.vector(4, -3.0, 3.0);
    const Vector b = gen.vector(4, -3.0, 3.0);
    double oracle = 0.0;
    for (int i = 0; i < 4; ++i) oracle += (i < 2 ? -1.0 : 1.0) * a[i] * b[i];
    EXPECT_NEAR(inner(a, b, amb), oracle, 1e-14);
  }
}

TEST(AmbientInner, DimensionMismatch) {
  try {
    inner(Vector::Zero(3), Vector::Zero(4), AmbientSpace::flat(4, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(AmbientQuadric, ResidualExamples) {
  const QuadricSpace s{QuadricKind::Sphere, 3, 1, 1.0};
  EXPECT_EQ(quadric_residual(unit(4, 3), s), 0.0);
  const QuadricSpace h{QuadricKind::Hyperbolic, 3, 1, 1.0};
  EXPECT_EQ(quadric_residual(unit(4, 0), h), 0.0);
  const QuadricSpace small{QuadricKind::Sphere, 3, 0, 1.0 / std::sqrt(2.0)};
  EXPECT_NEAR(quadric_residual(unit(4, 3), small), 0.5, 1e-15);
}

TEST(AmbientQuadric, Curvatures) {
  EXPECT_DOUBLE_EQ(AmbientSpace::sphere(4, 1, 0.5).curvature(), 4.0);
  EXPECT_DOUBLE_EQ(AmbientSpace::hyperbolic(4, 1, 2.0).curvature(), -0.25);
  EXPECT_EQ(AmbientSpace::flat(4, 2).curvature(), 0.0);
  EXPECT_EQ(AmbientSpace::space_form(4, 2, -1.0).as_quadric()->kind, QuadricKind::Hyperbolic);
  EXPECT_EQ(AmbientSpace::space_form(4, 2, -1.0).as_quadric()->embedding_index(), 3);
  EXPECT_EQ(AmbientSpace::space_form(4, 2, 0.0).as_flat()->index, 2);
  EXPECT_EQ(AmbientSpace::sphere(4, 1, 1.0).signature(), (Signature{1, 3}));
}

TEST(AmbientChart, ChristoffelOfConstantMetricVanishes) {
  const ChartSpace c({"x", "y"}, {{Expr(2.0), Expr(0.5)}, {Expr(0.5), Expr(-1.0)}});
  for (const Matrix& G : christoffel(c, Vector::Constant(2, 0.3))) EXPECT_EQ(G.norm(), 0.0);
  const Vector y = Vector::Constant(2, 0.3);
  EXPECT_EQ(riemann(c, y, unit(2, 0), unit(2, 1), unit(2, 0)).norm(), 0.0);
}

TEST(AmbientChart, ChristoffelOfPolarMetric) {
  const ChartSpace c = warped_chart();
  for (double u : {0.5, 1.0, 2.5}) {
    const std::vector<Matrix> G = christoffel(c, Vector{{u, 0.7}});
    EXPECT_NEAR(G[0](1, 1), -u, 1e-14);
    EXPECT_NEAR(G[1](0, 1), 1.0 / u, 1e-14);
    EXPECT_NEAR(G[1](1, 0), 1.0 / u, 1e-14);
    EXPECT_NEAR(G[0](0, 0), 0.0, 1e-14);
  }
}

TEST(AmbientChart, ChristoffelMatchesFiniteDifferenceMetric) {
  Gen gen(8);
  for (int trial = 0; trial < 10; ++trial) {
    const ChartSpace c = random_chart(gen);
    const Vector y = gen.vector(3, -0.8, 0.8);
    const double h = 1e-5;
    std::vector<Matrix> dh(3);
    for (int k = 0; k < 3; ++k) {
      dh[k] = (c.metric(y + h * unit(3, k)) - c.metric(y - h * unit(3, k))) / (2.0 * h);
    }
    const Matrix hinv = c.metric(y).inverse();
    const std::vector<Matrix> G = christoffel(c, y);
    for (int g = 0; g < 3; ++g) {
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          double oracle = 0.0;
          for (int d = 0; d < 3; ++d) oracle += 0.5 * hinv(g, d) * (dh[a](d, b) + dh[b](d, a) - dh[d](a, b));
          EXPECT_NEAR(G[g](a, b), oracle, 1e-8);
          EXPECT_EQ(G[g](a, b), G[g](b, a));
        }
      }
    }
  }
}

TEST(AmbientChart, DegenerateMetric) {
  const ChartSpace c({"x", "y"}, {{Expr(1.0), Expr(1.0)}, {Expr(1.0), Expr(1.0)}});
  try {
    christoffel(c, Vector::Zero(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateMetric);
  }
}

TEST(AmbientChart, RoundSphereHasUnitSectionalCurvature) {
  Gen gen(1);
  const ChartSpace c = round_sphere_chart(2);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector y{{gen.uniform(0.3, 2.8), gen.uniform(-3.0, 3.0)}};
    const Vector X = gen.vector(2, -1.0, 1.0);
    const Vector Y = gen.vector(2, -1.0, 1.0);
    const Matrix h = c.metric(y);
    const double num = (h * riemann(c, y, X, Y, Y)).dot(X);
    const double den = X.dot(h * X) * Y.dot(h * Y) - std::pow(X.dot(h * Y), 2);
    if (std::abs(den) < 1e-3) continue;
    EXPECT_NEAR(num / den, 1.0, 1e-8);
  }
}

TEST(AmbientChart, RiemannSymmetries) {
  Gen gen(4);
  for (int trial = 0; trial < 10; ++trial) {
    const ChartSpace c = random_chart(gen);
    const Vector y = gen.vector(3, -0.8, 0.8);
    const Vector X = gen.vector(3, -1.0, 1.0);
    const Vector Y = gen.vector(3, -1.0, 1.0);
    const Vector Z = gen.vector(3, -1.0, 1.0);
    const Vector rxy = riemann(c, y, X, Y, Z);
    EXPECT_LT((rxy + riemann(c, y, Y, X, Z)).norm(), 1e-12 * std::max(1.0, rxy.norm()));
    const Vector bianchi = rxy + riemann(c, y, Y, Z, X) + riemann(c, y, Z, X, Y);
    EXPECT_LT(bianchi.norm(), 1e-8);
  }
}

TEST(AmbientCurvature, SpaceFormTensor) {
  const AmbientSpace flat = AmbientSpace::flat(3, 0);
  const Vector at = Vector::Zero(3);
  EXPECT_EQ(spaceform_curvature(0.0, unit(3, 0), unit(3, 1), unit(3, 2), flat, at).norm(), 0.0);
  const AmbientSpace s3 = AmbientSpace::sphere(3, 0, 1.0);
  const Vector p = unit(4, 3);
  const Vector X = unit(4, 0);
  EXPECT_EQ(spaceform_curvature(1.0, X, X, X, s3, p).norm(), 0.0);
  // R(X,Y)Y = C X for orthonormal X, Y.
  EXPECT_NEAR((spaceform_curvature(1.0, X, unit(4, 1), unit(4, 1), s3, p) - X).norm(), 0.0, 1e-15);
}

TEST(AmbientCurvature, SignedTraceIsMinusMCH) {
  for (const CatalogEntry& e : full_catalog()) {
    const Immersion& im = e.immersion;
    const AmbientSpace& amb = im.ambient();
    if (amb.as_quadric() == nullptr) continue;
    const Vector u = sample_points(im, 0.01).front();
    const PointGeometry pg = point_geometry(im, u);
    Vector trace = Vector::Zero(pg.n_coords());
    for (int i = 0; i < pg.tangent_frame.size(); ++i) {
      const Vector ei = pg.tangent_frame.vectors.col(i);
      trace += pg.tangent_frame.signs[i] * curvature(amb, pg.position, ei, pg.H, ei);
    }
    const Vector oracle = -pg.m() * amb.curvature() * pg.H;
    EXPECT_LT((trace - oracle).norm(), 1e-10) << e.name;
  }
}

TEST(AmbientRicci, Flat) {
  const RicciValue r = ricci_operator(AmbientSpace::flat(4, 1), Vector::Zero(4), unit(4, 2));
  EXPECT_EQ(r.scalar, 0.0);
  EXPECT_EQ(r.vector.norm(), 0.0);
}

TEST(AmbientRicci, QuadricIsEinstein) {
  Gen gen(12);
  for (int m = 1; m <= 4; ++m) {
    const AmbientSpace amb = AmbientSpace::sphere(m + 1, 0, 1.0);
    const Vector p = unit(m + 2, m + 1);
    Vector xi = gen.vector(m + 2, -1.0, 1.0);
    xi[m + 1] = 0.0;
    xi.normalize();
    const RicciValue r = ricci_operator(amb, p, xi);
    EXPECT_LT((r.vector - m * xi).norm(), 1e-10);
    EXPECT_NEAR(r.scalar, m, 1e-10);
  }
}

TEST(AmbientRicci, ChartMatchesQuadric) {
  const ChartSpace c = round_sphere_chart(3);
  const Vector y{{0.9, 1.2, 0.4}};
  const Vector xi = unit(3, 0);
  const RicciValue chart = ricci_operator(AmbientSpace(c), y, xi);
  const RicciValue quad = ricci_operator(AmbientSpace::sphere(3, 0, 1.0), unit(4, 3), unit(4, 0));
  EXPECT_NEAR(chart.scalar, quad.scalar, 1e-6);
  EXPECT_LT((chart.vector - 2.0 * xi).norm(), 1e-6);
}

// --- properties -------------------------------------------------------------

TEST(AmbientProperty, InnerIsSymmetricBilinear) {
  Gen gen(77);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen.integer(1, 6);
    const AmbientSpace amb = AmbientSpace::flat(n, gen.integer(0, n));
    const Vector a = gen.vector(n, -2.0, 2.0);
    const Vector b = gen.vector(n, -2.0, 2.0);
    const Vector c = gen.vector(n, -2.0, 2.0);
    const double s = gen.uniform(-3.0, 3.0);
    EXPECT_EQ(inner(a, b, amb), inner(b, a, amb));
    EXPECT_NEAR(inner(s * a + c, b, amb), s * inner(a, b, amb) + inner(c, b, amb), 1e-12);
  }
}

TEST(AmbientProperty, ChartInnerUsesMetric) {
  Gen gen(78);
  const ChartSpace c = random_chart(gen);
  const AmbientSpace amb(c);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector y = gen.vector(3, -0.5, 0.5);
    const Vector a = gen.vector(3, -1.0, 1.0);
    const Vector b = gen.vector(3, -1.0, 1.0);
    EXPECT_NEAR(inner(a, b, amb, y), a.dot(c.metric(y) * b), 1e-14);
    EXPECT_NEAR(inner(a, b, amb, y), inner(b, a, amb, y), 1e-14);
  }
}
