#include <gtest/gtest.h>

#include <cmath>

#include "biharm/biharmonic.hpp"
#include "biharm/catalog.hpp"
#include "biharm/error.hpp"
#include "biharm/subgeom.hpp"
#include "generators.hpp"

using namespace biharm;
using biharm::testing::Gen;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Expr var(const char* name) { return Expr::variable(name); }

ErrorCode code_at(const Immersion& im, const Vector& u) {
  try {
    point_geometry(im, u);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::SpecFileError;
}

Immersion lorentz_sphere() {
  const Expr u = var("u");
  const Expr v = var("v");
  return Immersion({"u", "v"}, AmbientSpace::flat(3, 1), {sinh(u), cosh(u) * cos(v), cosh(u) * sin(v)},
                   {{-1.0, 1.0}, {-3.0, 3.0}});
}

Immersion paraboloid() {
  const Expr x = var("x");
  const Expr y = var("y");
  return Immersion({"x", "y"}, AmbientSpace::flat(3, 0), {x, y, 0.5 * (pow(x, 2.0) + pow(y, 2.0))},
                   {{-1.0, 1.0}, {-1.0, 1.0}});
}

// Random graph surface over a square in R^3 or R^3_1 with a space-like graph
// direction so the induced metric stays Riemannian.
Immersion random_graph(Gen& gen) {
  const Expr x = var("x");
  const Expr y = var("y");
  const Expr f = 0.3 * sin(gen.smooth_expr({"x", "y"}, 2));
  return Immersion({"x", "y"}, AmbientSpace::flat(3, 0), {x, y, f}, {{-1.0, 1.0}, {-1.0, 1.0}});
}

std::vector<Immersion> sample_fixtures() {
  std::vector<Immersion> out;
  for (const char* name : {"s3-1over-sqrt2-in-s4", "s1xs2-1over-sqrt2-in-s4", "s2-1over-sqrt2-in-s3",
                           "h2-in-h3-anti-de-sitter", "s3-0p8-in-s4"}) {
    for (const CatalogEntry& e : full_catalog()) {
      if (e.name == name) out.push_back(e.immersion);
    }
  }
  return out;
}

}  // namespace

TEST(SubgeomPointGeometry, PlaneIsTotallyGeodesic) {
  const Immersion plane({"u1", "u2"}, AmbientSpace::flat(3, 1), {Expr(0.0), var("u1"), var("u2")},
                        {{-1.0, 1.0}, {-1.0, 1.0}});
  const PointGeometry pg = point_geometry(plane, Vector{{0.2, -0.4}});
  EXPECT_LT((pg.g - Matrix::Identity(2, 2)).norm(), 1e-15);
  for (const Vector& b : pg.B) EXPECT_EQ(b.norm(), 0.0);
  EXPECT_EQ(pg.H.norm(), 0.0);
  EXPECT_EQ(pg.signature, (Signature{0, 2}));
}

TEST(SubgeomPointGeometry, NullLineIsDegenerate) {
  const Immersion line({"u"}, AmbientSpace::flat(2, 1), {var("u"), var("u")}, {{-1.0, 1.0}});
  EXPECT_EQ(code_at(line, Vector{{0.3}}), ErrorCode::DegenerateInducedMetric);
}

TEST(SubgeomPointGeometry, RankDeficientJacobian) {
  const Immersion folded({"u", "v"}, AmbientSpace::flat(3, 0), {var("u") + var("v"), var("u") + var("v"), Expr(1.0)},
                         {{-1.0, 1.0}, {-1.0, 1.0}});
  EXPECT_EQ(code_at(folded, Vector{{0.1, 0.2}}), ErrorCode::RankDeficientJacobian);
}

TEST(SubgeomPointGeometry, OffQuadric) {
  const Immersion off({"u"}, AmbientSpace::sphere(2, 0, 1.0), {cos(var("u")), sin(var("u")), Expr(0.5)},
                      {{0.0, 1.0}});
  EXPECT_EQ(code_at(off, Vector{{0.5}}), ErrorCode::OffQuadric);
}

TEST(SubgeomPointGeometry, SmallSphereMatchesExtrinsicOracle) {
  const double a = kInvSqrt2;
  const double b = std::sqrt(1.0 - a * a);
  const Immersion im = build_small_hypersurface(QuadricKind::Sphere, 2, 0, a);
  for (const Vector& u : sample_points(im, 0.01)) {
    const PointGeometry pg = point_geometry(im, u);
    // x = (a sigma, b); xi = (b sigma, -a) is the unit normal inside S^3 and
    // d xi = (b/a) dx on tangent vectors, so A_xi = -(b/a) I.
    Vector xi = pg.position * (b / a);
    xi[3] = -a;
    EXPECT_NEAR(pg.inner(xi, xi), 1.0, 1e-12);
    EXPECT_LT((pg.shape_operator(xi) + (b / a) * Matrix::Identity(2, 2)).norm(), 1e-8);
    EXPECT_NEAR(std::sqrt(pg.H_sq), 1.0, 1e-8);
    EXPECT_NEAR(pg.H.norm(), 1.0, 1e-8);
    const Vector eta = pg.H / pg.H.norm();
    const Matrix A = pg.shape_operator(eta);
    EXPECT_LT((A.cwiseAbs() - Matrix::Identity(2, 2)).norm(), 1e-8);
  }
}

TEST(SubgeomSignature, LorentzSphereChart) {
  Gen gen(5);
  const Immersion im = lorentz_sphere();
  for (int trial = 0; trial < 20; ++trial) {
    const Vector u{{gen.uniform(-0.9, 0.9), gen.uniform(-2.9, 2.9)}};
    const PointGeometry pg = point_geometry(im, u);
    EXPECT_EQ(pg.signature, (Signature{1, 1}));
    ASSERT_EQ(pg.tangent_frame.size(), 2);
    EXPECT_EQ(pg.tangent_frame.signs[0], -1.0);
    EXPECT_EQ(pg.tangent_frame.signs[1], 1.0);
  }
}

TEST(SubgeomFrames, OrthonormalWithNormalBundleInsideQuadric) {
  for (const Immersion& im : sample_fixtures()) {
    const PointGeometry pg = point_geometry(im, sample_points(im, 0.01).front());
    const auto [T, N] = orthonormal_frames(pg);
    EXPECT_EQ(T.size() + N.size(), im.ambient().dim());
    Matrix all(pg.n_coords(), T.size() + N.size());
    all << T.vectors, N.vectors;
    Vector signs(T.size() + N.size());
    signs << T.signs, N.signs;
    const Matrix gram = all.transpose() * pg.ambient_metric * all;
    EXPECT_LT((gram - Matrix(signs.asDiagonal())).cwiseAbs().maxCoeff(), 1e-10);
    for (int a = 0; a < N.size(); ++a) EXPECT_LT(std::abs(pg.inner(N.vectors.col(a), pg.position)), 1e-10);
  }
}

TEST(SubgeomNormalConnection, ConstantFieldAlongPlane) {
  const Immersion plane({"u1", "u2"}, AmbientSpace::flat(3, 0), {var("u1"), var("u2"), Expr(0.0)},
                        {{-1.0, 1.0}, {-1.0, 1.0}});
  const NormalField e3 = [](const Vector&) { return Vector{{0.0, 0.0, 1.0}}; };
  for (const Vector& d : normal_connection(plane, Vector{{0.1, 0.2}}, e3)) EXPECT_LT(d.norm(), 1e-12);
}

TEST(SubgeomNormalConnection, SliceNormalIsParallelInHyperbolicSpace) {
  for (double a : {kInvSqrt2, 0.5, 0.8}) {
    const double b = std::sqrt(1.0 - a * a);
    const Immersion im = build_small_hypersurface(QuadricKind::Hyperbolic, 2, 1, a);
    const NormalField eta = slice_unit_normal(im, a, b);
    const double c = slice_normal_scale(a, b);
    for (const Vector& u : sample_points(im, 0.01)) {
      for (const Vector& d : normal_connection(im, u, eta)) EXPECT_LT(d.norm(), 1e-6);
      const PointGeometry pg = point_geometry(im, u);
      EXPECT_NEAR(std::abs(pg.inner(eta(u), eta(u))), 1.0, 1e-12);
      EXPECT_LT((pg.shape_operator(eta(u)) + Matrix::Identity(2, 2) / c).norm(), 1e-8);
    }
  }
}

TEST(SubgeomNormalConnection, ProductHasParallelMeanCurvature) {
  const Immersion im = build_product_hypersurface(QuadricKind::Sphere, 1, 0, 2, 0, kInvSqrt2, kInvSqrt2);
  for (const Vector& u : sample_points(im, 0.01)) {
    for (const Vector& d : normal_connection_H(im, u)) EXPECT_LT(d.norm(), 1e-6);
  }
}

TEST(SubgeomNormalLaplacian, VanishesForCatalog) {
  for (const CatalogEntry& e : full_catalog()) {
    const Vector u = sample_points(e.immersion, 0.01).front();
    EXPECT_LT(normal_laplacian(e.immersion, u).norm(), 1e-5) << e.name;
  }
}

TEST(SubgeomNormalLaplacian, ParaboloidVertex) {
  // h = 1 - r^2 + O(r^4) for the scalar mean curvature, so Delta^perp H = -Delta h xi = 4 e3.
  const Vector lap = normal_laplacian(paraboloid(), Vector::Zero(2));
  EXPECT_LT((lap - Vector{{0.0, 0.0, 4.0}}).norm(), 1e-4);
}

TEST(SubgeomFiniteDifferences, StencilOutsideDomain) {
  const Immersion thin({"u"}, AmbientSpace::flat(2, 0), {var("u"), pow(var("u"), 2.0)}, {{0.0, 0.005}});
  try {
    normal_laplacian(thin, Vector{{0.002}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StencilOutsideDomain);
  }
}

TEST(SubgeomFiniteDifferences, StencilShiftIsReported) {
  const Immersion im = paraboloid();
  Diagnostics diag;
  const Vector moved = stencil_safe_point(im, Vector{{0.9995, 0.0}}, {}, &diag);
  EXPECT_LE(moved[0], 1.0 - 4e-3 + 1e-15);
  EXPECT_EQ(diag.size(), 1u);
  diag.clear();
  stencil_safe_point(im, Vector{{0.2, 0.0}}, {}, &diag);
  EXPECT_TRUE(diag.empty());
}

// --- properties -------------------------------------------------------------

TEST(SubgeomProperty, SecondFundamentalFormIsSymmetricAndNormal) {
  Gen gen(21);
  std::vector<Immersion> fixtures = sample_fixtures();
  for (int k = 0; k < 20; ++k) fixtures.push_back(random_graph(gen));
  fixtures.push_back(lorentz_sphere());
  for (const Immersion& im : fixtures) {
    for (const Vector& u : sample_points(im, 0.01)) {
      const PointGeometry pg = point_geometry(im, u);
      const double scale = std::max(1.0, pg.B_norm_sq());
      for (int i = 0; i < pg.m(); ++i) {
        for (int j = 0; j < pg.m(); ++j) {
          EXPECT_EQ((pg.b(i, j) - pg.b(j, i)).norm(), 0.0);
          for (int k = 0; k < pg.m(); ++k) {
            EXPECT_LT(std::abs(pg.inner(pg.b(i, j), pg.jacobian.col(k))) / scale, 1e-9);
          }
        }
      }
    }
  }
}

TEST(SubgeomProperty, MeanCurvatureIsSignedFrameAverage) {
  Gen gen(22);
  std::vector<Immersion> fixtures = sample_fixtures();
  fixtures.push_back(lorentz_sphere());
  for (int k = 0; k < 10; ++k) fixtures.push_back(random_graph(gen));
  for (const Immersion& im : fixtures) {
    const PointGeometry pg = point_geometry(im, sample_points(im, 0.01).back());
    // Frame vectors e_a = J c_a, so B(e_a, e_a) = c_a^i c_a^j B_ij.
    const Matrix C = pg.g_inv * pg.jacobian.transpose() * pg.ambient_metric * pg.tangent_frame.vectors;
    Vector avg = Vector::Zero(pg.n_coords());
    for (int a = 0; a < pg.m(); ++a) {
      for (int i = 0; i < pg.m(); ++i) {
        for (int j = 0; j < pg.m(); ++j) avg += pg.tangent_frame.signs[a] * C(i, a) * C(j, a) * pg.b(i, j);
      }
    }
    avg /= pg.m();
    EXPECT_LT((avg - pg.H).norm(), 1e-10);
  }
}

TEST(SubgeomProperty, ShapeOperatorIsSelfAdjoint) {
  Gen gen(23);
  for (const Immersion& im : sample_fixtures()) {
    for (const Vector& u : sample_points(im, 0.01)) {
      const PointGeometry pg = point_geometry(im, u);
      for (int a = 0; a < pg.normal_frame.size(); ++a) {
        const Vector eta = pg.normal_frame.vectors.col(a);
        const Matrix A = pg.shape_operator(eta);
        const Vector X = gen.vector(pg.m(), -1.0, 1.0);
        const Vector Y = gen.vector(pg.m(), -1.0, 1.0);
        Vector BXY = Vector::Zero(pg.n_coords());
        for (int i = 0; i < pg.m(); ++i) {
          for (int j = 0; j < pg.m(); ++j) BXY += X[i] * Y[j] * pg.b(i, j);
        }
        EXPECT_NEAR((A * X).dot(pg.g * Y), pg.inner(BXY, eta), 1e-9);
      }
    }
  }
}

TEST(SubgeomProperty, TensionFieldIsMTimesH) {
  Gen gen(24);
  std::vector<Immersion> fixtures = sample_fixtures();
  fixtures.push_back(lorentz_sphere());
  for (int k = 0; k < 20; ++k) fixtures.push_back(random_graph(gen));
  for (const Immersion& im : fixtures) {
    for (const Vector& u : sample_points(im, 0.01)) {
      const PointGeometry pg = point_geometry(im, u);
      EXPECT_LT((tension_field(pg) - pg.m() * pg.H).norm(), 1e-9);
    }
  }
}

TEST(SubgeomProperty, CodazziInSpaceForms) {
  Gen gen(25);
  std::vector<Immersion> fixtures = sample_fixtures();
  for (int k = 0; k < 5; ++k) fixtures.push_back(random_graph(gen));
  for (const Immersion& im : fixtures) {
    for (const Vector& u : sample_points(im, 0.05)) EXPECT_LT(codazzi_defect(im, u), 1e-5);
  }
}

TEST(SubgeomProperty, NormalLaplacianIsNormal) {
  Gen gen(26);
  for (int k = 0; k < 10; ++k) {
    const Immersion im = random_graph(gen);
    const Vector u = gen.vector(2, -0.5, 0.5);
    const PointGeometry pg = point_geometry(im, u);
    const Vector lap = normal_laplacian(im, u);
    const double scale = std::max({1.0, std::abs(pg.H_sq), pg.B_norm_sq()});
    for (int i = 0; i < 2; ++i) EXPECT_LT(std::abs(pg.inner(lap, pg.jacobian.col(i))) / scale, 1e-8);
  }
}

TEST(SubgeomProperty, ReparametrizationInvariance) {
  Gen gen(27);
  std::vector<Immersion> fixtures = sample_fixtures();
  for (int k = 0; k < 5; ++k) fixtures.push_back(random_graph(gen));
  for (const Immersion& im : fixtures) {
    const int m = im.param_count();
    Matrix A = gen.invertible(m);
    A /= A.norm() / std::sqrt(static_cast<double>(m));
    const Vector c = gen.vector(m, -0.5, 0.5);
    const Immersion re = affine_reparametrize(im, A, c);
    const Vector u = sample_points(im, 0.05).front();
    const Vector w = A.lu().solve(u - c);
    const PointGeometry p1 = point_geometry(im, u);
    const PointGeometry p2 = point_geometry(re, w);
    EXPECT_LT((p1.H - p2.H).norm(), 1e-8);
    EXPECT_NEAR(p1.H_sq, p2.H_sq, 1e-8);
    CheckOptions opt;
    const SampleRecord r1 = evaluate_sample(im, u, opt);
    const SampleRecord r2 = evaluate_sample(re, w, opt);
    EXPECT_NEAR(r1.normal_norm, r2.normal_norm, 1e-8);
    EXPECT_NEAR(r1.tangential_norm, r2.tangential_norm, 1e-8);
  }
}
