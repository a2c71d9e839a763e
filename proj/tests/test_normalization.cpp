#include <gtest/gtest.h>

#include <cmath>

#include "catalog.hpp"
#include "error.hpp"
#include "expr.hpp"
#include "support.hpp"

using namespace rulekit;

namespace {

SurfacePtr named(const std::string& name) {
  const CatalogEntry& e = find_entry(name);
  return frame_from_invariants(load_invariants(e), frame_options(e));
}

SupportPair pair(const SurfacePtr& s, const std::string& f, const std::string& g) {
  const Interval d = s->domain();
  return make_support(expr::compile(f, d), expr::compile(g, d), d);
}

void expect_vec(const Vec3& a, const Vec3& b, double tol) {
  EXPECT_LT((a - b).norm(), tol) << a.transpose() << " vs " << b.transpose();
}

}  // namespace

TEST(RelativeNormal, HelicoidAtZeroOne) {
  const SurfacePtr h = named("helicoid");
  const SupportPair sp = pair(h, "1", "1");
  const RelativeNormal y = relative_normal(*h, sp, 0.0, 1.0);
  expect_vec(y.y, {0, 1, -1}, 1e-15);
  const SurfaceSample x = surface_sample(*h, 0.0, 1.0);
  EXPECT_NEAR(x.xi.dot(y.y), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(relative_sample(*h, sp, 0.0, 1.0).q, std::sqrt(2.0), 1e-15);
}

TEST(RelativeNormal, DegenerateSupportsLieInTheirPlanes) {
  const SurfacePtr s = named("twisted");
  const SupportPair asym = pair(s, "1+0.2*sin(u)", "0");
  const SupportPair central = pair(s, "0", "1+0.2*cos(u)");
  EXPECT_TRUE(asym.asymptotic);
  EXPECT_FALSE(asym.central);
  EXPECT_TRUE(central.central);
  for (double u : {0.5, 2.0, 4.5}) {
    for (double v : {-0.7, 0.4, 1.3}) {
      EXPECT_EQ(relative_normal(*s, asym, u, v).y_frame[2], 0.0);
      EXPECT_EQ(relative_normal(*s, central, u, v).y_frame[1], 0.0);
    }
  }
  EXPECT_THROW(make_support(ScalarFn::constant(0, s->domain()), ScalarFn::constant(0, s->domain()),
                            s->domain()),
               Error);
}

TEST(RelativeNormal, ClosedFormMatchesGeneralPathAndSupport) {
  rktest::Rng rng(31);
  for (int k = 0; k < 10; ++k) {
    const SurfacePtr s = frame_from_invariants(rktest::random_invariants(rng, {0, 6}, k % 3 == 0));
    const SupportPair sp = rktest::random_support(rng, {0, 6});
    for (int j = 0; j < 10; ++j) {
      const double u = rktest::uniform(rng, 0.1, 5.9), v = rktest::uniform(rng, -2, 2);
      if (rktest::pole_distance(sp, u, v) < 1e-2) continue;
      const RightPoint p = right_point(*s, sp, u, v);
      const RelativeNormal a = relative_normal(p);
      const RelativeNormal b = relative_normal_general(p.st, v, right_q(p));
      expect_vec(a.y, b.y, 1e-12 * (1 + a.y.norm()));
      const SurfaceSample x = surface_sample(p.st, v);
      EXPECT_NEAR(x.xi.dot(a.y), right_q(p).q, 1e-12 * (1 + std::abs(right_q(p).q)));
    }
  }
}

TEST(RelativeNormal, PoleIsSingular) {
  const SurfacePtr h = named("helicoid");
  const SupportPair sp = pair(h, "1", "1");
  EXPECT_TRUE(right_point(*h, sp, 0.3, -1.0).is_pole());
  try {
    relative_sample(*h, sp, 0.3, -1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Singular);
  }
}

TEST(RelativeSample, HelicoidIsFlatEverywhere) {
  const SurfacePtr h = named("helicoid");
  const SupportPair sp = pair(h, "1", "1");
  for (double u : {-2.0, 0.0, 1.1}) {
    for (double v : {-0.5, 0.0, 2.0}) {
      const RelativeSample r = relative_sample(*h, sp, u, v);
      EXPECT_EQ(r.B11, 0.0);
      EXPECT_EQ(r.B22, 0.0);
      EXPECT_NEAR(r.B12, 1.0, 1e-15);
      EXPECT_EQ(r.B21, 0.0);
      EXPECT_EQ(r.H, 0.0);
      EXPECT_EQ(r.K, 0.0);
      EXPECT_NEAR(r.J, 0.0, 1e-15);
      EXPECT_NEAR(r.S, 0.0, 1e-15);
    }
  }
}

TEST(RelativeSample, IdentitiesAtRandomPoints) {
  rktest::Rng rng(32);
  for (int k = 0; k < 10; ++k) {
    const SurfacePtr s = frame_from_invariants(rktest::random_invariants(rng, {0, 6}));
    const SupportPair sp = rktest::random_support(rng, {0, 6});
    for (int j = 0; j < 50; ++j) {
      const double u = rktest::uniform(rng, 0.1, 5.9), v = rktest::uniform(rng, -2, 2);
      if (rktest::pole_distance(sp, u, v) < 1e-2) continue;
      const RelativeSample r = relative_sample(*s, sp, u, v);
      const SurfaceSample x = surface_sample(*s, u, v);
      EXPECT_EQ(r.B21, 0.0);
      EXPECT_EQ(r.B11, r.B22);
      EXPECT_LT(std::abs(r.K - r.H * r.H), 1e-12);
      EXPECT_LT(std::abs(3 * r.H - r.J - 3 * r.S), 1e-10);
      // G_ij = h_ij / q and the stated inverse.
      EXPECT_NEAR(r.G11, x.h11 / r.q, 1e-12 * (1 + std::abs(r.G11)));
      EXPECT_NEAR(r.G12, x.h12 / r.q, 1e-12 * (1 + std::abs(r.G12)));
      EXPECT_EQ(r.G22, 0.0);
      EXPECT_EQ(r.Ginv11, 0.0);
      Eigen::Matrix2d g, gi;
      g << r.G11, r.G12, r.G12, r.G22;
      gi << r.Ginv11, r.Ginv12, r.Ginv12, r.Ginv22;
      EXPECT_LT((gi * g - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(RelativeSample, ShapeOperatorResidual) {
  rktest::Rng rng(33);
  const SurfacePtr s = frame_from_invariants(rktest::random_invariants(rng, {0, 6}));
  const SupportPair sp = rktest::random_support(rng, {0, 6});
  const auto y = [&](double a, double b) { return relative_normal(*s, sp, a, b).y; };
  for (int j = 0; j < 50; ++j) {
    const double u = rktest::uniform(rng, 0.1, 5.9), v = rktest::uniform(rng, -2, 2);
    if (rktest::pole_distance(sp, u, v) < 5e-2) continue;
    const RelativeSample r = relative_sample(*s, sp, u, v);
    const SurfaceSample x = surface_sample(*s, u, v);
    EXPECT_LT((rktest::fd_partial(y, u, v, 1) + r.B11 * x.x1 + r.B12 * x.x2).norm(), 1e-5);
    EXPECT_LT((rktest::fd_partial(y, u, v, 2) + r.B21 * x.x1 + r.B22 * x.x2).norm(), 1e-5);
  }
}

TEST(Pick, HelicoidAndCentralSupport) {
  const SurfacePtr h = named("helicoid");
  const SupportPair one = pair(h, "1", "1");
  EXPECT_NEAR(pick_invariant_general(*h, right_q(h, one), 0.5, 0.7), 0.0, 1e-15);
  const SupportPair central = pair(h, "0", "1");
  for (double v : {0.3, 1.0, 2.0}) {
    const double general = pick_invariant_general(*h, right_q(h, central), 0.5, v);
    EXPECT_TRUE(std::isfinite(general));
    EXPECT_NEAR(general, relative_sample(*h, central, 0.5, v).J, 1e-12);
  }
}

TEST(Pick, ClosedFormMatchesGeneralOnRandomTuples) {
  rktest::Rng rng(34);
  for (int k = 0; k < 100; ++k) {
    const SurfacePtr s = frame_from_invariants(rktest::random_invariants(rng, {0, 6}, k % 2 == 1));
    const SupportPair sp = rktest::random_support(rng, {0, 6});
    const double u = rktest::uniform(rng, 0.1, 5.9), v = rktest::uniform(rng, -2, 2);
    if (rktest::pole_distance(sp, u, v) < 1e-2) continue;
    const double a = relative_sample(*s, sp, u, v).J;
    const double b = pick_invariant_general(*s, right_q(s, sp), u, v);
    EXPECT_LT(rktest::rel_diff(a, b, 1.0), 1e-8);
  }
}

TEST(Pick, VanishesForConoidalConstruction) {
  const SurfacePtr s = named("conoid-sin");
  ConstructOptions co;
  co.constants = {1.0, 0.0};
  const Configuration cfg = construct_support(PropositionId::pick_vanishing, s->invariants(), co);
  for (double u : linspace(0, 6, 32)) {
    for (double v : linspace(-0.5, 1.5, 32)) {
      if (rktest::pole_distance(cfg.sp, u, v) < 1e-6) continue;
      EXPECT_LT(std::abs(relative_sample(*s, cfg.sp, u, v).J), 1e-7);
    }
  }
}

TEST(Classify, HelicoidIsFirstTypeWithCurveImage) {
  const SurfacePtr h = named("helicoid");
  const RelativeImage img = classify_and_image(h, pair(h, "1", "1"));
  EXPECT_EQ(img.type(), NormalizationType::First);
  for (double u : {-1.0, 0.0, 2.0}) {
    const FrameSample f = h->frame(u);
    for (double v : {-0.5, 0.5, 3.0}) expect_vec(img.image_point(u, v), f.n - f.z, 1e-12);
  }
  EXPECT_THROW(img.delta_star(), Error);
}

TEST(Classify, EdlingerIsSecondType) {
  const SurfacePtr s = named("edlinger-1");
  const SupportPair sp = pair(s, "1", "1");
  const RelativeImage img = classify_and_image(s, sp);
  ASSERT_EQ(img.type(), NormalizationType::Second);
  for (double u : {1.0, 5.0}) {
    EXPECT_NEAR(img.delta_star().value(u), 1.0, 1e-14);
    EXPECT_NEAR(img.kappa_star().value(u), 1.0, 1e-14);
    for (double v : {-0.5, 0.5, 2.0}) {
      const RelativeSample r = relative_sample(*s, sp, u, v);
      EXPECT_NEAR(r.H, -1.0, 1e-14);
      EXPECT_NEAR(img.w_star(u, v), surface_sample(*s, u, v).w, 1e-14);
    }
  }
}

TEST(Classify, MixedTypeIsReported) {
  const SurfacePtr s = named("twisted");
  // delta g' - kappa f = -kappa changes sign on the domain.
  try {
    classify_and_image(s, pair(s, "1", "0.5"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Precondition);
  }
}

TEST(Classify, FirstTypeIffGeneratorIndependentNormal) {
  const SurfacePtr s = named("twisted");
  const Configuration first =
      construct_support(PropositionId::relative_minimal_type1, s->invariants());
  const SupportPair second = pair(s, "1", "2+u");
  for (const auto& [sp, expect_first] : {std::pair{first.sp, true}, std::pair{second, false}}) {
    EXPECT_EQ(classify_and_image(s, sp).type() == NormalizationType::First, expect_first);
    const auto y = [&](double a, double b) { return relative_normal(*s, sp, a, b).y; };
    double worst = 0.0;
    for (double u : linspace(0.5, 5.5, 8)) {
      for (double v : linspace(0.1, 1.5, 8)) worst = std::max(worst, rktest::fd_partial(y, u, v, 2).norm());
    }
    if (expect_first) EXPECT_LT(worst, 1e-10);
    else EXPECT_GT(worst, 1e-3);
  }
}

TEST(Classify, SecondTypeImageData) {
  const SurfacePtr s = named("twisted");
  const SupportPair sp = pair(s, "1", "2+u");
  const RelativeImage img = classify_and_image(s, sp);
  ASSERT_EQ(img.type(), NormalizationType::Second);
  for (double u : {0.7, 2.9, 5.1}) {
    const double H = relative_sample(*s, sp, u, 0.0).H;
    for (double v : {-0.8, 0.3, 1.4}) {
      const double ws = img.w_star(u, v);
      // Image Gaussian curvature equals -delta*^2 / w*^4.
      const double ds = img.delta_star().value(u);
      EXPECT_NEAR(img.Kt_star(u, v), -ds * ds / std::pow(ws, 4), 1e-12 * std::abs(img.Kt_star(u, v)));
      // x + y / H does not depend on v; it traces the focal curve.
      const Vec3 x = surface_point(*s, u, v);
      const Vec3 y = relative_normal(*s, sp, u, v).y;
      expect_vec(img.focal(u), x + y / H, 1e-10 * (1 + img.focal(u).norm()));
    }
  }
}
