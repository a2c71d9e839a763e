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

TEST(Tchebychev, HelicoidAtZeroOne) {
  const SurfacePtr h = named("helicoid");
  const Tchebychev t = tchebychev(*h, pair(h, "1", "1"), 0.0, 1.0);
  EXPECT_NEAR(t.T1, 1.0, 1e-15);
  EXPECT_NEAR(t.T2, 0.0, 1e-15);
  expect_vec(t.T, {0, 1, 1}, 1e-15);
  EXPECT_NEAR(t.T.dot(h->frame(0.0).e), 0.0, 1e-15);
}

TEST(Tchebychev, EdlingerFrameForm) {
  const SurfacePtr s = named("edlinger-1");
  const SupportPair sp = pair(s, "1", "1");
  for (double u : {1.0, 4.0}) {
    for (double v : {-0.5, 0.0, 1.7}) {
      expect_vec(tchebychev(*s, sp, u, v).T_frame, {v * v + 1, v, 1}, 1e-13);
    }
  }
}

TEST(Tchebychev, AsymptoticSupportGivesFieldAlongGenerators) {
  const SurfacePtr s = named("twisted");
  const SupportPair sp = pair(s, "1+0.3*sin(u)", "0");
  for (double u : {0.5, 3.0}) {
    for (double v : {-1.0, 0.6}) {
      const Tchebychev t = tchebychev(*s, sp, u, v);
      EXPECT_EQ(t.T_frame[1], 0.0);
      EXPECT_EQ(t.T_frame[2], 0.0);
      EXPECT_LT(t.T.cross(s->frame(u).e).norm(), 1e-12 * (1 + t.T.norm()));
    }
  }
}

TEST(Tchebychev, FrameFormMatchesComponents) {
  rktest::Rng rng(41);
  for (int k = 0; k < 20; ++k) {
    const SurfacePtr s = frame_from_invariants(rktest::random_invariants(rng, {0, 6}, k % 2 == 0));
    const SupportPair sp = rktest::random_support(rng, {0, 6});
    const double u = rktest::uniform(rng, 0.1, 5.9), v = rktest::uniform(rng, -2, 2);
    if (rktest::pole_distance(sp, u, v) < 1e-2) continue;
    const RightPoint p = right_point(*s, sp, u, v);
    const Tchebychev a = tchebychev(p);
    const Tchebychev b = tchebychev_general(p.st, v, right_q(p));
    expect_vec(a.T, b.T, 1e-8 * (1 + b.T.norm()));
    const SurfaceSample x = surface_sample(p.st, v);
    expect_vec(a.T1 * x.x1 + a.T2 * x.x2, a.T, 1e-8 * (1 + a.T.norm()));
  }
}

TEST(SupportVector, HelicoidValues) {
  const SurfacePtr h = named("helicoid");
  const SupportPair sp = pair(h, "1", "1");
  expect_vec(support_vector(*h, sp, 0.0, 1.0), Vec3::Zero(), 1e-15);
  expect_vec(support_vector(*h, sp, 0.0, 0.0), {0, 0, -0.25}, 1e-15);
}

TEST(SupportVector, TangentAndMatchesGeneralForm) {
  rktest::Rng rng(42);
  for (int k = 0; k < 20; ++k) {
    const SurfacePtr s = frame_from_invariants(rktest::random_invariants(rng, {0, 6}));
    const SupportPair sp = rktest::random_support(rng, {0, 6});
    const double u = rktest::uniform(rng, 0.1, 5.9), v = rktest::uniform(rng, -2, 2);
    if (rktest::pole_distance(sp, u, v) < 1e-2) continue;
    const RightPoint p = right_point(*s, sp, u, v);
    const Vec3 q = support_vector(p);
    EXPECT_LT(std::abs(q.dot(surface_sample(p.st, v).xi)), 1e-12 * (1 + q.norm()));
    expect_vec(q, support_vector_general(p.st, v, right_q(p)), 1e-8 * (1 + q.norm()));
  }
}

TEST(Divergences, HelicoidVanish) {
  const SurfacePtr h = named("helicoid");
  const SupportPair sp = pair(h, "1", "1");
  for (double v : {-0.5, 0.5, 2.0}) {
    const Divergences d = divergences(*h, sp, 1.0, v);
    EXPECT_NEAR(d.divI, 0.0, 1e-15);
    EXPECT_NEAR(d.divG, 0.0, 1e-15);
  }
}

TEST(Divergences, NonConstantConoidWithConstantG) {
  const SurfacePtr s = named("conoid-sin");
  const Divergences d = divergences(*s, pair(s, "1", "1"), 1.0, 0.5);
  EXPECT_GT(std::abs(d.divI), 1e-3);
}

TEST(Divergences, ClosedFormsMatchFiniteDifferences) {
  rktest::Rng rng(43);
  for (int k = 0; k < 30; ++k) {
    const SurfacePtr s = frame_from_invariants(rktest::random_invariants(rng, {0, 6}, k % 3 == 0));
    const SupportPair sp = rktest::random_support(rng, {0, 6});
    const double u = rktest::uniform(rng, 0.1, 5.9), v = rktest::uniform(rng, -2, 2);
    if (rktest::pole_distance(sp, u, v) < 5e-2) continue;
    const Divergences a = divergences(*s, sp, u, v);
    const Divergences b = divergences_fd(*s, sp, u, v);
    EXPECT_NEAR(a.divI, b.divI, 1e-5);
    EXPECT_NEAR(a.divG, b.divG, 1e-5);
  }
}

TEST(CurveFamilies, UCurveTangent) {
  const SurfacePtr s = named("twisted");
  const Station st = station(*s, 2.0);
  const double v = 0.7;
  const Vec3 expect = st.delta.v0 * st.lambda.v0 * st.frame.e + v * st.frame.n + st.delta.v0 * st.frame.z;
  expect_vec(curve_tangent(st, {FamilyKind::UCurves}, v), expect, 1e-15);
  EXPECT_EQ(curve_tangent(st, {FamilyKind::Generators}, v), st.frame.e);
}

TEST(CurveFamilies, HelicoidKCurvesAreUCurves) {
  const SurfacePtr h = named("helicoid");
  const Station st = station(*h, 0.5);
  for (double v : {-1.0, 0.0, 1.0}) EXPECT_EQ(CurveFamily{FamilyKind::KtCurves}.vprime(st, v), 0.0);
}

TEST(CurveFamilies, SolvedSlopeSatisfiesRelation) {
  const SurfacePtr s = named("twisted");
  for (FamilyKind k : {FamilyKind::UCurves, FamilyKind::CurvedAsymptotic, FamilyKind::KtCurves}) {
    const CurveFamily fam{k};
    for (double u : linspace(0.2, 5.8, 7)) {
      const Station st = station(*s, u);
      for (double v : {-1.3, -0.4, 0.5, 1.9}) {
        EXPECT_LT(std::abs(fam.relation(st, v, fam.vprime(st, v))), 1e-12) << to_string(k);
      }
    }
  }
}

TEST(CurveFamilies, AsymptoticCurvesHaveZeroNormalCurvature) {
  const SurfacePtr s = named("twisted");
  const CurveFamily fam{FamilyKind::CurvedAsymptotic};
  for (double u : {1.0, 3.5}) {
    const Station st = station(*s, u);
    for (double v : {-0.8, 0.9}) {
      const SurfaceSample x = surface_sample(st, v);
      const double vp = fam.vprime(st, v);
      // II(x', x') = h11 + 2 h12 v' with the tangent (1, v').
      EXPECT_NEAR(x.h11 + 2 * x.h12 * vp, 0.0, 1e-12);
    }
  }
}

TEST(CurveFamilies, DegeneratePointsAreReported) {
  const SurfacePtr s = named("conoid-sin");
  const Station st = station(*s, 1.0);
  try {
    CurveFamily{FamilyKind::KtCurves}.vprime(st, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Singular);
  }
  try {
    CurveFamily{FamilyKind::Generators}.vprime(st, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Precondition);
  }
}

TEST(AngleTest, ResidualDefinitions) {
  EXPECT_NEAR(angle_residual({1, 0, 0}, {2, 0, 0}, AngleMode::Tangential), 0.0, 0.0);
  EXPECT_NEAR(angle_residual({1, 0, 0}, {0, 3, 0}, AngleMode::Orthogonal), 0.0, 0.0);
  EXPECT_NEAR(angle_residual({1, 1, 0}, {1, 0, 0}, AngleMode::Tangential), std::sqrt(0.5), 1e-15);
}

TEST(AngleTest, EdlingerFieldsOrthogonalToKCurves) {
  const SurfacePtr s = named("edlinger-1");
  const SupportPair sp = pair(s, "1", "1");
  const Region r{s->domain(), {-0.5, 2.0}, 32, 32};
  for (FieldKind f : {FieldKind::T, FieldKind::Q}) {
    const AngleReport rep = angle_test(f, {FamilyKind::KtCurves}, *s, sp, r, AngleMode::Orthogonal);
    EXPECT_GT(rep.samples, 900);
    EXPECT_LT(rep.max_geometric, 1e-9) << to_string(f);
    EXPECT_LT(rep.max_condition, 1e-9) << to_string(f);
  }
}

TEST(AngleTest, HelicoidTOrthogonalToGenerators) {
  const SurfacePtr h = named("helicoid");
  const Region r{h->domain(), {-0.5, 2.0}, 16, 16};
  const AngleReport rep =
      angle_test(FieldKind::T, {FamilyKind::Generators}, *h, pair(h, "1", "1"), r, AngleMode::Orthogonal);
  EXPECT_LT(rep.max_geometric, 1e-15);  // zero up to roundoff in the integrated frame
  EXPECT_GT(rep.samples, 0);
}

TEST(AngleTest, PolesAndZeroFieldsAreSkipped) {
  const SurfacePtr h = named("helicoid");
  // v = -1 is a pole of f = g = 1; Q vanishes on v = 1.
  const Region r{{-1.0, 1.0}, {-1.0, 1.0}, 5, 5};
  const AngleReport rep =
      angle_test(FieldKind::Q, {FamilyKind::UCurves}, *h, pair(h, "1", "1"), r, AngleMode::Orthogonal);
  EXPECT_EQ(rep.skipped_pole, 5);
  EXPECT_EQ(rep.skipped_zero_field, 5);
  EXPECT_EQ(rep.samples, 15);
}

TEST(PrintedCondition, GeneratorTangencyHasNoCondition) {
  const SurfacePtr h = named("helicoid");
  const RightPoint p = right_point(*h, pair(h, "1", "1"), 0.0, 0.5);
  EXPECT_TRUE(std::isnan(printed_condition(FieldKind::T, FamilyKind::Generators, AngleMode::Tangential, p)));
}

TEST(PrintedCondition, AgreesWithGeometryOffTheConstruction) {
  // On a generic configuration the printed condition vanishes exactly where
  // the geometric residual does: both are nonzero at ordinary points.
  const SurfacePtr s = named("twisted");
  const SupportPair sp = pair(s, "1+0.2*sin(u)", "0.7+0.1*u");
  for (FieldKind f : {FieldKind::T, FieldKind::Q}) {
    for (FamilyKind fam : {FamilyKind::UCurves, FamilyKind::CurvedAsymptotic, FamilyKind::KtCurves}) {
      for (AngleMode m : {AngleMode::Tangential, AngleMode::Orthogonal}) {
        const RightPoint p = right_point(*s, sp, 2.3, 0.4);
        const double c = printed_condition(f, fam, m, p);
        const double g = angle_residual(f == FieldKind::T ? tchebychev(p).T : support_vector(p),
                                        curve_tangent(p.st, {fam}, 0.4), m);
        EXPECT_EQ(std::abs(c) > 1e-9, g > 1e-9) << to_string(f) << " " << to_string(fam) << " " << to_string(m);
      }
    }
  }
}
