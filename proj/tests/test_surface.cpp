#include <gtest/gtest.h>

#include <cmath>

#include "catalog.hpp"
#include "error.hpp"
#include "expr.hpp"
#include "support.hpp"

using namespace rulekit;

namespace {

Invariants constant_invariants(double d, double k, double l, Interval dom) {
  Invariants inv;
  inv.domain = dom;
  inv.delta = ScalarFn::constant(d, dom);
  inv.kappa = ScalarFn::constant(k, dom);
  inv.lambda = ScalarFn::constant(l, dom);
  return inv;
}

SurfacePtr helicoid() {
  FrameOptions o;
  o.u0 = 0.0;
  return frame_from_invariants(constant_invariants(1, 0, 0, {-4, 4}), o);
}

void expect_vec(const Vec3& a, const Vec3& b, double tol) {
  EXPECT_LT((a - b).norm(), tol) << a.transpose() << " vs " << b.transpose();
}

}  // namespace

TEST(Frame, HelicoidClosedForm) {
  const SurfacePtr s = helicoid();
  for (double u : {-3.7, -1.0, 0.4, 1.3, 3.9}) {
    const FrameSample f = s->frame(u);
    expect_vec(f.e, {std::cos(u), std::sin(u), 0}, 1e-12);
    expect_vec(f.z, {0, 0, 1}, 1e-12);
    expect_vec(f.s, {0, 0, u}, 1e-12);
  }
}

TEST(Frame, InitialStationIsExact) {
  rktest::Rng rng(5);
  FrameOptions o;
  o.u0 = 2.5;
  const Eigen::Matrix3d rot =
      Eigen::AngleAxisd(0.7, Vec3(1, 2, 3).normalized()).toRotationMatrix();
  o.frame0.e = rot.col(0);
  o.frame0.n = rot.col(1);
  o.frame0.z = rot.col(2);
  o.frame0.s = Vec3(1, -2, 0.5);
  const SurfacePtr s = frame_from_invariants(rktest::random_invariants(rng, {0, 10}), o);
  const FrameSample f = s->frame(2.5);
  EXPECT_EQ(f.e, o.frame0.e);
  EXPECT_EQ(f.n, o.frame0.n);
  EXPECT_EQ(f.z, o.frame0.z);
  EXPECT_EQ(f.s, o.frame0.s);
}

TEST(Frame, RejectsNonOrthonormalStart) {
  FrameOptions o;
  o.frame0.n = Vec3(1, 1, 0);
  EXPECT_THROW(frame_from_invariants(constant_invariants(1, 0, 0, {0, 1}), o), Error);
}

TEST(Frame, GramDriftEdlinger) {
  const SurfacePtr s = frame_from_invariants(constant_invariants(1, 1, -1, {0, 10}));
  double worst = 0.0;
  for (double u : linspace(0, 10, 4001)) {
    const FrameSample f = s->frame(u);
    Eigen::Matrix3d m;
    m << f.e, f.n, f.z;
    worst = std::max(worst, (m.transpose() * m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff());
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(Frame, StrictionProperty) {
  const CatalogEntry& e = find_entry("twisted");
  const SurfacePtr s = frame_from_invariants(load_invariants(e));
  const VecFn dir = directrix_fn(s);
  for (double u : linspace(0.1, 5.9, 50)) {
    const FrameSample f = s->frame(u);
    const Vec3 sp = dir(u).d[1];
    EXPECT_LT(std::abs(sp.dot(f.n)), 1e-8);
    // <s', e'> = <s', n> in standard parameters; check the directrix itself too.
    const Vec3 fd = rktest::fd_partial(
        [&](double a, double) { return s->frame(a).s; }, u, 0.0, 1, 1e-2);
    EXPECT_LT(std::abs(fd.dot(f.n)), 1e-8);
  }
}

TEST(Parametrization, HelicoidInvariants) {
  const Interval dom{-3, 3};
  VecFn s{[](double u) {
            VecJet j;
            j.d[0] = Vec3(0, 0, u);
            j.d[1] = Vec3(0, 0, 1);
            return j;
          },
          dom};
  VecFn e{[](double u) {
            VecJet j;
            const double c = std::cos(u), n = std::sin(u);
            j.d[0] = Vec3(c, n, 0);
            j.d[1] = Vec3(-n, c, 0);
            j.d[2] = Vec3(-c, -n, 0);
            j.d[3] = Vec3(n, -c, 0);
            return j;
          },
          dom};
  const Invariants inv = invariants_from_parametrization(s, e);
  for (double u : {-2.0, 0.0, 1.5}) {
    EXPECT_NEAR(inv.delta.value(u), 1.0, 1e-14);
    EXPECT_NEAR(inv.kappa.value(u), 0.0, 1e-14);
    EXPECT_NEAR(inv.lambda.value(u), 0.0, 1e-14);
  }

  VecFn e2 = e;
  e2.eval = [&](double u) {
    VecJet j = e.eval(u);
    for (Vec3& d : j.d) d *= 2.0;
    return j;
  };
  try {
    invariants_from_parametrization(s, e2);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::Precondition);
  }
}

TEST(Parametrization, RoundTrip) {
  rktest::Rng rng(21);
  for (int k = 0; k < 3; ++k) {
    const Invariants inv = rktest::random_invariants(rng, {0, 10}, k == 2);
    const SurfacePtr s = frame_from_invariants(inv);
    const Invariants back = invariants_from_parametrization(directrix_fn(s), generator_fn(s));
    for (double u : linspace(0, 10, 101)) {
      EXPECT_NEAR(back.delta.value(u), inv.delta.value(u), 1e-6);
      EXPECT_NEAR(back.kappa.value(u), inv.kappa.value(u), 1e-6);
      EXPECT_NEAR(back.lambda.value(u), inv.lambda.value(u), 1e-6);
    }
  }
}

TEST(Parametrization, SurfaceFromExactParametrization) {
  // Helicoid given directly; Euclidean data must match the integrated one.
  const Interval dom{-3, 3};
  VecFn s{[](double u) {
            VecJet j;
            j.d[0] = Vec3(0, 0, u);
            j.d[1] = Vec3(0, 0, 1);
            return j;
          },
          dom};
  VecFn e{[](double u) {
            VecJet j;
            const double c = std::cos(u), n = std::sin(u);
            j.d[0] = Vec3(c, n, 0);
            j.d[1] = Vec3(-n, c, 0);
            j.d[2] = Vec3(-c, -n, 0);
            j.d[3] = Vec3(n, -c, 0);
            return j;
          },
          dom};
  const SurfacePtr direct = surface_from_parametrization(s, e);
  const SurfacePtr integrated = helicoid();
  for (double u : {-2.0, 0.5}) {
    for (double v : {-1.0, 0.3}) {
      expect_vec(surface_point(*direct, u, v), surface_point(*integrated, u, v), 1e-11);
    }
  }
}

TEST(SurfaceSample, HelicoidAtZeroOne) {
  const SurfaceSample s = surface_sample(*helicoid(), 0.0, 1.0);
  EXPECT_NEAR(s.w, std::sqrt(2.0), 1e-15);
  expect_vec(s.x1, {0, 1, 1}, 1e-15);
  expect_vec(s.x2, {1, 0, 0}, 1e-15);
  expect_vec(s.xi, {0, 1 / std::sqrt(2.0), -1 / std::sqrt(2.0)}, 1e-15);
  EXPECT_NEAR(s.h11, 0.0, 1e-15);
  EXPECT_NEAR(s.h12, 1 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(s.h22, 0.0);
  EXPECT_NEAR(s.Kt, -0.25, 1e-15);
  EXPECT_NEAR(s.Ht, 0.0, 1e-15);
}

TEST(SurfaceSample, AlgebraicIdentities) {
  for (const char* name : {"twisted", "conoid-neg", "lc-sin"}) {
    const CatalogEntry& e = find_entry(name);
    const SurfacePtr s = frame_from_invariants(load_invariants(e));
    for (double u : linspace(e.domain.lo, e.domain.hi, 9)) {
      const double d = s->invariants().delta.value(u);
      EXPECT_NEAR(surface_sample(*s, u, 0.0).w, std::abs(d), 1e-15);
      for (double v : linspace(-2, 2, 9)) {
        const SurfaceSample x = surface_sample(*s, u, v);
        EXPECT_LT(x.Kt, 0.0);
        EXPECT_NEAR(x.Kt * std::pow(x.w, 4) + d * d, 0.0, 1e-14);
        EXPECT_EQ(x.h22, 0.0);
        EXPECT_NEAR(x.xi.norm(), 1.0, 1e-15);
        EXPECT_NEAR(x.xi.dot(x.x1), 0.0, 1e-14);
        EXPECT_NEAR(x.xi.dot(x.x2), 0.0, 1e-14);
      }
    }
  }
}

TEST(SurfaceSample, CurvaturesMatchFundamentalFormOracle) {
  const CatalogEntry& e = find_entry("twisted");
  const SurfacePtr s = frame_from_invariants(load_invariants(e));
  for (double u : linspace(0.2, 5.8, 16)) {
    for (double v : linspace(-1.5, 1.5, 16)) {
      const SurfaceSample x = surface_sample(*s, u, v);
      const rktest::Classical c = rktest::classical_curvature(*s, u, v);
      EXPECT_LT(rktest::rel_diff(x.Kt, c.K), 1e-6);
      EXPECT_LT(rktest::rel_diff(x.Ht, c.H, std::sqrt(-c.K)), 1e-6);
    }
  }
}

TEST(Invariants, ValidationRejectsVanishingDelta) {
  Invariants inv = constant_invariants(1, 0, 0, {0, 6});
  inv.delta = expr::compile("sin(u)", {0, 6});
  EXPECT_THROW(inv.validate(), Error);
  inv.delta = expr::compile("1+u", {0, 3});
  EXPECT_THROW(inv.validate(), Error);  // does not cover the domain
}

TEST(Invariants, StrictionAngle) {
  Invariants inv = constant_invariants(1, 0, 0, {0, 1});
  EXPECT_NEAR(inv.striction(0.5), M_PI / 2, 1e-15);
  inv.lambda = ScalarFn::constant(1.0, {0, 1});
  EXPECT_NEAR(inv.striction(0.5), M_PI / 4, 1e-15);
  inv.lambda = ScalarFn::constant(-1.0, {0, 1});
  EXPECT_NEAR(inv.striction(0.5), -M_PI / 4, 1e-15);
}
