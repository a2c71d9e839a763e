#pragma once

// Skew ruled surfaces x(u, v) = s(u) + v e(u) in standard parameters:
// |e| = |e'| = 1, <s', e'> = 0, u the arc length of the spherical image e(u).
// The moving frame {e, n = e', z = e x n} obeys
//   e' = n,  n' = -e + kappa z,  z' = -kappa n,  s' = delta lambda e + delta z.

#include <limits>
#include <memory>
#include <vector>

#include "scalar_fn.hpp"
#include "vec.hpp"

namespace rulekit {

/// Fundamental invariants: distribution parameter delta (nonzero on the
/// domain), conical curvature kappa and lambda = cot(striction).
struct Invariants {
  ScalarFn delta;
  ScalarFn kappa;
  ScalarFn lambda;
  Interval domain;

  /// Throws Error(Precondition) when delta vanishes or changes sign on a
  /// 256-point grid, or when a function's domain does not cover `domain`.
  void validate() const;

  /// Striction angle sigma = arccot(lambda) in (-pi/2, pi/2].
  double striction(double u) const;
};

struct FrameSample {
  double u = 0.0;
  Vec3 e = Vec3::UnitX();
  Vec3 n = Vec3::UnitY();
  Vec3 z = Vec3::UnitZ();
  Vec3 s = Vec3::Zero();  // striction point
};

/// Euclidean data at (u, v).
struct SurfaceSample {
  Vec3 x, x1, x2, xi;
  double w = 0.0;
  double h11 = 0.0, h12 = 0.0, h22 = 0.0;
  double Kt = 0.0;  // Gaussian curvature
  double Ht = 0.0;  // mean curvature
};

class RuledSurface {
 public:
  explicit RuledSurface(Invariants inv) : inv_(std::move(inv)) {}
  virtual ~RuledSurface() = default;

  virtual FrameSample frame(double u) const = 0;

  const Invariants& invariants() const { return inv_; }
  const Interval& domain() const { return inv_.domain; }

 private:
  Invariants inv_;
};

using SurfacePtr = std::shared_ptr<const RuledSurface>;

struct FrameOptions {
  /// Station of the initial frame; NaN selects the midpoint of the domain.
  double u0 = std::numeric_limits<double>::quiet_NaN();
  FrameSample frame0;  // identity axes, striction point at the origin
  double step = 1e-3;
};

/// Integrates the frame equations with fixed-step RK4 from u0 towards both
/// ends of the domain, re-orthonormalizing (modified Gram-Schmidt, e kept)
/// after every step. Dense output between nodes is cubic Hermite with node
/// derivatives taken from the ODE right-hand side. Throws Error(Precondition)
/// when frame0 is not orthonormal and right-handed within 1e-12.
SurfacePtr frame_from_invariants(Invariants inv, FrameOptions options = {});

/// Surface given directly by vector functions s(u), e(u) that already satisfy
/// the standard-parameter normalization. The invariants are derived with
/// invariants_from_parametrization.
SurfacePtr surface_from_parametrization(VecFn s, VecFn e);

/// delta = det(s', e, e'), kappa = det(e, e', e''), lambda = <s', e> / delta.
/// Validates |e| = |e'| = 1 and <s', e'> = 0 within 1e-8 on a grid of
/// `grid_points` stations and that delta does not vanish there; throws
/// Error(Precondition) otherwise. Jet orders not determined by the inputs are
/// NaN (kappa needs e''' for kappa', delta needs s''' for delta'').
Invariants invariants_from_parametrization(const VecFn& s, const VecFn& e,
                                           int grid_points = 257);

/// s(u) and e(u) of a surface with jets from the frame equations.
VecFn directrix_fn(SurfacePtr surface);
VecFn generator_fn(SurfacePtr surface);

/// Frame and invariant jets at one station.
struct Station {
  FrameSample frame;
  Jet3 delta, kappa, lambda;
};

Station station(const RuledSurface& surface, double u);

SurfaceSample surface_sample(const Station& st, double v);
SurfaceSample surface_sample(const RuledSurface& surface, double u, double v);

/// Position x(u, v) = s(u) + v e(u).
Vec3 surface_point(const RuledSurface& surface, double u, double v);

}  // namespace rulekit
