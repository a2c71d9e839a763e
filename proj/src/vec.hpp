#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <array>
#include <functional>

#include "scalar_fn.hpp"

namespace rulekit {

using Vec3 = Eigen::Vector3d;

/// A 3-vector valued function of u with its first three derivatives.
struct VecJet {
  std::array<Vec3, 4> d{Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};

  const Vec3& value() const { return d[0]; }
  /// Component k as a scalar jet.
  Jet3 component(int k) const { return {d[0][k], d[1][k], d[2][k], d[3][k]}; }
};

/// Vector function of u on a closed interval.
struct VecFn {
  std::function<VecJet(double)> eval;
  Interval domain;

  VecJet operator()(double u) const;
};

/// Componentwise finite-difference jets of a plain vector function. The
/// returned VecFn is defined on `domain` shrunk by 4h_max so every stencil
/// stays inside the original domain.
VecFn fd_vec_fn(std::function<Vec3(double)> plain, Interval domain);

/// det(a, b, c) = <a x b, c>.
inline double triple(const Vec3& a, const Vec3& b, const Vec3& c) {
  return a.cross(b).dot(c);
}

/// det(a, b, c) for vector jets, differentiated with the product rule.
Jet3 triple(const VecJet& a, const VecJet& b, const VecJet& c);

/// <a, b> for vector jets.
Jet3 dot(const VecJet& a, const VecJet& b);

/// The jet of a'.
VecJet shift(const VecJet& a);

}  // namespace rulekit
