#pragma once

// Relative normalizations with support function q = (f(u) + g(u) v) / w,
// w^2 = delta^2 + v^2 (right normalizations), and the general-q evaluators
// used to cross-check them.

#include <functional>

#include "ruled_surface.hpp"

namespace rulekit {

struct SupportPair {
  ScalarFn f;
  ScalarFn g;
  bool asymptotic = false;  // g vanishes identically: y lies in the asymptotic plane
  bool central = false;     // f vanishes identically: y lies in the central plane

  bool degenerate() const { return asymptotic || central; }
};

/// Builds a support pair and sets the degenerate flags from a sup-norm test
/// on a 256-point grid of `domain` (threshold 1e-14 absolute).
SupportPair make_support(ScalarFn f, ScalarFn g, Interval domain);

/// Support function value and first partial derivatives at (u, v).
struct QJet {
  double q = 0.0;
  double q1 = 0.0;  // d/du
  double q2 = 0.0;  // d/dv
};

using QEvaluator = std::function<QJet(double u, double v)>;

/// Everything a closed form needs at one (u, v): frame, invariant jets,
/// support jets.
struct RightPoint {
  Station st;
  double v = 0.0;
  double w = 0.0;
  Jet3 f, g;

  double support_numerator() const { return f.v0 + g.v0 * v; }  // f + g v
  bool is_pole() const;  // f + g v vanishes (relative to its terms)
};

RightPoint right_point(const RuledSurface& surface, const SupportPair& sp, double u, double v);

/// q and its partials from the jets of f, g and delta (w depends on u through
/// delta); no finite differences.
QJet right_q(const RightPoint& p);
QEvaluator right_q(SurfacePtr surface, SupportPair sp);

struct RelativeNormal {
  Vec3 y;        // ambient vector
  Vec3 y_frame;  // coefficients (y1, y2, y3) in {e, n, z}
};

/// Closed form for right normalizations. Throws Error(Singular) at q = 0.
RelativeNormal relative_normal(const RightPoint& p);
RelativeNormal relative_normal(const RuledSurface& surface, const SupportPair& sp, double u,
                               double v);

/// Normal from an arbitrary support function via its partials.
RelativeNormal relative_normal_general(const Station& st, double v, const QJet& q);

struct RelativeSample {
  double q = 0.0;
  Vec3 y;
  Vec3 y_frame;
  double B11 = 0.0, B12 = 0.0, B21 = 0.0, B22 = 0.0;
  double H = 0.0;  // relative mean curvature (= both principal curvatures)
  double K = 0.0;  // relative curvature, det B
  double J = 0.0;  // Pick invariant
  double S = 0.0;  // scalar curvature of the relative metric
  double G11 = 0.0, G12 = 0.0, G22 = 0.0;
  double Ginv11 = 0.0, Ginv12 = 0.0, Ginv22 = 0.0;
};

/// All relative data from the closed forms. Checks S = H - J/3 to 1e-10
/// (relative to the magnitudes involved) and throws Error(Internal) if the
/// identity is broken. Throws Error(Singular) at q = 0.
RelativeSample relative_sample(const RightPoint& p);
RelativeSample relative_sample(const RuledSurface& surface, const SupportPair& sp, double u,
                               double v);

/// Pick invariant of an arbitrary support function from q and its first
/// partials. Throws Error(Singular) at q = 0.
double pick_invariant_general(const Station& st, double v, const QJet& q);
double pick_invariant_general(const RuledSurface& surface, const QEvaluator& q, double u,
                              double v);

enum class NormalizationType { First, Second };

const char* to_string(NormalizationType t);

/// The relative image y(u, v) of a right normalization. For the first type it
/// is the curve striction_star(u); for the second type it is the ruled
/// surface striction_star(u) + v_star e(u) with generators parallel to the
/// original ones.
class RelativeImage {
 public:
  RelativeImage(SurfacePtr surface, SupportPair sp, NormalizationType type);

  NormalizationType type() const { return type_; }

  Vec3 striction_star(double u) const;
  double v_star(double u, double v) const;
  /// y(u, v) = striction_star(u) + v_star(u, v) e(u).
  Vec3 image_point(double u, double v) const;

  // Second type only (throw Error(Precondition) for the first type).
  const ScalarFn& kappa_star() const;
  const ScalarFn& delta_star() const;
  const ScalarFn& lambda_star() const;
  double w_star(double u, double v) const;   // |H| w
  double Kt_star(double u, double v) const;  // Gaussian curvature of the image
  Vec3 focal(double u) const;                // the focal curve

 private:
  void require_second() const;

  SurfacePtr surface_;
  SupportPair sp_;
  NormalizationType type_;
  ScalarFn kappa_star_, delta_star_, lambda_star_;
};

/// Decides the type from sup |delta g' - kappa f| over a u-grid against
/// 1e-10 (1 + max|kappa f| + max|delta g'|). Throws Error(Precondition) if the
/// quantity vanishes on part of the interval only (mixed type).
RelativeImage classify_and_image(SurfacePtr surface, const SupportPair& sp, int grid = 256);

}  // namespace rulekit
