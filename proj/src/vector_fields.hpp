#pragma once

// Tchebychev field T, support field Q, their divergences, the distinguished
// curve families and tangency/orthogonality tests.

#include <functional>
#include <limits>
#include <string>

#include "right_normalization.hpp"

namespace rulekit {

struct Tchebychev {
  double T1 = 0.0, T2 = 0.0;  // contravariant components
  Vec3 T;                     // ambient vector
  Vec3 T_frame;               // coefficients in {e, n, z}
};

/// Frame form for right normalizations; T1, T2 from the component form with
/// q-jets. Throws Error(Internal) when |T1 x1 + T2 x2 - T| > 1e-8 (1 + |T|),
/// Error(Singular) at q = 0.
Tchebychev tchebychev(const RightPoint& p);
Tchebychev tchebychev(const RuledSurface& surface, const SupportPair& sp, double u, double v);

/// Component form for an arbitrary support function; T = T1 x1 + T2 x2.
Tchebychev tchebychev_general(const Station& st, double v, const QJet& q);

/// Closed form of the support vector. Throws Error(Singular) at f + g v = 0.
Vec3 support_vector(const RightPoint& p);
Vec3 support_vector(const RuledSurface& surface, const SupportPair& sp, double u, double v);
Vec3 support_vector_frame(const RightPoint& p);  // coefficients in {e, n, z}

/// Q = 1/4 G^(ij) (1/q)_/i x_/j for an arbitrary support function, using the
/// inverse relative metric of a ruled surface (G22 = 0).
Vec3 support_vector_general(const Station& st, double v, const QJet& q);

struct Divergences {
  double divI = 0.0;  // with respect to the first fundamental form
  double divG = 0.0;  // with respect to the relative metric
};

Divergences divergences(const RightPoint& p);
Divergences divergences(const RuledSurface& surface, const SupportPair& sp, double u, double v);

/// (w T^i)_/i / w and (sqrt|det G| T^i)_/i / sqrt|det G| with finite
/// differences (step h in u and v) of the component form. (u, v) must be at
/// least 4h inside the domain of the invariants and of f, g.
Divergences divergences_fd(const RuledSurface& surface, const SupportPair& sp, double u,
                           double v, double h = 1e-3);

struct FieldSample {
  double T1 = 0.0, T2 = 0.0;
  Vec3 T;
  Vec3 Q;
  double divI = 0.0, divG = 0.0;
};

FieldSample field_sample(const RightPoint& p);

enum class FamilyKind {
  Generators,       // v-curves, tangent e
  UCurves,          // curves of constant striction distance, v' = 0
  CurvedAsymptotic, // curved asymptotic lines
  KtCurves,         // curves of constant Gaussian curvature
};

const char* to_string(FamilyKind k);

struct CurveFamily {
  FamilyKind kind = FamilyKind::UCurves;

  /// v' along the family through (u, v). Throws Error(Singular) when the
  /// relation does not determine v' (K-curves at v = 0 with delta' != 0) and
  /// Error(Precondition) for Generators (not a graph v = v(u)).
  double vprime(const Station& st, double v) const;

  /// The defining relation evaluated at (v, v'); zero on the family.
  double relation(const Station& st, double v, double vp) const;
};

/// Tangent direction of the family at (u, v): (delta lambda + v') e + v n +
/// delta z, or e for Generators.
Vec3 curve_tangent(const Station& st, const CurveFamily& family, double v);
Vec3 curve_tangent(const RuledSurface& surface, const CurveFamily& family, double u, double v);

enum class FieldKind { T, Q };
enum class AngleMode { Tangential, Orthogonal };

const char* to_string(FieldKind k);
const char* to_string(AngleMode m);

/// Scale-free geometric residual: |a x b|/(|a||b|) (tangential) or
/// |<a, b>|/(|a||b|) (orthogonal).
double angle_residual(const Vec3& field, const Vec3& tangent, AngleMode mode);

/// The polynomial-in-v condition for (field, family, mode) as printed for
/// right normalizations; where none is printed the general relation with the
/// family's v' substituted is used. Returns NaN for combinations that have
/// no condition (tangency to the generators).
double printed_condition(FieldKind field, FamilyKind family, AngleMode mode, const RightPoint& p);

struct Region {
  Interval u;
  Interval v;
  int nu = 32;
  int nv = 32;
};

struct AngleReport {
  double max_geometric = 0.0;
  double max_condition = 0.0;
  double worst_u = std::numeric_limits<double>::quiet_NaN();
  double worst_v = std::numeric_limits<double>::quiet_NaN();
  int samples = 0;           // points that contributed a geometric residual
  int skipped_zero_field = 0;
  int skipped_unsolvable = 0;
  int skipped_pole = 0;
};

/// Evaluates both residuals on the region grid (parallel over u-rows).
AngleReport angle_test(FieldKind field, const CurveFamily& family, const RuledSurface& surface,
                       const SupportPair& sp, const Region& region, AngleMode mode);

}  // namespace rulekit
