#include "vector_fields.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "error.hpp"
#include "parallel.hpp"

namespace rulekit {

namespace {

void require_support(const RightPoint& p) {
  if (p.is_pole()) throw Error(ErrorCode::Singular, "support function vanishes (f + g v = 0)");
}

Vec3 from_frame(const FrameSample& fr, const Vec3& c) { return c[0] * fr.e + c[1] * fr.n + c[2] * fr.z; }

// Plain values of everything the closed forms use.
struct Vals {
  double d, dp, k, l, f, fp, g, gp, v, w2;
};

Vals vals(const RightPoint& p) {
  return {p.st.delta.v0, p.st.delta.v1, p.st.kappa.v0, p.st.lambda.v0, p.f.v0, p.f.v1,
          p.g.v0,        p.g.v1,        p.v,           p.w * p.w};
}

// e-coefficient numerator of T (times 2 delta^2).
double t_e_numerator(const Vals& a) {
  return 2 * a.k * a.g * a.v * a.v + (a.dp * a.g + 2 * a.d * a.gp) * a.v +
         2 * a.d * a.d * a.k * a.g - a.dp * a.f + 2 * a.d * a.fp;
}

// The bracket of the e-coefficient of Q.
double q_e_bracket(const Vals& a) {
  return (a.d * a.gp - a.k * a.f) * a.v + a.d * a.d * a.k * a.g - a.dp * a.f + a.d * a.fp;
}

}  // namespace

Tchebychev tchebychev_general(const Station& st, double v, const QJet& q) {
  if (q.q == 0.0) throw Error(ErrorCode::Singular, "support function vanishes");
  const double d = st.delta.v0, dp = st.delta.v1, k = st.kappa.v0, l = st.lambda.v0;
  const double w2 = d * d + v * v, w = std::sqrt(w2);
  Tchebychev t;
  t.T1 = (w2 * q.q2 + v * q.q) / (d * w);
  t.T2 = (2 * d * w2 * q.q1 + dp * q.q * (d * d - v * v)) / (2 * d * d * w) +
         t.T1 * (k * w2 + dp * v - d * d * l) / d;
  // x1 = delta lambda e + v n + delta z, x2 = e
  t.T_frame = {t.T1 * d * l + t.T2, t.T1 * v, t.T1 * d};
  t.T = from_frame(st.frame, t.T_frame);
  return t;
}

Tchebychev tchebychev(const RightPoint& p) {
  require_support(p);
  const Vals a = vals(p);
  Tchebychev t = tchebychev_general(p.st, p.v, right_q(p));
  const Vec3 components = t.T_frame;
  t.T_frame = {t_e_numerator(a) / (2 * a.d * a.d), a.g * a.v / a.d, a.g};
  t.T = from_frame(p.st.frame, t.T_frame);
  const double gap = (components - t.T_frame).norm();
  if (!(gap <= 1e-8 * (1.0 + t.T_frame.norm()))) {
    std::ostringstream os;
    os << "Tchebychev frame and component forms disagree by " << gap;
    throw Error(ErrorCode::Internal, os.str());
  }
  return t;
}

Tchebychev tchebychev(const RuledSurface& surface, const SupportPair& sp, double u, double v) {
  return tchebychev(right_point(surface, sp, u, v));
}

Vec3 support_vector_frame(const RightPoint& p) {
  require_support(p);
  const Vals a = vals(p);
  const double w = std::sqrt(a.w2);
  const double num = a.g * a.v + a.f;
  const double ce = -w * q_e_bracket(a) / (4 * a.d * a.d * num);
  const double cz = (a.f * a.v - a.d * a.d * a.g) / (4 * a.d * w * num);
  return {ce, cz * a.v, cz * a.d};
}

Vec3 support_vector(const RightPoint& p) { return from_frame(p.st.frame, support_vector_frame(p)); }

Vec3 support_vector(const RuledSurface& surface, const SupportPair& sp, double u, double v) {
  return support_vector(right_point(surface, sp, u, v));
}

Vec3 support_vector_general(const Station& st, double v, const QJet& q) {
  if (q.q == 0.0) throw Error(ErrorCode::Singular, "support function vanishes");
  const double d = st.delta.v0, dp = st.delta.v1, k = st.kappa.v0, l = st.lambda.v0;
  const double w2 = d * d + v * v, w = std::sqrt(w2);
  const double gi12 = w * q.q / d;
  const double gi22 = w * q.q * (k * w2 + dp * v - d * d * l) / (d * d);
  // (1/q)_/i = -q_/i / q^2
  const double r1 = -q.q1 / (q.q * q.q), r2 = -q.q2 / (q.q * q.q);
  const double c1 = 0.25 * (gi12 * r2);  // G^11 = 0
  const double c2 = 0.25 * (gi12 * r1 + gi22 * r2);
  const Vec3 frame_coeffs{c1 * d * l + c2, c1 * v, c1 * d};
  return from_frame(st.frame, frame_coeffs);
}

Divergences divergences(const RightPoint& p) {
  require_support(p);
  const Vals a = vals(p);
  const double d2 = a.d * a.d, v = a.v;
  Divergences out;
  out.divI = (6 * a.k * a.g * v * v * v + 6 * a.d * a.gp * v * v +
              (6 * d2 * a.k * a.g - 2 * d2 * a.l * a.g - a.dp * a.f + 2 * a.d * a.fp) * v +
              d2 * (a.dp * a.g + 4 * a.d * a.gp)) /
             (2 * d2 * a.w2);
  out.divG = (a.k * a.g * a.g * v * v + 2 * a.k * a.f * a.g * v - d2 * a.g * a.g * (a.k - a.l) +
              a.dp * a.f * a.g - 2 * a.d * a.g * a.fp + 2 * a.d * a.f * a.gp) /
             (d2 * (a.g * v + a.f));
  return out;
}

Divergences divergences(const RuledSurface& surface, const SupportPair& sp, double u, double v) {
  return divergences(right_point(surface, sp, u, v));
}

Divergences divergences_fd(const RuledSurface& surface, const SupportPair& sp, double u,
                           double v, double h) {
  struct Parts {
    double wT1, wT2, rT1, rT2, w, r;
  };
  auto parts = [&](double uu, double vv) {
    const RightPoint p = right_point(surface, sp, uu, vv);
    const Tchebychev t = tchebychev_general(p.st, vv, right_q(p));
    const double q = p.support_numerator() / p.w;
    const double r = std::abs(p.st.delta.v0) / (p.w * std::abs(q));  // sqrt|det G|
    return Parts{p.w * t.T1, p.w * t.T2, r * t.T1, r * t.T2, p.w, r};
  };
  const Parts c = parts(u, v);
  const double dI =
      fd_jet([&](double t) { return parts(t, v).wT1; }, u, h).v1 +
      fd_jet([&](double t) { return parts(u, t).wT2; }, v, h).v1;
  const double dG =
      fd_jet([&](double t) { return parts(t, v).rT1; }, u, h).v1 +
      fd_jet([&](double t) { return parts(u, t).rT2; }, v, h).v1;
  return {dI / c.w, dG / c.r};
}

FieldSample field_sample(const RightPoint& p) {
  const Tchebychev t = tchebychev(p);
  const Divergences dv = divergences(p);
  FieldSample out;
  out.T1 = t.T1;
  out.T2 = t.T2;
  out.T = t.T;
  out.Q = support_vector(p);
  out.divI = dv.divI;
  out.divG = dv.divG;
  return out;
}

const char* to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::Generators: return "generators";
    case FamilyKind::UCurves: return "u_curves";
    case FamilyKind::CurvedAsymptotic: return "curved_asymptotic";
    case FamilyKind::KtCurves: return "Ktilde_curves";
  }
  return "?";
}

const char* to_string(FieldKind k) { return k == FieldKind::T ? "T" : "Q"; }

const char* to_string(AngleMode m) {
  return m == AngleMode::Tangential ? "tangential" : "orthogonal";
}

double CurveFamily::vprime(const Station& st, double v) const {
  const double d = st.delta.v0, dp = st.delta.v1, k = st.kappa.v0, l = st.lambda.v0;
  switch (kind) {
    case FamilyKind::Generators:
      throw Error(ErrorCode::Precondition, "generators are not curves v = v(u)");
    case FamilyKind::UCurves:
      return 0.0;
    case FamilyKind::CurvedAsymptotic:
      return (k * v * v + dp * v + d * d * (k - l)) / (2 * d);
    case FamilyKind::KtCurves:
      if (std::abs(dp) <= 1e-14 * (1.0 + std::abs(d))) return 0.0;
      if (v == 0.0) {
        throw Error(ErrorCode::Singular,
                    "K-curve direction undetermined at v = 0 where delta' != 0");
      }
      return -dp * (d * d - v * v) / (2 * d * v);
  }
  throw Error(ErrorCode::Internal, "unknown curve family");
}

double CurveFamily::relation(const Station& st, double v, double vp) const {
  const double d = st.delta.v0, dp = st.delta.v1, k = st.kappa.v0, l = st.lambda.v0;
  switch (kind) {
    case FamilyKind::Generators:
      return 0.0;
    case FamilyKind::UCurves:
      return vp;
    case FamilyKind::CurvedAsymptotic:
      return k * v * v + dp * v + d * d * (k - l) - 2 * d * vp;
    case FamilyKind::KtCurves:
      return 2 * d * v * vp + dp * (d * d - v * v);
  }
  throw Error(ErrorCode::Internal, "unknown curve family");
}

Vec3 curve_tangent(const Station& st, const CurveFamily& family, double v) {
  const FrameSample& fr = st.frame;
  if (family.kind == FamilyKind::Generators) return fr.e;
  const double vp = family.vprime(st, v);
  const double d = st.delta.v0;
  return (d * st.lambda.v0 + vp) * fr.e + v * fr.n + d * fr.z;
}

Vec3 curve_tangent(const RuledSurface& surface, const CurveFamily& family, double u, double v) {
  return curve_tangent(station(surface, u), family, v);
}

double angle_residual(const Vec3& field, const Vec3& tangent, AngleMode mode) {
  const double scale = field.norm() * tangent.norm();
  if (mode == AngleMode::Tangential) return field.cross(tangent).norm() / scale;
  return std::abs(field.dot(tangent)) / scale;
}

double printed_condition(FieldKind field, FamilyKind family, AngleMode mode,
                         const RightPoint& p) {
  const Vals a = vals(p);
  const double d = a.d, dp = a.dp, k = a.k, l = a.l, f = a.f, fp = a.fp, g = a.g, gp = a.gp;
  const double v = a.v, d2 = d * d, d3 = d2 * d, kl1 = k * l + 1;
  const bool tan = mode == AngleMode::Tangential;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  if (family == FamilyKind::Generators) {
    if (tan) return nan;
    return field == FieldKind::T ? t_e_numerator(a) : q_e_bracket(a);
  }

  if (field == FieldKind::T) {
    switch (family) {
      case FamilyKind::UCurves:
        if (tan) {
          return 2 * k * g * v * v + (dp * g + 2 * d * gp) * v + 2 * d2 * g * (k - l) - dp * f +
                 2 * d * fp;
        }
        return 2 * g * kl1 * v * v + l * (dp * g + 2 * d * gp) * v + 2 * d2 * g * kl1 +
               l * (2 * d * fp - dp * f);
      case FamilyKind::CurvedAsymptotic:
        if (tan) return k * g * v * v + 2 * d * gp * v + d2 * g * (k - l) - dp * f + 2 * d * fp;
        break;
      case FamilyKind::KtCurves:
        if (tan) {
          return 2 * k * g * v * v * v + 2 * d * gp * v * v +
                 (2 * d2 * g * (k - l) - dp * f + 2 * d * fp) * v + d2 * dp * g;
        }
        return 2 * k * dp * g * std::pow(v, 4) +
               (4 * d2 * g * kl1 + dp * (dp * g + 2 * d * gp)) * v * v * v +
               (2 * d2 * dp * l * g - dp * dp * f + 2 * d * dp * fp + 4 * d3 * l * gp) * v * v +
               d2 * (4 * d2 * g * kl1 - 2 * dp * l * f - dp * dp * g + 4 * d * l * fp -
                     2 * d * dp * gp) *
                   v -
               d2 * dp * (2 * d2 * k * g - dp * f + 2 * d * fp);
      default:
        break;
    }
    // General relations with the family's v' substituted.
    const double A = t_e_numerator(a);
    const double s = d * l + CurveFamily{family}.vprime(p.st, v);
    return tan ? A - 2 * d * g * s : A * s + 2 * d * g * a.w2;
  }

  switch (family) {
    case FamilyKind::UCurves:
      if (tan) {
        return (k * f - d * gp) * v * v * v + (-d2 * k * g + dp * f - d * fp) * v * v +
               d2 * (f * (k - l) - d * gp) * v - d2 * (d2 * g * (k - l) - dp * f + d * fp);
      }
      return (f * kl1 - d * l * gp) * v - d2 * g * kl1 + l * (dp * f - d * fp);
    case FamilyKind::CurvedAsymptotic:
      if (tan) {
        return (k * f - 2 * d * gp) * v * v * v + (-d2 * k * g + dp * f - 2 * d * fp) * v * v +
               d2 * (f * (k - l) + dp * g - 2 * d * gp) * v -
               d2 * (d2 * g * (k - l) - 2 * dp * f + 2 * d * fp);
      }
      break;
    case FamilyKind::KtCurves:
      if (tan) {
        return 2 * (k * f - d * gp) * std::pow(v, 4) -
               (2 * d2 * k * g - dp * f + 2 * d * fp) * v * v * v +
               d2 * (2 * f * (k - l) + dp * g - 2 * d * gp) * v * v -
               d2 * (2 * d2 * g * (k - l) - 3 * dp * f + 2 * d * fp) * v - d2 * d2 * dp * g;
      }
      return dp * (k * f - d * gp) * v * v * v +
             (2 * d2 * f * kl1 - d2 * dp * k * g + dp * dp * f - d * dp * fp - 2 * d3 * l * gp) *
                 v * v -
             d2 * (2 * d2 * g * kl1 + dp * k * f + 2 * l * (d * fp - dp * f) - d * dp * gp) * v +
             d2 * dp * (d2 * k * g - dp * f + d * fp);
    default:
      break;
  }
  const double P = q_e_bracket(a);
  const double s = d * l + CurveFamily{family}.vprime(p.st, v);
  const double m = d * (f * v - d2 * g);
  return tan ? a.w2 * P + m * s : -s * P + m;
}

AngleReport angle_test(FieldKind field, const CurveFamily& family, const RuledSurface& surface,
                       const SupportPair& sp, const Region& region, AngleMode mode) {
  if (region.nu < 1 || region.nv < 1) throw Error(ErrorCode::Precondition, "empty grid");
  const std::vector<double> us = linspace(region.u.lo, region.u.hi, region.nu);
  const std::vector<double> vs = linspace(region.v.lo, region.v.hi, region.nv);

  enum class State { Ok, Zero, Unsolvable, Pole };
  struct Cell {
    State state = State::Ok;
    double geometric = 0.0;
    double condition = 0.0;
  };
  std::vector<Cell> cells(us.size() * vs.size());

  parallel_for(static_cast<int>(us.size()), [&](int i) {
    const Station st = station(surface, us[i]);
    const Jet3 f = sp.f(us[i]), g = sp.g(us[i]);
    for (size_t j = 0; j < vs.size(); ++j) {
      Cell& c = cells[i * vs.size() + j];
      RightPoint p;
      p.st = st;
      p.v = vs[j];
      p.w = std::sqrt(st.delta.v0 * st.delta.v0 + p.v * p.v);
      p.f = f;
      p.g = g;
      if (p.is_pole()) {
        c.state = State::Pole;
        continue;
      }
      const Vec3 vec = field == FieldKind::T ? tchebychev(p).T : support_vector(p);
      Vec3 tangent;
      try {
        tangent = curve_tangent(st, family, p.v);
        c.condition = std::abs(printed_condition(field, family.kind, mode, p));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Singular) throw;
        c.state = State::Unsolvable;
        continue;
      }
      const double size = std::max({1.0, std::abs(f.v0), std::abs(g.v0)});
      if (vec.norm() <= 1e-12 * size) {
        c.state = State::Zero;
        continue;
      }
      c.geometric = angle_residual(vec, tangent, mode);
    }
  });

  AngleReport r;
  for (size_t i = 0; i < us.size(); ++i) {
    for (size_t j = 0; j < vs.size(); ++j) {
      const Cell& c = cells[i * vs.size() + j];
      switch (c.state) {
        case State::Pole: ++r.skipped_pole; continue;
        case State::Unsolvable: ++r.skipped_unsolvable; continue;
        case State::Zero: ++r.skipped_zero_field; break;
        case State::Ok:
          ++r.samples;
          // NaN is sticky so a broken point cannot hide behind later ones.
          if (!std::isnan(r.max_geometric) &&
              (std::isnan(c.geometric) || c.geometric > r.max_geometric)) {
            r.max_geometric = c.geometric;
            r.worst_u = us[i];
            r.worst_v = vs[j];
          }
          break;
      }
      if (!std::isnan(c.condition)) r.max_condition = std::max(r.max_condition, c.condition);
    }
  }
  return r;
}

}  // namespace rulekit
