#include "right_normalization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "error.hpp"

namespace rulekit {

namespace {

constexpr double kDegenerateTol = 1e-14;

void check_q(double num, double f, double gv) {
  if (!(std::abs(num) > 1e-12 * std::max({1.0, std::abs(f), std::abs(gv)}))) {
    throw Error(ErrorCode::Singular, "support function vanishes (f + g v = 0)");
  }
}

}  // namespace

SupportPair make_support(ScalarFn f, ScalarFn g, Interval domain) {
  SupportPair sp;
  sp.f = std::move(f);
  sp.g = std::move(g);
  double fmax = 0.0, gmax = 0.0;
  for (double u : linspace(domain.lo, domain.hi, 256)) {
    fmax = std::max(fmax, std::abs(sp.f.value(u)));
    gmax = std::max(gmax, std::abs(sp.g.value(u)));
  }
  sp.central = fmax <= kDegenerateTol;
  sp.asymptotic = gmax <= kDegenerateTol;
  if (sp.central && sp.asymptotic) {
    throw Error(ErrorCode::Precondition, "f and g both vanish identically");
  }
  return sp;
}

bool RightPoint::is_pole() const {
  const double num = support_numerator();
  return !(std::abs(num) > 1e-12 * std::max({1.0, std::abs(f.v0), std::abs(g.v0 * v)}));
}

RightPoint right_point(const RuledSurface& surface, const SupportPair& sp, double u, double v) {
  RightPoint p;
  p.st = station(surface, u);
  p.v = v;
  p.w = std::sqrt(p.st.delta.v0 * p.st.delta.v0 + v * v);
  p.f = sp.f(u);
  p.g = sp.g(u);
  return p;
}

QJet right_q(const RightPoint& p) {
  const double v = p.v;
  // d/du with v fixed: w depends on u through delta.
  const Jet3 qu = (p.f + p.g * v) / sqrt(p.st.delta * p.st.delta + v * v);
  // d/dv with u fixed.
  const Jet3 V = Jet3::variable(v);
  const double d = p.st.delta.v0;
  const Jet3 qv = (p.f.v0 + p.g.v0 * V) / sqrt(d * d + V * V);
  return {qu.v0, qu.v1, qv.v1};
}

QEvaluator right_q(SurfacePtr surface, SupportPair sp) {
  return [surface = std::move(surface), sp = std::move(sp)](double u, double v) {
    return right_q(right_point(*surface, sp, u, v));
  };
}

RelativeNormal relative_normal(const RightPoint& p) {
  check_q(p.support_numerator(), p.f.v0, p.g.v0 * p.v);
  const double d = p.st.delta.v0, dp = p.st.delta.v1, k = p.st.kappa.v0;
  const double f = p.f.v0, fp = p.f.v1, g = p.g.v0, gp = p.g.v1, v = p.v;
  RelativeNormal out;
  out.y_frame = {((k * f - d * gp) * v + dp * f - d * fp - d * d * k * g) / (d * d), f / d, -g};
  const FrameSample& fr = p.st.frame;
  out.y = out.y_frame[0] * fr.e + out.y_frame[1] * fr.n + out.y_frame[2] * fr.z;
  return out;
}

RelativeNormal relative_normal(const RuledSurface& surface, const SupportPair& sp, double u,
                               double v) {
  return relative_normal(right_point(surface, sp, u, v));
}

RelativeNormal relative_normal_general(const Station& st, double v, const QJet& q) {
  if (q.q == 0.0) throw Error(ErrorCode::Singular, "support function vanishes");
  const double d = st.delta.v0, dp = st.delta.v1, k = st.kappa.v0;
  const double w2 = d * d + v * v, w = std::sqrt(w2);
  RelativeNormal out;
  out.y_frame = {-w * (d * q.q1 + q.q2 * (k * w2 + dp * v)) / (d * d),
                 (d * d * q.q - w2 * v * q.q2) / (d * w), -(v * q.q + w2 * q.q2) / w};
  const FrameSample& fr = st.frame;
  out.y = out.y_frame[0] * fr.e + out.y_frame[1] * fr.n + out.y_frame[2] * fr.z;
  return out;
}

RelativeSample relative_sample(const RightPoint& p) {
  const RelativeNormal yn = relative_normal(p);
  const double d = p.st.delta.v0, dp = p.st.delta.v1, dpp = p.st.delta.v2;
  const double k = p.st.kappa.v0, kp = p.st.kappa.v1, l = p.st.lambda.v0;
  const double f = p.f.v0, fp = p.f.v1, fpp = p.f.v2;
  const double g = p.g.v0, gp = p.g.v1, gpp = p.g.v2;
  const double v = p.v, w = p.w, w2 = w * w;
  const double d2 = d * d, d3 = d2 * d;
  const double num = f + g * v;

  RelativeSample s;
  s.q = num / w;
  s.y = yn.y;
  s.y_frame = yn.y_frame;
  s.H = (d * gp - k * f) / d2;
  s.B11 = s.B22 = s.H;
  s.B21 = 0.0;
  s.B12 = ((2 * k * dp * f - d * k * fp - d * dp * gp - d * kp * f + d2 * gpp) * v +
           d2 * f * (k * l + 1) + 2 * dp * (dp * f - d * fp) + d3 * gp * (k - l) + d3 * kp * g -
           d * dpp * f + d2 * fpp) /
          d3;
  s.K = s.B11 * s.B22 - s.B12 * s.B21;
  s.J = 3 * g * (k * g * v * v + 2 * d * gp * v + d2 * g * (k - l) - dp * f + 2 * d * fp) /
        (2 * d2 * num);
  s.S = -(k * g * g * v * v + 2 * k * f * g * v + d2 * g * g * (k - l) + 2 * k * f * f -
          dp * f * g + 2 * d * (fp * g - f * gp)) /
        (2 * d2 * num);
  const double gap = 3 * s.H - s.J - 3 * s.S;
  if (!(std::abs(gap) <= 1e-10 * (1 + std::abs(s.H) + std::abs(s.J) + std::abs(s.S)))) {
    std::ostringstream os;
    os << "3H - J - 3S = " << gap << " at v = " << v;
    throw Error(ErrorCode::Internal, os.str());
  }
  const double h11 = -(k * w2 + dp * v - d2 * l) / w, h12 = d / w;
  s.G11 = h11 / s.q;
  s.G12 = h12 / s.q;
  s.G22 = 0.0;
  s.Ginv11 = 0.0;
  s.Ginv12 = w * s.q / d;
  s.Ginv22 = w * s.q * (k * w2 + dp * v - d2 * l) / d2;
  return s;
}

RelativeSample relative_sample(const RuledSurface& surface, const SupportPair& sp, double u,
                               double v) {
  return relative_sample(right_point(surface, sp, u, v));
}

double pick_invariant_general(const Station& st, double v, const QJet& q) {
  if (q.q == 0.0) throw Error(ErrorCode::Singular, "support function vanishes");
  const double d = st.delta.v0, dp = st.delta.v1, k = st.kappa.v0, l = st.lambda.v0;
  const double w2 = d * d + v * v, w = std::sqrt(w2);
  return 3 * (w2 * q.q2 + v * q.q) / (2 * d * d * w2 * w * q.q) *
         (w2 * (k * q.q * v + 2 * d * q.q1 + q.q2 * (k * w2 + dp * v - d * d * l)) -
          d * d * q.q * (l * v - dp));
}

double pick_invariant_general(const RuledSurface& surface, const QEvaluator& q, double u,
                              double v) {
  return pick_invariant_general(station(surface, u), v, q(u, v));
}

const char* to_string(NormalizationType t) {
  return t == NormalizationType::First ? "first" : "second";
}

RelativeImage::RelativeImage(SurfacePtr surface, SupportPair sp, NormalizationType type)
    : surface_(std::move(surface)), sp_(std::move(sp)), type_(type) {
  if (type_ != NormalizationType::Second) return;
  const Invariants& inv = surface_->invariants();
  const ScalarFn& d = inv.delta;
  const ScalarFn& k = inv.kappa;
  const ScalarFn& f = sp_.f;
  const ScalarFn& g = sp_.g;
  const ScalarFn gp = derivative(g);
  const ScalarFn c = k * f - d * gp;  // kappa f - delta g'
  kappa_star_ = k;
  delta_star_ = c / d;
  // Jets of lambda* are exact to first order only (f'' and delta'' enter).
  const ScalarFn dp = derivative(d), dpp = derivative(dp);
  const ScalarFn fp = derivative(f), fpp = derivative(fp);
  const ScalarFn d2 = d * d;
  const ScalarFn top = d2 * d * (k * gp + derivative(k) * g) + d2 * (f + fpp) -
                       d * (dpp * f + 2.0 * (dp * fp)) + 2.0 * (dp * dp * f);
  lambda_star_ = (-1.0) * (top / (d2 * c));
}

void RelativeImage::require_second() const {
  if (type_ != NormalizationType::Second) {
    throw Error(ErrorCode::Precondition,
                "relative image is a curve (first type); starred invariants undefined");
  }
}

Vec3 RelativeImage::striction_star(double u) const {
  const Station st = station(*surface_, u);
  const Jet3 f = sp_.f(u), g = sp_.g(u);
  const double d = st.delta.v0, dp = st.delta.v1, k = st.kappa.v0;
  const FrameSample& fr = st.frame;
  return (dp * f.v0 - d * f.v1 - d * d * k * g.v0) / (d * d) * fr.e + f.v0 / d * fr.n -
         g.v0 * fr.z;
}

double RelativeImage::v_star(double u, double v) const {
  const Invariants& inv = surface_->invariants();
  const double d = inv.delta.value(u);
  return (inv.kappa.value(u) * sp_.f.value(u) - d * sp_.g(u).v1) * v / (d * d);
}

Vec3 RelativeImage::image_point(double u, double v) const {
  return striction_star(u) + v_star(u, v) * surface_->frame(u).e;
}

const ScalarFn& RelativeImage::kappa_star() const {
  require_second();
  return kappa_star_;
}

const ScalarFn& RelativeImage::delta_star() const {
  require_second();
  return delta_star_;
}

const ScalarFn& RelativeImage::lambda_star() const {
  require_second();
  return lambda_star_;
}

double RelativeImage::w_star(double u, double v) const {
  require_second();
  const Invariants& inv = surface_->invariants();
  const double d = inv.delta.value(u);
  const double H = (d * sp_.g(u).v1 - inv.kappa.value(u) * sp_.f.value(u)) / (d * d);
  return std::abs(H) * std::sqrt(d * d + v * v);
}

double RelativeImage::Kt_star(double u, double v) const {
  require_second();
  const Invariants& inv = surface_->invariants();
  const double d = inv.delta.value(u);
  const double c = inv.kappa.value(u) * sp_.f.value(u) - d * sp_.g(u).v1;
  const double w2 = d * d + v * v;
  return -std::pow(d, 6) / (w2 * w2 * c * c);
}

Vec3 RelativeImage::focal(double u) const {
  require_second();
  const Station st = station(*surface_, u);
  const Jet3 f = sp_.f(u), g = sp_.g(u);
  const double d = st.delta.v0, dp = st.delta.v1, k = st.kappa.v0;
  const FrameSample& fr = st.frame;
  const double den = d * g.v1 - k * f.v0;
  return fr.s + ((dp * f.v0 - d * f.v1 - d * d * k * g.v0) * fr.e + d * f.v0 * fr.n -
                 d * d * g.v0 * fr.z) /
                    den;
}

RelativeImage classify_and_image(SurfacePtr surface, const SupportPair& sp, int grid) {
  const Invariants& inv = surface->invariants();
  const std::vector<double> us = linspace(inv.domain.lo, inv.domain.hi, std::max(grid, 2));
  std::vector<double> c(us.size());
  double kf_max = 0.0, dg_max = 0.0;
  for (size_t i = 0; i < us.size(); ++i) {
    const double kf = inv.kappa.value(us[i]) * sp.f.value(us[i]);
    const double dg = inv.delta.value(us[i]) * sp.g(us[i]).v1;
    kf_max = std::max(kf_max, std::abs(kf));
    dg_max = std::max(dg_max, std::abs(dg));
    c[i] = dg - kf;
  }
  const double thr = 1e-10 * (1.0 + kf_max + dg_max);
  size_t zeros = 0;
  bool sign_change = false;
  for (size_t i = 0; i < c.size(); ++i) {
    if (std::abs(c[i]) <= thr) ++zeros;
    if (i > 0 && c[i] * c[i - 1] < 0.0) sign_change = true;
  }
  if (zeros == c.size()) return RelativeImage(std::move(surface), sp, NormalizationType::First);
  if (zeros > 0 || sign_change) {
    throw Error(ErrorCode::Precondition,
                "mixed type: delta g' - kappa f vanishes on part of the interval only");
  }
  return RelativeImage(std::move(surface), sp, NormalizationType::Second);
}

}  // namespace rulekit
