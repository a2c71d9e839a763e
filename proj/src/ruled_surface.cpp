#include "ruled_surface.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "error.hpp"

namespace rulekit {

void Invariants::validate() const {
  if (!(domain.lo < domain.hi)) {
    throw Error(ErrorCode::Precondition, "invariants need a nonempty interval");
  }
  for (const ScalarFn* fn : {&delta, &kappa, &lambda}) {
    if (fn->empty()) throw Error(ErrorCode::Precondition, "missing invariant function");
    if (fn->domain().lo > domain.lo || fn->domain().hi < domain.hi) {
      throw Error(ErrorCode::Precondition,
                  "invariant " + fn->label() + " not defined on the whole interval");
    }
  }
  int sign = 0;
  for (double u : linspace(domain.lo, domain.hi, 256)) {
    const double d = delta.value(u);
    const int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (s == 0 || (sign != 0 && s != sign)) {
      std::ostringstream os;
      os << "distribution parameter vanishes or changes sign near u = " << u
         << " (surface is not skew)";
      throw Error(ErrorCode::Precondition, os.str());
    }
    sign = s;
  }
}

double Invariants::striction(double u) const {
  // cot(sigma) = lambda with sigma in (-pi/2, pi/2]
  const double l = lambda.value(u);
  const double sigma = std::atan2(1.0, l);  // in (0, pi)
  return sigma > M_PI / 2 ? sigma - M_PI : sigma;
}

namespace {

struct FrameState {
  Vec3 e, n, z, s;
};

struct FrameRate {
  Vec3 de, dn, dz, ds;
};

FrameRate rate(const Invariants& inv, double u, const FrameState& x) {
  const double k = inv.kappa.value(u);
  const double d = inv.delta.value(u);
  const double l = inv.lambda.value(u);
  return {x.n, -x.e + k * x.z, -k * x.n, d * l * x.e + d * x.z};
}

FrameState axpy(const FrameState& x, double h, const FrameRate& r) {
  return {x.e + h * r.de, x.n + h * r.dn, x.z + h * r.dz, x.s + h * r.ds};
}

void orthonormalize(FrameState& x) {
  x.e.normalize();
  x.n -= x.n.dot(x.e) * x.e;
  x.n.normalize();
  x.z = x.e.cross(x.n);
}

FrameState rk4(const Invariants& inv, double u, const FrameState& x, double h) {
  const FrameRate k1 = rate(inv, u, x);
  const FrameRate k2 = rate(inv, u + 0.5 * h, axpy(x, 0.5 * h, k1));
  const FrameRate k3 = rate(inv, u + 0.5 * h, axpy(x, 0.5 * h, k2));
  const FrameRate k4 = rate(inv, u + h, axpy(x, h, k3));
  FrameState out{
      x.e + h / 6.0 * (k1.de + 2.0 * k2.de + 2.0 * k3.de + k4.de),
      x.n + h / 6.0 * (k1.dn + 2.0 * k2.dn + 2.0 * k3.dn + k4.dn),
      x.z + h / 6.0 * (k1.dz + 2.0 * k2.dz + 2.0 * k3.dz + k4.dz),
      x.s + h / 6.0 * (k1.ds + 2.0 * k2.ds + 2.0 * k3.ds + k4.ds)};
  orthonormalize(out);
  return out;
}

Vec3 hermite(double t, double h, const Vec3& p0, const Vec3& m0, const Vec3& p1,
             const Vec3& m1) {
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * h * m0 +
         (-2 * t3 + 3 * t2) * p1 + (t3 - t2) * h * m1;
}

class IntegratedSurface final : public RuledSurface {
 public:
  IntegratedSurface(Invariants inv, const FrameOptions& opt) : RuledSurface(std::move(inv)) {
    const Invariants& iv = invariants();
    const double u0 = std::isnan(opt.u0) ? iv.domain.mid() : opt.u0;
    if (!iv.domain.contains(u0)) {
      throw Error(ErrorCode::Precondition, "initial station outside the interval");
    }
    if (!(opt.step > 0.0)) throw Error(ErrorCode::Precondition, "step must be positive");
    const FrameSample& f0 = opt.frame0;
    const Eigen::Matrix3d basis =
        (Eigen::Matrix3d() << f0.e, f0.n, f0.z).finished();
    const double gram_dev =
        (basis.transpose() * basis - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
    if (gram_dev > 1e-12 || (f0.e.cross(f0.n) - f0.z).norm() > 1e-12) {
      throw Error(ErrorCode::Precondition, "initial frame is not orthonormal and right-handed");
    }

    const FrameState start{f0.e, f0.n, f0.z, f0.s};
    std::vector<Node> down;
    march(u0, start, iv.domain.lo, -opt.step, down);
    std::vector<Node> up;
    march(u0, start, iv.domain.hi, opt.step, up);
    nodes_.assign(down.rbegin(), down.rend());
    nodes_.push_back(make_node(u0, start));
    nodes_.insert(nodes_.end(), up.begin(), up.end());
  }

  FrameSample frame(double u) const override {
    if (!domain().contains(u)) {
      std::ostringstream os;
      os << "u = " << u << " outside the surface interval";
      throw Error(ErrorCode::Domain, os.str());
    }
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), u,
                               [](double x, const Node& nd) { return x < nd.u; });
    const std::size_t hi_idx =
        std::min<std::size_t>(static_cast<std::size_t>(it - nodes_.begin()), nodes_.size() - 1);
    const std::size_t lo_idx = hi_idx == 0 ? 0 : hi_idx - 1;
    const Node& a = nodes_[lo_idx];
    if (a.u == u || nodes_.size() == 1) return {u, a.x.e, a.x.n, a.x.z, a.x.s};
    const Node& b = nodes_[hi_idx];
    if (b.u == u) return {u, b.x.e, b.x.n, b.x.z, b.x.s};
    const double h = b.u - a.u;
    const double t = (u - a.u) / h;
    FrameState x{hermite(t, h, a.x.e, a.r.de, b.x.e, b.r.de),
                 hermite(t, h, a.x.n, a.r.dn, b.x.n, b.r.dn), Vec3::Zero(),
                 hermite(t, h, a.x.s, a.r.ds, b.x.s, b.r.ds)};
    orthonormalize(x);
    return {u, x.e, x.n, x.z, x.s};
  }

 private:
  struct Node {
    double u;
    FrameState x;
    FrameRate r;
  };

  Node make_node(double u, const FrameState& x) const {
    return {u, x, rate(invariants(), u, x)};
  }

  void march(double u0, FrameState x, double end, double step, std::vector<Node>& out) const {
    double u = u0;
    const double dir = step > 0 ? 1.0 : -1.0;
    while (dir * (end - u) > 0.0) {
      double h = step;
      // land exactly on the end point; avoid a sliver step
      if (dir * (end - (u + h)) < 0.5 * std::abs(step)) h = end - u;
      x = rk4(invariants(), u, x, h);
      u = (h == end - u) ? end : u + h;
      out.push_back(make_node(u, x));
    }
  }

  std::vector<Node> nodes_;
};

class ParametrizedSurface final : public RuledSurface {
 public:
  ParametrizedSurface(VecFn s, VecFn e, Invariants inv)
      : RuledSurface(std::move(inv)), s_(std::move(s)), e_(std::move(e)) {}

  FrameSample frame(double u) const override {
    const VecJet ej = e_(u);
    FrameSample f;
    f.u = u;
    f.e = ej.d[0];
    f.n = ej.d[1];
    f.z = f.e.cross(f.n);
    f.s = s_(u).value();
    return f;
  }

 private:
  VecFn s_;
  VecFn e_;
};

}  // namespace

SurfacePtr frame_from_invariants(Invariants inv, FrameOptions options) {
  inv.validate();
  return std::make_shared<IntegratedSurface>(std::move(inv), options);
}

Invariants invariants_from_parametrization(const VecFn& s, const VecFn& e,
                                           int grid_points) {
  const Interval dom{std::max(s.domain.lo, e.domain.lo), std::min(s.domain.hi, e.domain.hi)};
  if (!(dom.lo < dom.hi)) throw Error(ErrorCode::Precondition, "empty parametrization interval");

  const auto delta_at = [s, e](double u) {
    const VecJet ej = e(u);
    return triple(shift(s(u)), ej, shift(ej));
  };
  const auto kappa_at = [e](double u) {
    const VecJet ej = e(u);
    const VecJet e1 = shift(ej);
    return triple(ej, e1, shift(e1));
  };

  int sign = 0;
  for (double u : linspace(dom.lo, dom.hi, grid_points)) {
    const VecJet sj = s(u), ej = e(u);
    const double unit_e = std::abs(ej.d[0].norm() - 1.0);
    const double unit_de = std::abs(ej.d[1].norm() - 1.0);
    const double striction = std::abs(sj.d[1].dot(ej.d[1]));
    if (unit_e > 1e-8 || unit_de > 1e-8 || striction > 1e-8) {
      std::ostringstream os;
      os << "not in standard parameters at u = " << u << " (| |e|-1 | = " << unit_e
         << ", | |e'|-1 | = " << unit_de << ", |<s',e'>| = " << striction << ")";
      throw Error(ErrorCode::Precondition, os.str());
    }
    const double d = triple(sj.d[1], ej.d[0], ej.d[1]);
    const int sg = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (sg == 0 || (sign != 0 && sg != sign)) {
      std::ostringstream os;
      os << "distribution parameter vanishes near u = " << u;
      throw Error(ErrorCode::Precondition, os.str());
    }
    sign = sg;
  }

  Invariants inv;
  inv.domain = dom;
  inv.delta = ScalarFn(delta_at, dom, "det(s',e,e')");
  inv.kappa = ScalarFn(kappa_at, dom, "det(e,e',e'')");
  inv.lambda = ScalarFn(
      [s, e, delta_at](double u) { return dot(shift(s(u)), e(u)) / delta_at(u); }, dom,
      "<s',e>/delta");
  return inv;
}

SurfacePtr surface_from_parametrization(VecFn s, VecFn e) {
  Invariants inv = invariants_from_parametrization(s, e);
  return std::make_shared<ParametrizedSurface>(std::move(s), std::move(e), std::move(inv));
}

VecFn generator_fn(SurfacePtr surface) {
  VecFn out;
  out.domain = surface->domain();
  out.eval = [surface](double u) {
    const Station st = station(*surface, u);
    const FrameSample& f = st.frame;
    const Jet3& k = st.kappa;
    VecJet j;
    j.d[0] = f.e;
    j.d[1] = f.n;
    j.d[2] = -f.e + k.v0 * f.z;
    j.d[3] = -(1.0 + k.v0 * k.v0) * f.n + k.v1 * f.z;
    return j;
  };
  return out;
}

VecFn directrix_fn(SurfacePtr surface) {
  VecFn out;
  out.domain = surface->domain();
  out.eval = [surface](double u) {
    const Station st = station(*surface, u);
    const FrameSample& f = st.frame;
    const Jet3 dl = st.delta * st.lambda;
    const Jet3 a = dl - st.delta * st.kappa;  // n-coefficient of s''
    const Jet3& k = st.kappa;
    VecJet j;
    j.d[0] = f.s;
    j.d[1] = dl.v0 * f.e + st.delta.v0 * f.z;
    j.d[2] = dl.v1 * f.e + a.v0 * f.n + st.delta.v1 * f.z;
    j.d[3] = (dl.v2 - a.v0) * f.e + (dl.v1 + a.v1 - st.delta.v1 * k.v0) * f.n +
             (k.v0 * a.v0 + st.delta.v2) * f.z;
    return j;
  };
  return out;
}

Station station(const RuledSurface& surface, double u) {
  const Invariants& inv = surface.invariants();
  return {surface.frame(u), inv.delta(u), inv.kappa(u), inv.lambda(u)};
}

SurfaceSample surface_sample(const Station& st, double v) {
  const FrameSample& f = st.frame;
  const double d = st.delta.v0, dp = st.delta.v1, k = st.kappa.v0, l = st.lambda.v0;
  const double w2 = d * d + v * v;
  const double w = std::sqrt(w2);
  SurfaceSample out;
  out.x = f.s + v * f.e;
  out.x1 = d * l * f.e + v * f.n + d * f.z;
  out.x2 = f.e;
  out.xi = (d * f.n - v * f.z) / w;
  out.w = w;
  out.h11 = -(k * w2 + dp * v - d * d * l) / w;
  out.h12 = d / w;
  out.h22 = 0.0;
  out.Kt = -d * d / (w2 * w2);
  out.Ht = -(k * w2 + dp * v + d * d * l) / (2.0 * w2 * w);
  return out;
}

SurfaceSample surface_sample(const RuledSurface& surface, double u, double v) {
  return surface_sample(station(surface, u), v);
}

Vec3 surface_point(const RuledSurface& surface, double u, double v) {
  const FrameSample f = surface.frame(u);
  return f.s + v * f.e;
}

}  // namespace rulekit
