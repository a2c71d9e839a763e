#include "support.hpp"

#include <cmath>
#include <sstream>

#include "expr.hpp"

namespace rktest {

using rulekit::fd_jet;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::string wave(Rng& rng, double base_lo, double base_hi, double amp) {
  const double a = uniform(rng, base_lo, base_hi);
  const double b = uniform(rng, -amp, amp);
  const double c = uniform(rng, 0.3, 1.2);
  const double d = uniform(rng, 0.0, 3.0);
  const char* fn = uniform(rng, 0, 1) < 0.5 ? "sin" : "cos";
  return "(" + num(a) + ")+(" + num(b) + ")*" + fn + "(" + num(c) + "*u+" + num(d) + ")";
}

}  // namespace

InvariantTexts random_invariant_texts(Rng& rng, bool negative_delta) {
  InvariantTexts t;
  t.delta = wave(rng, 0.8, 1.5, 0.3);
  if (negative_delta) t.delta = "-(" + t.delta + ")";
  t.kappa = wave(rng, -0.6, 0.6, 0.4);
  t.lambda = wave(rng, -0.6, 0.6, 0.4);
  return t;
}

rulekit::Invariants compile_invariants(const InvariantTexts& t, Interval domain) {
  rulekit::Invariants inv;
  inv.domain = domain;
  inv.delta = rulekit::expr::compile(t.delta, domain);
  inv.kappa = rulekit::expr::compile(t.kappa, domain);
  inv.lambda = rulekit::expr::compile(t.lambda, domain);
  inv.validate();
  return inv;
}

rulekit::Invariants random_invariants(Rng& rng, Interval domain, bool negative_delta) {
  return compile_invariants(random_invariant_texts(rng, negative_delta), domain);
}

rulekit::SupportPair random_support(Rng& rng, Interval domain) {
  const std::string f = wave(rng, 0.5, 1.5, 0.4);
  const std::string g = wave(rng, -1.0, 1.0, 0.5);
  return rulekit::make_support(rulekit::expr::compile(f, domain),
                               rulekit::expr::compile(g, domain), domain);
}

std::string random_expression(Rng& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
  switch (pick(rng)) {
    case 0: return "u";
    case 1: return num(uniform(rng, -2.0, 2.0));
    case 2: return "(" + random_expression(rng, depth - 1) + "+" + random_expression(rng, depth - 1) + ")";
    case 3: return "(" + random_expression(rng, depth - 1) + "-" + random_expression(rng, depth - 1) + ")";
    case 4: return "(" + random_expression(rng, depth - 1) + "*" + random_expression(rng, depth - 1) + ")";
    case 5:
      return "(" + random_expression(rng, depth - 1) + ")/(2+sin(" +
             random_expression(rng, depth - 1) + "))";
    case 6: return "sin(" + random_expression(rng, depth - 1) + ")";
    case 7: return "cos(" + random_expression(rng, depth - 1) + ")";
    case 8: return "exp(0.5*sin(" + random_expression(rng, depth - 1) + "))";
    default: {
      const std::string inner = random_expression(rng, depth - 1);
      switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0: return "sqrt(1+(" + inner + ")^2)";
        case 1: return "log(2+cos(" + inner + "))";
        default: return "(" + inner + ")^" + std::to_string(std::uniform_int_distribution<int>(2, 3)(rng));
      }
    }
  }
}

Vec3 fd_partial(const std::function<Vec3(double, double)>& fn, double u, double v, int dir,
                double h) {
  Vec3 out;
  for (int k = 0; k < 3; ++k) {
    const auto comp = [&](double t) {
      return dir == 1 ? fn(t, v)[k] : fn(u, t)[k];
    };
    out[k] = fd_jet(comp, dir == 1 ? u : v, h).v1;
  }
  return out;
}

double fd_partial(const std::function<double(double, double)>& fn, double u, double v, int dir,
                  double h) {
  const auto line = [&](double t) { return dir == 1 ? fn(t, v) : fn(u, t); };
  return fd_jet(line, dir == 1 ? u : v, h).v1;
}

Classical classical_curvature(const rulekit::RuledSurface& surface, double u, double v,
                              double h) {
  Vec3 xu, xuu, xv, xuv;
  for (int k = 0; k < 3; ++k) {
    const rulekit::Jet3 a =
        fd_jet([&](double t) { return rulekit::surface_point(surface, t, v)[k]; }, u, h);
    // x is linear in v, so the symmetric difference with unit step is exact.
    const rulekit::Jet3 b = fd_jet(
        [&](double t) {
          return 0.5 * (rulekit::surface_point(surface, t, v + 1.0)[k] -
                        rulekit::surface_point(surface, t, v - 1.0)[k]);
        },
        u, h);
    xu[k] = a.v1;
    xuu[k] = a.v2;
    xv[k] = b.v0;
    xuv[k] = b.v1;
  }
  const Vec3 xvv = Vec3::Zero();
  const Vec3 nrm = xu.cross(xv).normalized();
  const double E = xu.dot(xu), F = xu.dot(xv), G = xv.dot(xv);
  const double L = xuu.dot(nrm), M = xuv.dot(nrm), N = xvv.dot(nrm);
  const double det = E * G - F * F;
  return {(L * N - M * M) / det, (E * N - 2.0 * F * M + G * L) / (2.0 * det)};
}

double brioschi_curvature(const std::function<Metric(double, double)>& metric, double u,
                          double v, double h) {
  auto E = [&](double a, double b) { return metric(a, b).E; };
  auto F = [&](double a, double b) { return metric(a, b).F; };
  auto G = [&](double a, double b) { return metric(a, b).G; };
  const Metric m = metric(u, v);
  const rulekit::Jet3 Eu = fd_jet([&](double t) { return E(t, v); }, u, h);
  const rulekit::Jet3 Ev = fd_jet([&](double t) { return E(u, t); }, v, h);
  const rulekit::Jet3 Gu = fd_jet([&](double t) { return G(t, v); }, u, h);
  const rulekit::Jet3 Gv = fd_jet([&](double t) { return G(u, t); }, v, h);
  const rulekit::Jet3 Fu = fd_jet([&](double t) { return F(t, v); }, u, h);
  const rulekit::Jet3 Fv = fd_jet([&](double t) { return F(u, t); }, v, h);
  const double Fuv = fd_jet(
      [&](double t) { return fd_jet([&](double s) { return F(t, s); }, v, h).v1; }, u, h).v1;

  Eigen::Matrix3d a;
  a << -0.5 * Ev.v2 + Fuv - 0.5 * Gu.v2, 0.5 * Eu.v1, Fu.v1 - 0.5 * Ev.v1,
      Fv.v1 - 0.5 * Gu.v1, m.E, m.F,
      0.5 * Gv.v1, m.F, m.G;
  Eigen::Matrix3d b;
  b << 0.0, 0.5 * Ev.v1, 0.5 * Gu.v1,
      0.5 * Ev.v1, m.E, m.F,
      0.5 * Gu.v1, m.F, m.G;
  const double det = m.E * m.G - m.F * m.F;
  return (a.determinant() - b.determinant()) / (det * det);
}

double rel_diff(double a, double b, double floor) {
  return std::abs(a - b) / std::max(std::abs(b), floor);
}

double pole_distance(const rulekit::SupportPair& sp, double u, double v) {
  const double f = sp.f.value(u), g = sp.g.value(u);
  return std::abs(f + g * v) / std::max({1.0, std::abs(f), std::abs(g * v)});
}

}  // namespace rktest
