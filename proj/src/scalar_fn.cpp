#include "scalar_fn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "error.hpp"

namespace rulekit {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Syntax: return "syntax";
    case ErrorCode::Singular: return "singular";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::Construction: return "construction";
    case ErrorCode::NotFound: return "not-found";
    case ErrorCode::Numerical: return "numerical";
    case ErrorCode::Io: return "io";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

ScalarFn::ScalarFn(Evaluator eval, Interval domain, std::string label)
    : eval_(std::move(eval)), domain_(domain), label_(std::move(label)) {
  if (!(domain_.lo <= domain_.hi)) {
    throw Error(ErrorCode::Precondition, "empty interval for function " + label_);
  }
}

ScalarFn ScalarFn::constant(double c, Interval domain) {
  std::ostringstream os;
  os << c;
  return ScalarFn([c](double) { return Jet3::constant(c); }, domain, os.str());
}

Jet3 ScalarFn::operator()(double u) const {
  if (!domain_.contains(u)) {
    std::ostringstream os;
    os << "u = " << u << " outside [" << domain_.lo << ", " << domain_.hi << "]";
    if (!label_.empty()) os << " for " << label_;
    throw Error(ErrorCode::Domain, os.str());
  }
  return eval_(u);
}

ScalarFn ScalarFn::restricted(Interval sub) const {
  Interval d{std::max(sub.lo, domain_.lo), std::min(sub.hi, domain_.hi)};
  return ScalarFn(eval_, d, label_);
}

namespace {

Interval intersect(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

std::string wrap(const std::string& a, const char* op, const std::string& b) {
  return "(" + a + ")" + op + "(" + b + ")";
}

}  // namespace

ScalarFn operator+(const ScalarFn& a, const ScalarFn& b) {
  return ScalarFn([a, b](double u) { return a(u) + b(u); },
                  intersect(a.domain(), b.domain()), wrap(a.label(), "+", b.label()));
}

ScalarFn operator-(const ScalarFn& a, const ScalarFn& b) {
  return ScalarFn([a, b](double u) { return a(u) - b(u); },
                  intersect(a.domain(), b.domain()), wrap(a.label(), "-", b.label()));
}

ScalarFn operator*(const ScalarFn& a, const ScalarFn& b) {
  return ScalarFn([a, b](double u) { return a(u) * b(u); },
                  intersect(a.domain(), b.domain()), wrap(a.label(), "*", b.label()));
}

ScalarFn operator/(const ScalarFn& a, const ScalarFn& b) {
  return ScalarFn(
      [a, b](double u) {
        const Jet3 den = b(u);
        if (den.v0 == 0.0) throw Error(ErrorCode::Singular, "division by zero");
        return a(u) / den;
      },
      intersect(a.domain(), b.domain()), wrap(a.label(), "/", b.label()));
}

ScalarFn operator*(double c, const ScalarFn& a) {
  std::ostringstream os;
  os << c;
  return ScalarFn([c, a](double u) { return Jet3::constant(c) * a(u); }, a.domain(),
                  wrap(os.str(), "*", a.label()));
}

ScalarFn operator+(const ScalarFn& a, double c) {
  std::ostringstream os;
  os << c;
  return ScalarFn([c, a](double u) { return a(u) + Jet3::constant(c); }, a.domain(),
                  wrap(a.label(), "+", os.str()));
}

ScalarFn derivative(const ScalarFn& a) {
  return ScalarFn([a](double u) { return shift(a(u)); }, a.domain(),
                  "d/du(" + a.label() + ")");
}

ScalarFn abs_pow(const ScalarFn& a, double p) {
  const Interval dom = a.domain();
  int sign = 0;
  for (double u : linspace(dom.lo, dom.hi, 256)) {
    const double x = a.value(u);
    const int s = x > 0.0 ? 1 : (x < 0.0 ? -1 : 0);
    if (s == 0 || (sign != 0 && s != sign)) {
      throw Error(ErrorCode::Precondition,
                  "|" + a.label() + "| must not vanish or change sign on the interval");
    }
    sign = s;
  }
  const double sg = sign;
  std::ostringstream label;
  label << "|" << a.label() << "|^" << p;
  return ScalarFn(
      [a, sg, p](double u) {
        const Jet3 x = sg * a(u);
        if (!(x.v0 > 0.0)) throw Error(ErrorCode::Singular, "|a|^p with a = 0");
        const double xp = std::pow(x.v0, p);
        const double r = 1.0 / x.v0;
        return compose(x, xp, p * xp * r, p * (p - 1.0) * xp * r * r,
                       p * (p - 1.0) * (p - 2.0) * xp * r * r * r);
      },
      dom, label.str());
}

namespace {

// Cumulative integrals of an integrand on a uniform knot table.
struct CumulativeTable {
  ScalarFn integrand;
  double lo = 0.0;
  double dx = 0.0;
  double tol = 0.0;
  std::vector<double> cum;

  double value(double u) const {
    const auto plain = [this](double t) { return integrand.value(t); };
    if (dx == 0.0) return 0.0;
    const auto last = static_cast<long>(cum.size()) - 1;
    long k = static_cast<long>(std::floor((u - lo) / dx));
    k = std::clamp(k, 0L, last);
    const double knot = lo + static_cast<double>(k) * dx;
    if (u == knot) return cum[static_cast<std::size_t>(k)];
    if (u > knot) return cum[static_cast<std::size_t>(k)] + integrate(plain, knot, u, tol);
    return cum[static_cast<std::size_t>(k)] - integrate(plain, u, knot, tol);
  }
};

}  // namespace

ScalarFn antiderivative(const ScalarFn& integrand, double tol) {
  constexpr int kPanels = 256;
  auto table = std::make_shared<CumulativeTable>();
  table->integrand = integrand;
  table->lo = integrand.domain().lo;
  table->dx = integrand.domain().length() / kPanels;
  table->tol = tol;
  table->cum.assign(kPanels + 1, 0.0);
  const auto plain = [&integrand](double t) { return integrand.value(t); };
  if (table->dx > 0.0) {
    for (int k = 0; k < kPanels; ++k) {
      const double a = table->lo + k * table->dx;
      const double b = k + 1 == kPanels ? integrand.domain().hi : a + table->dx;
      table->cum[k + 1] = table->cum[k] + integrate(plain, a, b, tol / kPanels);
    }
  }
  return ScalarFn(
      [table](double u) { return unshift(table->integrand(u), table->value(u)); },
      integrand.domain(), "int(" + integrand.label() + ")");
}

double default_fd_step(double u) { return 1e-3 * std::max(1.0, std::abs(u)); }

Jet3 fd_jet(const std::function<double(double)>& plain, double u, double h) {
  double s[9];  // s[k] = plain(u + (k - 4) h)
  for (int k = 0; k < 9; ++k) {
    s[k] = plain(u + (k - 4) * h);
    if (!std::isfinite(s[k])) {
      throw Error(ErrorCode::Numerical, "non-finite sample in finite-difference jet");
    }
  }
  const auto at = [&s](int m) { return s[m + 4]; };
  const auto d1 = [&](int m) { return (at(m) - at(-m)) / (2.0 * m * h); };
  const auto d2 = [&](int m) {
    return (at(m) - 2.0 * at(0) + at(-m)) / (double(m) * m * h * h);
  };
  const auto d3 = [&](int m) {
    const double hm = m * h;
    return (at(2 * m) - 2.0 * at(m) + 2.0 * at(-m) - at(-2 * m)) / (2.0 * hm * hm * hm);
  };
  const double fine[3] = {d1(1), d2(1), d3(1)};
  const double coarse[3] = {d1(2), d2(2), d3(2)};
  double out[3];
  for (int k = 0; k < 3; ++k) {
    const double gap = std::abs(fine[k] - coarse[k]);
    const double scale = std::max(std::abs(fine[k]), std::abs(coarse[k]));
    if (gap > 0.1 * (1.0 + scale)) {
      throw Error(ErrorCode::Numerical,
                  "finite-difference levels disagree: data not smooth near u");
    }
    out[k] = (4.0 * fine[k] - coarse[k]) / 3.0;
  }
  return {s[4], out[0], out[1], out[2]};
}

Jet3 fd_jet(const std::function<double(double)>& plain, double u) {
  return fd_jet(plain, u, default_fd_step(u));
}

namespace {

struct Panel {
  double a, b, fa, fm, fb, whole, tol;
  int depth;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

}  // namespace

double integrate(const std::function<double(double)>& fn, double a, double b,
                 double tol) {
  if (!(a <= b)) throw Error(ErrorCode::Precondition, "integrate requires a <= b");
  if (a == b) return 0.0;
  constexpr long kBudget = 1'000'000;
  constexpr int kMaxDepth = 60;

  const double fa = fn(a), fb = fn(b), fm = fn(0.5 * (a + b));
  std::vector<Panel> stack{{a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 0}};
  long intervals = 1;
  double total = 0.0;
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const double m = 0.5 * (p.a + p.b);
    const double flm = fn(0.5 * (p.a + m)), frm = fn(0.5 * (m + p.b));
    const double left = simpson(p.a, m, p.fa, flm, p.fm);
    const double right = simpson(m, p.b, p.fm, frm, p.fb);
    const double delta = left + right - p.whole;
    if (!std::isfinite(delta)) {
      throw Error(ErrorCode::Numerical, "non-finite integrand");
    }
    if (std::abs(delta) <= 15.0 * p.tol || p.depth >= kMaxDepth) {
      if (p.depth >= kMaxDepth && std::abs(delta) > 15.0 * p.tol) {
        throw Error(ErrorCode::Numerical, "quadrature tolerance not reached");
      }
      total += left + right + delta / 15.0;
      continue;
    }
    if (++intervals > kBudget) {
      throw Error(ErrorCode::Numerical, "quadrature subdivision budget exhausted");
    }
    stack.push_back({m, p.b, p.fm, frm, p.fb, right, 0.5 * p.tol, p.depth + 1});
    stack.push_back({p.a, m, p.fa, flm, p.fm, left, 0.5 * p.tol, p.depth + 1});
  }
  return total;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  if (n == 1) return {lo};
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.push_back(i + 1 == n ? hi : lo + (hi - lo) * i / (n - 1));
  }
  return out;
}

}  // namespace rulekit
