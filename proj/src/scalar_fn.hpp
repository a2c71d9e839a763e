#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "jet.hpp"

namespace rulekit {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double u) const { return u >= lo && u <= hi; }
  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  Interval shrunk(double margin) const { return {lo + margin, hi - margin}; }
};

/// A scalar function of u on a closed interval, evaluated as a Jet3.
/// Immutable once built; safe to share across threads.
class ScalarFn {
 public:
  using Evaluator = std::function<Jet3(double)>;

  ScalarFn() = default;
  ScalarFn(Evaluator eval, Interval domain, std::string label = {});

  static ScalarFn constant(double c, Interval domain);

  /// Value and first three derivatives at u. Throws Error(Domain) outside the
  /// interval.
  Jet3 operator()(double u) const;
  double value(double u) const { return (*this)(u).v0; }

  const Interval& domain() const { return domain_; }
  const std::string& label() const { return label_; }
  bool empty() const { return !eval_; }

  /// Same function restricted to a sub-interval.
  ScalarFn restricted(Interval sub) const;

 private:
  Evaluator eval_;
  Interval domain_;
  std::string label_;
};

// Pointwise combinators. Domains are intersected.
ScalarFn operator+(const ScalarFn& a, const ScalarFn& b);
ScalarFn operator-(const ScalarFn& a, const ScalarFn& b);
ScalarFn operator*(const ScalarFn& a, const ScalarFn& b);
ScalarFn operator/(const ScalarFn& a, const ScalarFn& b);
ScalarFn operator*(double c, const ScalarFn& a);
ScalarFn operator+(const ScalarFn& a, double c);

/// Derivative as a function: jets (f', f'', f''', NaN).
ScalarFn derivative(const ScalarFn& a);

/// |a|^p for a sign-definite a. The sign of a is fixed on a 256-point grid of
/// its domain; a sign change (or a zero) throws Error(Precondition). The jets
/// come from the smooth branch (a)^p or (-a)^p, never from abs.
ScalarFn abs_pow(const ScalarFn& a, double p);

/// F(u) = integral of `integrand` from domain.lo to u. Values come from
/// adaptive quadrature over a precomputed table of cumulative integrals;
/// jets come from the integrand (F' = integrand).
ScalarFn antiderivative(const ScalarFn& integrand, double tol = 1e-12);

/// Finite-difference jet oracle: central differences with one Richardson
/// step, sampling `plain` on [u - 4h, u + 4h]. Error is O(h^4) for every
/// order before roundoff. Throws Error(Numerical) on non-finite samples or
/// when the two Richardson levels disagree grossly (non-smooth data, e.g.
/// |u| at 0).
Jet3 fd_jet(const std::function<double(double)>& plain, double u, double h);

/// Default step 1e-3 * max(1, |u|).
Jet3 fd_jet(const std::function<double(double)>& plain, double u);

double default_fd_step(double u);

/// Adaptive Simpson quadrature with a budget of 1e6 subintervals. Throws
/// Error(Numerical) when the estimated error cannot be brought under tol.
double integrate(const std::function<double(double)>& fn, double a, double b,
                 double tol);

/// Uniform grid with n points including both endpoints.
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace rulekit
