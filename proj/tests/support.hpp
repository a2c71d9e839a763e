#pragma once

// Independent oracles and random generators shared by the unit tests and the
// acceptance binary. Nothing here calls the closed forms under test; the
// oracles only sample positions, normals and metrics.

#include <functional>
#include <random>
#include <string>

#include "catalog.hpp"
#include "right_normalization.hpp"

namespace rktest {

using rulekit::Interval;
using rulekit::Vec3;

using Rng = std::mt19937_64;

/// Smooth invariants a + b sin(c u + d) style, delta bounded away from zero
/// (negative when `negative_delta`).
rulekit::Invariants random_invariants(Rng& rng, Interval domain, bool negative_delta = false);
/// The expression texts behind random_invariants (delta, kappa, lambda).
struct InvariantTexts {
  std::string delta, kappa, lambda;
};
InvariantTexts random_invariant_texts(Rng& rng, bool negative_delta = false);
rulekit::Invariants compile_invariants(const InvariantTexts& t, Interval domain);

/// f, g with no common zeros forced; callers keep away from poles.
rulekit::SupportPair random_support(Rng& rng, Interval domain);

/// Random smooth expression of u, well defined on [-2, 2].
std::string random_expression(Rng& rng, int depth = 3);

double uniform(Rng& rng, double lo, double hi);

/// Gaussian and mean curvature from the first and second fundamental forms
/// of x(u, v) = surface_point, with Richardson finite differences in u (step
/// h) and exact central differences in v (x is linear in v). Normal
/// orientation x_u x x_v.
struct Classical {
  double K = 0.0;
  double H = 0.0;
};
Classical classical_curvature(const rulekit::RuledSurface& surface, double u, double v,
                              double h = 1e-2);

/// Partial derivative of a vector function of (u, v) by Richardson finite
/// differences; dir 1 = u, 2 = v.
Vec3 fd_partial(const std::function<Vec3(double, double)>& fn, double u, double v, int dir,
                double h = 1e-3);
double fd_partial(const std::function<double(double, double)>& fn, double u, double v, int dir,
                  double h = 1e-3);

/// Gaussian curvature of a (possibly indefinite) metric E, F, G given as
/// functions of (u, v), by the Brioschi formula with finite differences.
struct Metric {
  double E, F, G;
};
double brioschi_curvature(const std::function<Metric(double, double)>& metric, double u,
                          double v, double h = 1e-3);

/// Relative difference |a - b| / max(|b|, floor).
double rel_diff(double a, double b, double floor = 1e-300);

/// |f + g v| relative to its terms; points with small values sit near poles.
double pole_distance(const rulekit::SupportPair& sp, double u, double v);

}  // namespace rktest
