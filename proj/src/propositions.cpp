#include "propositions.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "error.hpp"
#include "expr.hpp"
#include "parallel.hpp"

namespace rulekit {

namespace {

using P = PropositionId;

constexpr std::array<PropositionId, 18> kAll = {
    P::pick_vanishing,         P::scalar_curv_vanishing, P::relative_minimal_type1,
    P::T_orth_generators,      P::T_tangent_u,           P::T_orth_u,
    P::T_tangent_asymptotic,   P::T_tangent_K,           P::T_orth_K,
    P::T_incompressible_I,     P::T_incompressible_G,    P::Q_orth_generators,
    P::Q_tangent_u,            P::Q_orth_u,              P::Q_tangent_asymptotic_a,
    P::Q_tangent_asymptotic_b, P::Q_tangent_K,           P::Q_orth_K,
};

struct GridMax {
  double delta = 0.0, kappa = 0.0, lambda = 0.0;
  double ddelta = 0.0, kl1 = 0.0, min_abs_lambda = HUGE_VAL;
};

GridMax grid_max(const Invariants& inv) {
  GridMax m;
  for (double u : linspace(inv.domain.lo, inv.domain.hi, 256)) {
    const Jet3 d = inv.delta(u);
    const double k = inv.kappa.value(u), l = inv.lambda.value(u);
    m.delta = std::max(m.delta, std::abs(d.v0));
    m.ddelta = std::max(m.ddelta, std::abs(d.v1));
    m.kappa = std::max(m.kappa, std::abs(k));
    m.lambda = std::max(m.lambda, std::abs(l));
    m.kl1 = std::max(m.kl1, std::abs(k * l + 1.0));
    m.min_abs_lambda = std::min(m.min_abs_lambda, std::abs(l));
  }
  return m;
}

bool holds(const GridMax& m, SurfaceClass c) {
  const double thr = 1e-10 * (1.0 + m.delta + m.kappa + m.lambda);
  switch (c) {
    case SurfaceClass::conoidal: return m.kappa <= thr;
    case SurfaceClass::constant_delta: return m.ddelta <= thr;
    case SurfaceClass::orthoid: return m.lambda <= thr;
    case SurfaceClass::edlinger: return m.ddelta <= thr && m.kl1 <= thr;
    case SurfaceClass::right_helicoid:
      return m.ddelta <= thr && m.kappa <= thr && m.lambda <= thr;
    case SurfaceClass::striction_line_of_curvature: return m.kl1 <= thr;
  }
  return false;
}

void require(const Invariants& inv, PropositionId id, SurfaceClass c) {
  if (!holds(grid_max(inv), c)) {
    std::ostringstream os;
    os << to_string(id) << " requires a surface of class " << to_string(c);
    throw Error(ErrorCode::Precondition, os.str());
  }
}

void require_lambda_nonzero(const Invariants& inv, PropositionId id) {
  const GridMax m = grid_max(inv);
  if (!(m.min_abs_lambda > 1e-10 * (1.0 + m.lambda))) {
    std::ostringstream os;
    os << to_string(id) << " requires lambda != 0 on the interval";
    throw Error(ErrorCode::Precondition, os.str());
  }
  double prev = 0.0;
  for (double u : linspace(inv.domain.lo, inv.domain.hi, 256)) {
    const double l = inv.lambda.value(u);
    if (prev * l < 0.0) {
      std::ostringstream os;
      os << to_string(id) << " requires lambda != 0 on the interval (sign change)";
      throw Error(ErrorCode::Precondition, os.str());
    }
    prev = l;
  }
}

double delta_sign(const Invariants& inv) {
  return inv.delta.value(inv.domain.mid()) > 0.0 ? 1.0 : -1.0;
}

ScalarFn constant(double c, const Invariants& inv) { return ScalarFn::constant(c, inv.domain); }

/// sqrt(c - a^2 g^2) after checking c - a^2 g^2 > 0 on a 256-point grid.
ScalarFn sqrt_gap(double c, double a, const ScalarFn& g, const Invariants& inv) {
  const ScalarFn gap = constant(c, inv) - (a * a) * (g * g);
  int positive = 0, nonpositive = 0;
  for (double u : linspace(inv.domain.lo, inv.domain.hi, 256)) {
    (gap.value(u) > 0.0 ? positive : nonpositive)++;
  }
  if (positive > 0 && nonpositive > 0) {
    throw Error(ErrorCode::Construction,
                "c - g^2 changes sign on the interval (g^2 = c somewhere)");
  }
  if (positive == 0) {
    throw Error(ErrorCode::Construction,
                "c - g^2 < 0 on the interval: with g^2 > c the construction f = "
                "+-delta |c - g^2|^(1/2) does not satisfy the property; choose c > max g^2");
  }
  return abs_pow(gap, 0.5);
}

std::vector<double> fill_constants(PropositionId id, const std::vector<double>& given) {
  const std::vector<ConstantSpec> spec = constant_names(id);
  if (given.size() > spec.size()) {
    std::ostringstream os;
    os << to_string(id) << " takes " << spec.size() << " constant(s), got " << given.size();
    throw Error(ErrorCode::Construction, os.str());
  }
  std::vector<double> out;
  for (size_t i = 0; i < spec.size(); ++i) {
    const double c = i < given.size() ? given[i] : spec[i].fallback;
    if (!std::isfinite(c)) throw Error(ErrorCode::Construction, "non-finite constant");
    if (spec[i].nonzero && c == 0.0) {
      std::ostringstream os;
      os << to_string(id) << ": constant " << spec[i].name << " must be nonzero";
      throw Error(ErrorCode::Construction, os.str());
    }
    out.push_back(c);
  }
  return out;
}

double constant_delta_value(const Invariants& inv) { return inv.delta.value(inv.domain.mid()); }

}  // namespace

const std::array<PropositionId, 18>& all_propositions() { return kAll; }

const char* to_string(PropositionId id) {
  switch (id) {
    case P::pick_vanishing: return "pick_vanishing";
    case P::scalar_curv_vanishing: return "scalar_curv_vanishing";
    case P::relative_minimal_type1: return "relative_minimal_type1";
    case P::T_orth_generators: return "T_orth_generators";
    case P::T_tangent_u: return "T_tangent_u";
    case P::T_orth_u: return "T_orth_u";
    case P::T_tangent_asymptotic: return "T_tangent_asymptotic";
    case P::T_tangent_K: return "T_tangent_K";
    case P::T_orth_K: return "T_orth_K";
    case P::T_incompressible_I: return "T_incompressible_I";
    case P::T_incompressible_G: return "T_incompressible_G";
    case P::Q_orth_generators: return "Q_orth_generators";
    case P::Q_tangent_u: return "Q_tangent_u";
    case P::Q_orth_u: return "Q_orth_u";
    case P::Q_tangent_asymptotic_a: return "Q_tangent_asymptotic_a";
    case P::Q_tangent_asymptotic_b: return "Q_tangent_asymptotic_b";
    case P::Q_tangent_K: return "Q_tangent_K";
    case P::Q_orth_K: return "Q_orth_K";
  }
  return "?";
}

std::optional<PropositionId> proposition_from_string(std::string_view name) {
  for (PropositionId id : kAll) {
    if (name == to_string(id)) return id;
  }
  return std::nullopt;
}

const char* to_string(SurfaceClass c) {
  switch (c) {
    case SurfaceClass::conoidal: return "conoidal";
    case SurfaceClass::constant_delta: return "constant_delta";
    case SurfaceClass::orthoid: return "orthoid";
    case SurfaceClass::edlinger: return "edlinger";
    case SurfaceClass::right_helicoid: return "right_helicoid";
    case SurfaceClass::striction_line_of_curvature: return "striction_line_of_curvature";
  }
  return "?";
}

std::vector<SurfaceClass> classify_surface(const Invariants& inv) {
  const GridMax m = grid_max(inv);
  std::vector<SurfaceClass> out;
  for (SurfaceClass c : {SurfaceClass::conoidal, SurfaceClass::constant_delta,
                         SurfaceClass::orthoid, SurfaceClass::edlinger,
                         SurfaceClass::right_helicoid,
                         SurfaceClass::striction_line_of_curvature}) {
    if (holds(m, c)) out.push_back(c);
  }
  return out;
}

bool has_class(const Invariants& inv, SurfaceClass c) { return holds(grid_max(inv), c); }

std::string Property::describe() const {
  switch (kind) {
    case Kind::J: return "J = 0";
    case Kind::S: return "S = 0";
    case Kind::H: return "H = 0";
    case Kind::DivI: return "divI T = 0";
    case Kind::DivG: return "divG T = 0";
    case Kind::Angle: break;
  }
  std::ostringstream os;
  os << to_string(field) << ' ' << to_string(mode) << " to " << to_string(family);
  return os.str();
}

Property property_of(PropositionId id) {
  using K = Property::Kind;
  auto angle = [](FieldKind f, FamilyKind fam, AngleMode m) {
    Property p;
    p.kind = K::Angle;
    p.field = f;
    p.family = fam;
    p.mode = m;
    return p;
  };
  constexpr auto T = FieldKind::T;
  constexpr auto Q = FieldKind::Q;
  constexpr auto tan = AngleMode::Tangential;
  constexpr auto orth = AngleMode::Orthogonal;
  switch (id) {
    case P::pick_vanishing: return {K::J};
    case P::scalar_curv_vanishing: return {K::S};
    case P::relative_minimal_type1: return {K::H};
    case P::T_orth_generators: return angle(T, FamilyKind::Generators, orth);
    case P::T_tangent_u: return angle(T, FamilyKind::UCurves, tan);
    case P::T_orth_u: return angle(T, FamilyKind::UCurves, orth);
    case P::T_tangent_asymptotic: return angle(T, FamilyKind::CurvedAsymptotic, tan);
    case P::T_tangent_K: return angle(T, FamilyKind::KtCurves, tan);
    case P::T_orth_K: return angle(T, FamilyKind::KtCurves, orth);
    case P::T_incompressible_I: return {K::DivI};
    case P::T_incompressible_G: return {K::DivG};
    case P::Q_orth_generators: return angle(Q, FamilyKind::Generators, orth);
    case P::Q_tangent_u: return angle(Q, FamilyKind::UCurves, tan);
    case P::Q_orth_u: return angle(Q, FamilyKind::UCurves, orth);
    case P::Q_tangent_asymptotic_a:
    case P::Q_tangent_asymptotic_b: return angle(Q, FamilyKind::CurvedAsymptotic, tan);
    case P::Q_tangent_K: return angle(Q, FamilyKind::KtCurves, tan);
    case P::Q_orth_K: return angle(Q, FamilyKind::KtCurves, orth);
  }
  throw Error(ErrorCode::Internal, "unknown proposition");
}

std::vector<ConstantSpec> constant_names(PropositionId id) {
  switch (id) {
    case P::pick_vanishing:
    case P::T_tangent_asymptotic:
    case P::T_tangent_u: return {{"c1", 1.0, true}, {"c2", 1.0, false}};
    case P::scalar_curv_vanishing:
    case P::T_incompressible_G:
    case P::relative_minimal_type1: return {{"c", 1.0, false}};
    case P::T_orth_generators:
    case P::T_orth_u: return {{"c1", 1.0, true}, {"c2", 1.0, true}};
    case P::T_tangent_K: return {{"c2", 1.0, true}, {"c3", 1.0, false}};
    case P::T_orth_K:
    case P::Q_tangent_asymptotic_a: return {{"c1", 1.0, true}, {"c2", 1.0, true}};
    case P::T_incompressible_I: return {{"c1", 1.0, true}, {"c3", 1.0, false}};
    case P::Q_orth_generators:
    case P::Q_tangent_u:
    case P::Q_orth_u: return {{"c", 1.0, false}};
    case P::Q_tangent_asymptotic_b: return {{"c4", 1.0, true}};
    case P::Q_tangent_K:
    case P::Q_orth_K: return {{"c2", 1.0, false}};
  }
  return {};
}

std::string default_free(PropositionId id) {
  switch (id) {
    case P::scalar_curv_vanishing:
    case P::T_incompressible_G: return "1+0.2*sin(u)";
    case P::relative_minimal_type1: return "1+0.3*cos(u)";
    case P::Q_orth_generators:
    case P::Q_tangent_u:
    case P::Q_orth_u:
    case P::Q_tangent_asymptotic_b:
    case P::Q_tangent_K:
    case P::Q_orth_K: return "0.5*sin(u)";
    default: return {};
  }
}

SurfacePtr Configuration::surface() const { return frame_from_invariants(inv, frame); }

Configuration construct_support(PropositionId id, const Invariants& base,
                                const ConstructOptions& options) {
  base.validate();
  if (options.sign != 1 && options.sign != -1) {
    throw Error(ErrorCode::Construction, "sign must be +1 or -1");
  }
  Configuration cfg;
  cfg.id = id;
  cfg.inv = base;
  cfg.sign = options.sign;
  cfg.constants = fill_constants(id, options.constants);
  const std::vector<double>& c = cfg.constants;
  const Invariants& inv = cfg.inv;
  const double s = options.sign;
  const double sd = delta_sign(inv);

  ScalarFn free = options.free;
  const std::string free_text = default_free(id);
  if (free.empty() && !free_text.empty()) free = expr::compile(free_text, inv.domain);
  if (!free.empty() && free_text.empty()) {
    std::ostringstream os;
    os << to_string(id) << " has no free function";
    throw Error(ErrorCode::Construction, os.str());
  }

  ScalarFn f, g;
  std::ostringstream note;
  auto root = [&] { return abs_pow(inv.delta, 0.5); };
  auto root_inv = [&] { return abs_pow(inv.delta, -0.5); };
  // Integral term of the Pick/scalar-curvature constructions. The integral
  // enters with the sign of delta; for delta < 0 the unsigned form fails.
  auto pick_f = [&](double half_c1, double c2) {
    const ScalarFn r = root();
    return r * (sd * half_c1 * antiderivative(r * inv.lambda) + c2);
  };
  if (sd < 0.0) note << "delta < 0: integral terms carry the sign of delta. ";

  switch (id) {
    case P::pick_vanishing:
    case P::T_tangent_asymptotic:
      require(inv, id, SurfaceClass::conoidal);
      g = constant(c[0], inv);
      f = pick_f(0.5 * c[0], c[1]);
      break;
    case P::scalar_curv_vanishing:
    case P::T_incompressible_G:
      require(inv, id, SurfaceClass::conoidal);
      g = free;
      f = (0.5 * g) * pick_f(1.0, c[0]);
      break;
    case P::relative_minimal_type1:
      f = free;
      g = antiderivative(inv.kappa * f / inv.delta) + c[0];
      break;
    case P::T_orth_generators:
      require(inv, id, SurfaceClass::conoidal);
      g = c[0] * root_inv();
      f = c[1] * root();
      break;
    case P::T_tangent_u:
      require(inv, id, SurfaceClass::conoidal);
      g = c[0] * root_inv();
      f = root() * (sd * c[0] * antiderivative(inv.lambda) + c[1]);
      break;
    case P::T_orth_u:
      require(inv, id, SurfaceClass::striction_line_of_curvature);
      g = c[0] * root_inv();
      f = c[1] * root();
      break;
    case P::T_tangent_K:
    case P::T_incompressible_I: {
      require(inv, id, SurfaceClass::conoidal);
      require(inv, id, SurfaceClass::constant_delta);
      const double d = constant_delta_value(inv);
      g = constant(c[0], inv);
      f = (d * c[0]) * antiderivative(inv.lambda) + c[1];
      break;
    }
    case P::T_orth_K:
      require(inv, id, SurfaceClass::edlinger);
      g = constant(c[0], inv);
      f = constant(c[1], inv);
      break;
    case P::Q_tangent_asymptotic_a:
      require(inv, id, SurfaceClass::right_helicoid);
      f = constant(c[0], inv);
      g = constant(c[1], inv);
      break;
    case P::Q_orth_generators:
    case P::Q_tangent_u:
    case P::Q_orth_u: {
      if (id == P::Q_tangent_u) require(inv, id, SurfaceClass::orthoid);
      if (id == P::Q_orth_u) require_lambda_nonzero(inv, id);
      g = free;
      const ScalarFn r = sqrt_gap(c[0], 1.0, g, inv);
      f = s * (inv.delta * r);
      ScalarFn k = s * (derivative(g) / r);
      if (id == P::Q_orth_u) k = k - constant(1.0, inv) / inv.lambda;
      cfg.inv.kappa = k;
      cfg.kappa_rebuilt = true;
      break;
    }
    case P::Q_tangent_asymptotic_b: {
      require(inv, id, SurfaceClass::orthoid);
      require(inv, id, SurfaceClass::constant_delta);
      g = free;
      const ScalarFn r = sqrt_gap(c[0], 1.0, g, inv);
      const double c3 = constant_delta_value(inv);
      f = (s * c3) * r;
      cfg.inv.kappa = (2.0 * s) * (derivative(g) / r);
      cfg.kappa_rebuilt = true;
      break;
    }
    case P::Q_tangent_K:
    case P::Q_orth_K: {
      require(inv, id, SurfaceClass::constant_delta);
      if (id == P::Q_tangent_K) require(inv, id, SurfaceClass::orthoid);
      if (id == P::Q_orth_K) require_lambda_nonzero(inv, id);
      g = free;
      const double c1 = constant_delta_value(inv);
      const ScalarFn r = sqrt_gap(c[0], c1, g, inv);
      f = s * r;
      ScalarFn k = (s * c1) * (derivative(g) / r);
      if (id == P::Q_orth_K) k = k - constant(1.0, inv) / inv.lambda;
      cfg.inv.kappa = k;
      cfg.kappa_rebuilt = true;
      break;
    }
  }
  if (cfg.kappa_rebuilt) {
    note << "kappa rebuilt from g and the constants; delta and lambda kept. ";
    cfg.inv.validate();
  }
  cfg.sp = make_support(f, g, inv.domain);
  if (cfg.sp.degenerate()) note << "degenerate support (f or g vanishes identically). ";
  cfg.note = note.str();
  if (!cfg.note.empty()) cfg.note.pop_back();
  return cfg;
}

ScalarFn perturb(const ScalarFn& f, double eps, PerturbMode mode) {
  if (eps == 0.0) return f;
  if (mode == PerturbMode::Uniform) return (1.0 + eps) * f;
  const ScalarFn m(
      [eps](double u) { return 1.0 + eps * (1.0 + sin(Jet3::variable(u))); }, f.domain(),
      "1+eps*(1+sin(u))");
  return f * m;
}

ResidualScan scan_property(const Property& prop, const RuledSurface& surface,
                           const SupportPair& sp, const Region& region) {
  ResidualScan out;
  if (prop.kind == Property::Kind::Angle) {
    const AngleReport r = angle_test(prop.field, CurveFamily{prop.family}, surface, sp, region,
                                     prop.mode);
    out.max_residual = r.max_geometric;
    out.condition = r.max_condition;
    out.worst_u = r.worst_u;
    out.worst_v = r.worst_v;
    out.samples = r.samples;
    out.skipped = r.skipped_pole + r.skipped_unsolvable + r.skipped_zero_field;
    return out;
  }
  const std::vector<double> us = linspace(region.u.lo, region.u.hi, region.nu);
  const std::vector<double> vs = linspace(region.v.lo, region.v.hi, region.nv);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> cells(us.size() * vs.size(), nan);
  std::vector<char> ok(cells.size(), 0);
  parallel_for(static_cast<int>(us.size()), [&](int i) {
    const Station st = station(surface, us[i]);
    const Jet3 f = sp.f(us[i]), g = sp.g(us[i]);
    for (size_t j = 0; j < vs.size(); ++j) {
      RightPoint p;
      p.st = st;
      p.v = vs[j];
      p.w = std::sqrt(st.delta.v0 * st.delta.v0 + p.v * p.v);
      p.f = f;
      p.g = g;
      if (p.is_pole()) continue;
      double value = 0.0;
      switch (prop.kind) {
        case Property::Kind::J: value = relative_sample(p).J; break;
        case Property::Kind::S: value = relative_sample(p).S; break;
        case Property::Kind::H: value = relative_sample(p).H; break;
        case Property::Kind::DivI: value = divergences(p).divI; break;
        case Property::Kind::DivG: value = divergences(p).divG; break;
        case Property::Kind::Angle: break;
      }
      cells[i * vs.size() + j] = std::abs(value);
      ok[i * vs.size() + j] = 1;
    }
  });
  for (size_t i = 0; i < us.size(); ++i) {
    for (size_t j = 0; j < vs.size(); ++j) {
      const size_t k = i * vs.size() + j;
      if (!ok[k]) {
        ++out.skipped;
        continue;
      }
      ++out.samples;
      if (!std::isnan(out.max_residual) &&
          (std::isnan(cells[k]) || cells[k] > out.max_residual || out.samples == 1)) {
        out.max_residual = cells[k];
        out.worst_u = us[i];
        out.worst_v = vs[j];
      }
    }
  }
  return out;
}

VerificationReport verify(const Configuration& cfg, const VerifyOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.id = cfg.id;
  rep.nu = options.nu;
  rep.nv = options.nv;
  rep.tol = options.tol;
  rep.note = cfg.note;
  const Property prop = property_of(cfg.id);
  rep.property = prop.describe();

  const SurfacePtr surface = cfg.surface();
  Region region;
  region.u = options.u_range.value_or(cfg.inv.domain);
  region.v = options.v_range;
  region.nu = options.nu;
  region.nv = options.nv;

  SupportPair sp = cfg.sp;
  sp.f = perturb(sp.f, options.perturb, options.mode);
  const ResidualScan scan = scan_property(prop, *surface, sp, region);

  SupportPair falsified = sp;
  falsified.f = perturb(sp.f, options.falsify, options.mode);
  const ResidualScan fscan = scan_property(prop, *surface, falsified, region);

  rep.max_residual = scan.max_residual;
  rep.condition_residual = scan.condition;
  rep.worst_u = scan.worst_u;
  rep.worst_v = scan.worst_v;
  rep.samples = scan.samples;
  rep.skipped = scan.skipped;
  rep.perturbed_residual = fscan.max_residual;
  rep.pass = scan.samples > 0 && scan.max_residual < options.tol;
  rep.insensitive = !(fscan.max_residual > 100.0 * options.tol);
  rep.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace rulekit
