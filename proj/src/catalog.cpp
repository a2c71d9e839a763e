#include "catalog.hpp"

#include <sstream>

#include "error.hpp"
#include "expr.hpp"

namespace rulekit {

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"helicoid", "1", "0", "0", {-4.0, 4.0}, 0.0,
       "right helicoid; identity frame pinned at u = 0"},
      {"edlinger-1", "1", "1", "-1", {0.0, 10.0}, std::numeric_limits<double>::quiet_NaN(),
       "Edlinger surface, kappa lambda + 1 = 0 with constant delta"},
      {"edlinger-2", "0.8", "2", "-0.5", {0.0, 6.0}, std::numeric_limits<double>::quiet_NaN(),
       "Edlinger surface with a steeper spherical image"},
      {"conoid-sin", "1+0.3*sin(u)", "0", "0.5", {0.0, 6.0},
       std::numeric_limits<double>::quiet_NaN(), "conoidal, varying distribution parameter"},
      {"conoid-neg", "-1-0.3*sin(u)", "0", "0.5", {0.0, 6.0},
       std::numeric_limits<double>::quiet_NaN(), "conoidal with negative distribution parameter"},
      {"conoid-const", "1.5", "0", "0.2+0.1*cos(u)", {0.0, 6.0},
       std::numeric_limits<double>::quiet_NaN(), "conoidal, constant distribution parameter"},
      {"orthoid-sin", "1+0.3*sin(u)", "0.4", "0", {0.0, 6.0},
       std::numeric_limits<double>::quiet_NaN(), "orthoid, varying distribution parameter"},
      {"orthoid-const", "1", "0.5", "0", {0.0, 6.0}, std::numeric_limits<double>::quiet_NaN(),
       "orthoid, constant distribution parameter"},
      {"lc-sin", "1+0.3*sin(u)", "0.5+0.2*cos(u)", "-1/(0.5+0.2*cos(u))", {0.0, 6.0},
       std::numeric_limits<double>::quiet_NaN(),
       "striction curve is a line of curvature, varying distribution parameter"},
      {"twisted", "1+0.2*cos(u)", "0.2+0.4*sin(u)", "0.3+0.1*u", {0.0, 6.0},
       std::numeric_limits<double>::quiet_NaN(), "generic skew surface"},
  };
  return entries;
}

const CatalogEntry& find_entry(const std::string& name) {
  for (const CatalogEntry& e : catalog()) {
    if (e.name == name) return e;
  }
  throw Error(ErrorCode::NotFound, "unknown catalog surface '" + name + "'");
}

Invariants load_invariants(const CatalogEntry& entry) {
  Invariants inv;
  inv.domain = entry.domain;
  inv.delta = expr::compile(entry.delta, entry.domain);
  inv.kappa = expr::compile(entry.kappa, entry.domain);
  inv.lambda = expr::compile(entry.lambda, entry.domain);
  try {
    inv.validate();
  } catch (const Error& e) {
    throw Error(e.code(), "catalog entry '" + entry.name + "': " + e.what());
  }
  return inv;
}

FrameOptions frame_options(const CatalogEntry& entry) {
  FrameOptions o;
  o.u0 = entry.u0;
  return o;
}

const ProvenCase& proven_case(PropositionId id) {
  using P = PropositionId;
  static const std::vector<ProvenCase> cases = {
      {P::pick_vanishing, "conoid-sin", {}, {-0.5, 1.5}},
      {P::scalar_curv_vanishing, "conoid-sin", {}, {-0.3, 1.5}},
      {P::relative_minimal_type1, "twisted", {}, {0.0, 1.5}},
      {P::T_orth_generators, "conoid-sin", {}, {-0.5, 1.5}},
      {P::T_tangent_u, "conoid-sin", {}, {-0.5, 1.5}},
      {P::T_orth_u, "lc-sin", {}, {-0.5, 1.5}},
      {P::T_tangent_asymptotic, "conoid-sin", {}, {-0.5, 1.5}},
      {P::T_tangent_K, "conoid-const", {}, {-0.5, 1.5}},
      {P::T_orth_K, "edlinger-1", {}, {-0.5, 1.5}},
      {P::T_incompressible_I, "conoid-const", {}, {-0.5, 1.5}},
      {P::T_incompressible_G, "conoid-sin", {}, {-0.3, 1.5}},
      {P::Q_orth_generators, "twisted", {}, {-1.0, 1.0}},
      {P::Q_tangent_u, "orthoid-sin", {}, {-1.0, 1.0}},
      {P::Q_orth_u, "twisted", {}, {-1.0, 1.0}},
      {P::Q_tangent_asymptotic_a, "helicoid", {}, {-0.5, 1.5}},
      {P::Q_tangent_asymptotic_b, "orthoid-const", {}, {-1.0, 1.0}},
      {P::Q_tangent_K, "orthoid-const", {}, {-1.0, 1.0}},
      {P::Q_orth_K, "edlinger-1", {}, {-1.0, 1.0}},
  };
  for (const ProvenCase& c : cases) {
    if (c.id == id) return c;
  }
  throw Error(ErrorCode::NotFound, std::string("no proven case for ") + to_string(id));
}

}  // namespace rulekit
