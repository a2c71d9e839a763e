#include "run.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "expr.hpp"
#include "parallel.hpp"

namespace rulekit {

using json = nlohmann::ordered_json;

namespace {

Interval interval_from_json(const json& j, const char* key) {
  if (j.is_string()) return parse_range(j.get<std::string>());
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw Error(ErrorCode::Syntax, std::string("'") + key + "' must be [a, b] or \"a:b\"");
}

std::string string_of(const json& j, const char* key) {
  if (!j.is_string()) throw Error(ErrorCode::Syntax, std::string("'") + key + "' must be a string");
  return j.get<std::string>();
}

double number_of(const json& j, const char* key) {
  if (!j.is_number()) throw Error(ErrorCode::Syntax, std::string("'") + key + "' must be a number");
  return j.get<double>();
}

std::vector<std::string> triple_of(const json& j, const char* key) {
  if (!j.is_array() || j.size() != 3) {
    throw Error(ErrorCode::Syntax, std::string("'") + key + "' must be three expressions");
  }
  std::vector<std::string> out;
  for (const json& c : j) out.push_back(string_of(c, key));
  return out;
}

SurfaceSpec surface_from_json(const json& j) {
  SurfaceSpec spec;
  if (j.is_string()) {
    spec.kind = SurfaceSpec::Kind::Catalog;
    spec.name = j.get<std::string>();
    return spec;
  }
  if (!j.is_object()) throw Error(ErrorCode::Syntax, "'surface' must be a name or an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k == "delta") spec.delta = string_of(*it, "delta");
    else if (k == "kappa") spec.kappa = string_of(*it, "kappa");
    else if (k == "lambda") spec.lambda = string_of(*it, "lambda");
    else if (k == "s") spec.s = triple_of(*it, "s");
    else if (k == "e") spec.e = triple_of(*it, "e");
    else if (k == "domain") spec.domain = interval_from_json(*it, "domain");
    else throw Error(ErrorCode::Syntax, "unknown surface key '" + k + "'");
  }
  const bool inv = !spec.delta.empty() || !spec.kappa.empty() || !spec.lambda.empty();
  const bool par = !spec.s.empty() || !spec.e.empty();
  if (inv == par) {
    throw Error(ErrorCode::Syntax,
                "inline surface needs either delta/kappa/lambda or s/e components");
  }
  if (inv) {
    if (spec.delta.empty() || spec.kappa.empty() || spec.lambda.empty()) {
      throw Error(ErrorCode::Syntax, "inline invariants need delta, kappa and lambda");
    }
    spec.kind = SurfaceSpec::Kind::Invariants;
  } else {
    if (spec.s.empty() || spec.e.empty()) {
      throw Error(ErrorCode::Syntax, "inline parametrization needs s and e");
    }
    spec.kind = SurfaceSpec::Kind::Parametrization;
  }
  return spec;
}

json surface_to_json(const SurfaceSpec& spec) {
  if (spec.kind == SurfaceSpec::Kind::Catalog) return spec.name;
  json j = json::object();
  if (spec.kind == SurfaceSpec::Kind::Invariants) {
    j["delta"] = spec.delta;
    j["kappa"] = spec.kappa;
    j["lambda"] = spec.lambda;
  } else {
    j["s"] = spec.s;
    j["e"] = spec.e;
  }
  if (spec.domain) j["domain"] = {spec.domain->lo, spec.domain->hi};
  return j;
}

void check_range(const Interval& r, const char* what) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi) {
    throw Error(ErrorCode::Precondition, std::string(what) + " range is empty");
  }
}

VecFn vec_from_exprs(const std::vector<std::string>& comps, Interval domain) {
  std::vector<expr::Expr> ex;
  for (const std::string& c : comps) ex.push_back(expr::parse(c));
  VecFn fn;
  fn.domain = domain;
  fn.eval = [ex](double u) {
    VecJet j;
    for (int k = 0; k < 3; ++k) {
      const Jet3 c = ex[k].eval(u);
      for (int m = 0; m < 4; ++m) j.d[m][k] = c[m];
    }
    return j;
  };
  return fn;
}

Invariants invariants_of(const SurfaceSpec& spec, FrameOptions* frame) {
  switch (spec.kind) {
    case SurfaceSpec::Kind::Catalog: {
      if (spec.domain) throw Error(ErrorCode::Precondition, "catalog surfaces fix their own domain");
      const CatalogEntry& e = find_entry(spec.name);
      if (frame) *frame = frame_options(e);
      return load_invariants(e);
    }
    case SurfaceSpec::Kind::Invariants: {
      if (!spec.domain) throw Error(ErrorCode::Precondition, "inline surfaces need a domain");
      check_range(*spec.domain, "domain");
      Invariants inv;
      inv.domain = *spec.domain;
      inv.delta = expr::compile(spec.delta, inv.domain);
      inv.kappa = expr::compile(spec.kappa, inv.domain);
      inv.lambda = expr::compile(spec.lambda, inv.domain);
      inv.validate();
      return inv;
    }
    case SurfaceSpec::Kind::Parametrization: {
      if (!spec.domain) throw Error(ErrorCode::Precondition, "inline surfaces need a domain");
      check_range(*spec.domain, "domain");
      return invariants_from_parametrization(vec_from_exprs(spec.s, *spec.domain),
                                             vec_from_exprs(spec.e, *spec.domain));
    }
  }
  throw Error(ErrorCode::Internal, "unknown surface kind");
}

std::string surface_label(const SurfaceSpec& spec) {
  switch (spec.kind) {
    case SurfaceSpec::Kind::Catalog: return spec.name;
    case SurfaceSpec::Kind::Invariants:
      return "delta=" + spec.delta + "; kappa=" + spec.kappa + "; lambda=" + spec.lambda;
    case SurfaceSpec::Kind::Parametrization: {
      std::string out = "s=(";
      for (int k = 0; k < 3; ++k) out += (k ? "," : "") + spec.s[k];
      out += "); e=(";
      for (int k = 0; k < 3; ++k) out += (k ? "," : "") + spec.e[k];
      return out + ")";
    }
  }
  return {};
}

const SurfaceSpec& require_surface(const RunConfig& cfg) {
  if (!cfg.surface) throw Error(ErrorCode::Precondition, "no surface given");
  return *cfg.surface;
}

json vec_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

const char* format_or(const RunConfig& cfg, const char* fallback) {
  return cfg.format.empty() ? fallback : cfg.format.c_str();
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Interval parse_range(const std::string& text) {
  const size_t colon = text.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::Syntax, "range '" + text + "' must look like a:b");
  }
  auto number = [&](std::string_view part) {
    double x = 0.0;
    const auto res = std::from_chars(part.data(), part.data() + part.size(), x);
    if (res.ec != std::errc() || res.ptr != part.data() + part.size() || part.empty()) {
      throw Error(ErrorCode::Syntax, "range '" + text + "' must look like a:b");
    }
    return x;
  };
  const std::string_view sv(text);
  return {number(sv.substr(0, colon)), number(sv.substr(colon + 1))};
}

std::pair<int, int> parse_grid(const std::string& text) {
  const size_t x = text.find('x');
  auto number = [&](std::string_view part) {
    int n = 0;
    const auto res = std::from_chars(part.data(), part.data() + part.size(), n);
    if (res.ec != std::errc() || res.ptr != part.data() + part.size() || part.empty()) {
      throw Error(ErrorCode::Syntax, "grid '" + text + "' must look like NuxNv");
    }
    return n;
  };
  if (x == std::string::npos) throw Error(ErrorCode::Syntax, "grid '" + text + "' must look like NuxNv");
  const std::string_view sv(text);
  return {number(sv.substr(0, x)), number(sv.substr(x + 1))};
}

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SyntaxError(e.byte, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::Syntax, "config must be a JSON object");
  RunConfig cfg;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const json& v = *it;
    if (k == "surface") cfg.surface = surface_from_json(v);
    else if (k == "f") cfg.f = string_of(v, "f");
    else if (k == "g") cfg.g = string_of(v, "g");
    else if (k == "u_range") cfg.u_range = interval_from_json(v, "u_range");
    else if (k == "v_range") cfg.v_range = interval_from_json(v, "v_range");
    else if (k == "grid") {
      if (v.is_string()) {
        cfg.grid = parse_grid(v.get<std::string>());
      } else if (v.is_array() && v.size() == 2 && v[0].is_number_integer() &&
                 v[1].is_number_integer()) {
        cfg.grid = std::make_pair(v[0].get<int>(), v[1].get<int>());
      } else {
        throw Error(ErrorCode::Syntax, "'grid' must be [Nu, Nv] or \"NuxNv\"");
      }
    } else if (k == "prop") cfg.prop = string_of(v, "prop");
    else if (k == "tol") cfg.tol = number_of(v, "tol");
    else if (k == "perturb") cfg.perturb = number_of(v, "perturb");
    else if (k == "perturb_mode") {
      const std::string m = string_of(v, "perturb_mode");
      if (m == "modulated") cfg.perturb_mode = PerturbMode::Modulated;
      else if (m == "uniform") cfg.perturb_mode = PerturbMode::Uniform;
      else throw Error(ErrorCode::Syntax, "'perturb_mode' must be modulated or uniform");
    } else if (k == "constants") {
      if (!v.is_array()) throw Error(ErrorCode::Syntax, "'constants' must be an array");
      for (const json& c : v) cfg.constants.push_back(number_of(c, "constants"));
    } else if (k == "sign") {
      if (!v.is_number_integer()) throw Error(ErrorCode::Syntax, "'sign' must be 1 or -1");
      cfg.sign = v.get<int>();
    } else if (k == "free") cfg.free = string_of(v, "free");
    else if (k == "format") cfg.format = string_of(v, "format");
    else if (k == "out") cfg.out = string_of(v, "out");
    else if (k == "normals") {
      if (!v.is_boolean()) throw Error(ErrorCode::Syntax, "'normals' must be a boolean");
      cfg.normals = v.get<bool>();
    } else {
      throw Error(ErrorCode::Syntax, "unknown config key '" + k + "'");
    }
  }
  if (cfg.u_range) check_range(*cfg.u_range, "u");
  if (cfg.v_range) check_range(*cfg.v_range, "v");
  if (cfg.grid && (cfg.grid->first < 2 || cfg.grid->second < 2)) {
    throw Error(ErrorCode::Precondition, "grid must be at least 2x2");
  }
  if (!(cfg.tol > 0.0)) throw Error(ErrorCode::Precondition, "tol must be positive");
  if (cfg.sign != 1 && cfg.sign != -1) throw Error(ErrorCode::Precondition, "sign must be 1 or -1");
  if (!cfg.format.empty() && cfg.format != "json" && cfg.format != "csv" && cfg.format != "obj") {
    throw Error(ErrorCode::Precondition, "format must be json, csv or obj");
  }
  return cfg;
}

std::string to_json(const RunConfig& cfg) {
  json j = json::object();
  if (cfg.surface) j["surface"] = surface_to_json(*cfg.surface);
  if (!cfg.f.empty()) j["f"] = cfg.f;
  if (!cfg.g.empty()) j["g"] = cfg.g;
  if (cfg.u_range) j["u_range"] = {cfg.u_range->lo, cfg.u_range->hi};
  if (cfg.v_range) j["v_range"] = {cfg.v_range->lo, cfg.v_range->hi};
  if (cfg.grid) j["grid"] = {cfg.grid->first, cfg.grid->second};
  if (!cfg.prop.empty()) j["prop"] = cfg.prop;
  j["tol"] = cfg.tol;
  j["perturb"] = cfg.perturb;
  j["perturb_mode"] = cfg.perturb_mode == PerturbMode::Uniform ? "uniform" : "modulated";
  if (!cfg.constants.empty()) j["constants"] = cfg.constants;
  j["sign"] = cfg.sign;
  if (!cfg.free.empty()) j["free"] = cfg.free;
  if (!cfg.format.empty()) j["format"] = cfg.format;
  if (!cfg.out.empty()) j["out"] = cfg.out;
  j["normals"] = cfg.normals;
  return j.dump();
}

BuiltSurface build_surface(const SurfaceSpec& spec) {
  BuiltSurface out;
  out.label = surface_label(spec);
  if (spec.kind == SurfaceSpec::Kind::Parametrization) {
    check_range(spec.domain.value_or(Interval{1, 0}), "domain");
    out.surface = surface_from_parametrization(vec_from_exprs(spec.s, *spec.domain),
                                               vec_from_exprs(spec.e, *spec.domain));
    return out;
  }
  FrameOptions frame;
  Invariants inv = invariants_of(spec, &frame);
  out.surface = frame_from_invariants(std::move(inv), frame);
  return out;
}

const std::vector<std::string>& eval_columns() {
  static const std::vector<std::string> cols = {
      "u",      "v",      "status", "x_x",    "x_y",    "x_z",  "x1_x", "x1_y", "x1_z",
      "x2_x",   "x2_y",   "x2_z",   "xi_x",   "xi_y",   "xi_z", "w",    "h11",  "h12",
      "h22",    "Kt",     "Ht",     "q",      "y_x",    "y_y",  "y_z",  "y1",   "y2",
      "y3",     "B11",    "B12",    "B21",    "B22",    "H",    "K",    "J",    "S",
      "G11",    "G12",    "G22",    "Ginv11", "Ginv12", "Ginv22", "T1", "T2",   "T_x",
      "T_y",    "T_z",    "Q_x",    "Q_y",    "Q_z",    "divI", "divG"};
  return cols;
}

std::string run_eval(const RunConfig& cfg) {
  const BuiltSurface built = build_surface(require_surface(cfg));
  const RuledSurface& surf = *built.surface;
  if (cfg.f.empty() || cfg.g.empty()) {
    throw Error(ErrorCode::Precondition, "eval needs support functions f and g");
  }
  const Interval dom = surf.domain();
  const SupportPair sp =
      make_support(expr::compile(cfg.f, dom), expr::compile(cfg.g, dom), dom);
  const Interval ur = cfg.u_range.value_or(dom);
  const Interval vr = cfg.v_range.value_or(Interval{-1.0, 1.0});
  const auto [nu, nv] = cfg.grid.value_or(std::make_pair(8, 8));
  const std::string format = format_or(cfg, "json");
  if (format == "obj") throw Error(ErrorCode::Precondition, "eval writes json or csv");
  if (!dom.contains(ur.lo) || !dom.contains(ur.hi)) {
    throw Error(ErrorCode::Domain, "u range outside the surface domain");
  }

  struct Row {
    double u = 0.0, v = 0.0;
    std::string status = "ok";
    bool euclid = false, relative = false;
    SurfaceSample ss;
    RelativeSample rs;
    FieldSample fs;
  };
  const std::vector<double> us = linspace(ur.lo, ur.hi, nu);
  const std::vector<double> vs = linspace(vr.lo, vr.hi, nv);
  std::vector<Row> rows(us.size() * vs.size());
  parallel_for(nu, [&](int i) {
    for (int j = 0; j < nv; ++j) {
      Row& r = rows[i * nv + j];
      r.u = us[i];
      r.v = vs[j];
      try {
        const RightPoint p = right_point(surf, sp, r.u, r.v);
        r.ss = surface_sample(p.st, r.v);
        r.euclid = true;
        if (p.is_pole()) {
          r.status = "pole";
          continue;
        }
        r.rs = relative_sample(p);
        r.fs = field_sample(p);
        r.relative = true;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Singular) throw;
        r.status = "singular";
      }
    }
  });

  if (format == "csv") {
    std::ostringstream os;
    const auto& cols = eval_columns();
    for (size_t k = 0; k < cols.size(); ++k) os << (k ? "," : "") << cols[k];
    os << '\n';
    for (const Row& r : rows) {
      std::vector<double> vals;
      auto add3 = [&](const Vec3& v) { vals.insert(vals.end(), {v[0], v[1], v[2]}); };
      add3(r.ss.x);
      add3(r.ss.x1);
      add3(r.ss.x2);
      add3(r.ss.xi);
      vals.insert(vals.end(), {r.ss.w, r.ss.h11, r.ss.h12, r.ss.h22, r.ss.Kt, r.ss.Ht});
      const size_t euclid_count = vals.size();
      vals.push_back(r.rs.q);
      add3(r.rs.y);
      add3(r.rs.y_frame);
      vals.insert(vals.end(), {r.rs.B11, r.rs.B12, r.rs.B21, r.rs.B22, r.rs.H, r.rs.K, r.rs.J,
                               r.rs.S, r.rs.G11, r.rs.G12, r.rs.G22, r.rs.Ginv11, r.rs.Ginv12,
                               r.rs.Ginv22, r.fs.T1, r.fs.T2});
      add3(r.fs.T);
      add3(r.fs.Q);
      vals.insert(vals.end(), {r.fs.divI, r.fs.divG});
      os << format_number(r.u) << ',' << format_number(r.v) << ',' << r.status;
      for (size_t k = 0; k < vals.size(); ++k) {
        const bool have = k < euclid_count ? r.euclid : r.relative;
        os << ',';
        if (have) os << format_number(vals[k]);
      }
      os << '\n';
    }
    return os.str();
  }

  json points = json::array();
  for (const Row& r : rows) {
    json p = {{"u", r.u}, {"v", r.v}, {"status", r.status}};
    if (r.euclid) {
      p["surface"] = {{"x", vec_json(r.ss.x)},   {"x1", vec_json(r.ss.x1)},
                      {"x2", vec_json(r.ss.x2)}, {"xi", vec_json(r.ss.xi)},
                      {"w", r.ss.w},             {"h11", r.ss.h11},
                      {"h12", r.ss.h12},         {"h22", r.ss.h22},
                      {"Kt", r.ss.Kt},           {"Ht", r.ss.Ht}};
    } else {
      p["surface"] = nullptr;
    }
    if (r.relative) {
      const RelativeSample& s = r.rs;
      p["relative"] = {{"q", s.q},           {"y", vec_json(s.y)},
                       {"y_frame", vec_json(s.y_frame)},
                       {"B11", s.B11},       {"B12", s.B12},
                       {"B21", s.B21},       {"B22", s.B22},
                       {"H", s.H},           {"K", s.K},
                       {"J", s.J},           {"S", s.S},
                       {"G11", s.G11},       {"G12", s.G12},
                       {"G22", s.G22},       {"Ginv11", s.Ginv11},
                       {"Ginv12", s.Ginv12}, {"Ginv22", s.Ginv22}};
      p["field"] = {{"T1", r.fs.T1},           {"T2", r.fs.T2},
                    {"T", vec_json(r.fs.T)},   {"Q", vec_json(r.fs.Q)},
                    {"divI", r.fs.divI},       {"divG", r.fs.divG}};
    } else {
      p["relative"] = nullptr;
      p["field"] = nullptr;
    }
    points.push_back(std::move(p));
  }
  json doc = {{"schema", "rulekit-eval/1"},
              {"surface", built.label},
              {"f", sp.f.label()},
              {"g", sp.g.label()},
              {"asymptotic", sp.asymptotic},
              {"central", sp.central},
              {"grid", {nu, nv}},
              {"u_range", {ur.lo, ur.hi}},
              {"v_range", {vr.lo, vr.hi}},
              {"points", std::move(points)}};
  return doc.dump(1) + "\n";
}

VerifyRun run_verify(const RunConfig& cfg) {
  if (cfg.prop.empty()) throw Error(ErrorCode::Precondition, "verify needs a proposition id");
  const std::optional<PropositionId> id = proposition_from_string(cfg.prop);
  if (!id) throw Error(ErrorCode::NotFound, "unknown proposition id '" + cfg.prop + "'");
  if (!cfg.f.empty() || !cfg.g.empty()) {
    throw Error(ErrorCode::Precondition,
                "verify constructs f and g itself; use constants and the free function");
  }
  const ProvenCase& pc = proven_case(*id);
  SurfaceSpec spec;
  spec.kind = SurfaceSpec::Kind::Catalog;
  spec.name = pc.surface;
  if (cfg.surface) spec = *cfg.surface;
  FrameOptions frame;
  const Invariants inv = invariants_of(spec, &frame);

  ConstructOptions co;
  co.constants = cfg.constants.empty() ? pc.constants : cfg.constants;
  co.sign = cfg.sign;
  if (!cfg.free.empty()) co.free = expr::compile(cfg.free, inv.domain);
  Configuration conf = construct_support(*id, inv, co);
  conf.frame = frame;

  VerifyOptions vo;
  vo.u_range = cfg.u_range;
  vo.v_range = cfg.v_range.value_or(pc.v_range);
  const auto grid = cfg.grid.value_or(std::make_pair(32, 32));
  vo.nu = grid.first;
  vo.nv = grid.second;
  vo.tol = cfg.tol;
  vo.perturb = cfg.perturb;
  vo.mode = cfg.perturb_mode;

  VerifyRun run;
  run.report = verify(conf, vo);
  const VerificationReport& r = run.report;
  json doc = {{"schema", "rulekit-verify/1"},
              {"id", to_string(r.id)},
              {"pass", r.pass},
              {"max_residual", r.max_residual},
              {"perturbed_residual", r.perturbed_residual},
              {"grid", {r.nu, r.nv}},
              {"tol", r.tol},
              {"seconds", r.seconds},
              {"insensitive", r.insensitive},
              {"property", r.property},
              {"surface", surface_label(spec)},
              {"constants", conf.constants},
              {"sign", conf.sign},
              {"kappa_rebuilt", conf.kappa_rebuilt},
              {"perturb", cfg.perturb},
              {"perturb_mode", cfg.perturb_mode == PerturbMode::Uniform ? "uniform" : "modulated"},
              {"condition_residual", r.condition_residual},
              {"worst", {r.worst_u, r.worst_v}},
              {"samples", r.samples},
              {"skipped", r.skipped},
              {"note", r.note}};
  run.json = doc.dump(1) + "\n";
  return run;
}

std::string run_mesh(const RunConfig& cfg) {
  const BuiltSurface built = build_surface(require_surface(cfg));
  const RuledSurface& surf = *built.surface;
  if (!cfg.format.empty() && cfg.format != "obj") {
    throw Error(ErrorCode::Precondition, "mesh writes obj");
  }
  const Interval ur = cfg.u_range.value_or(surf.domain());
  const Interval vr = cfg.v_range.value_or(Interval{-1.0, 1.0});
  const auto [nu, nv] = cfg.grid.value_or(std::make_pair(16, 16));
  const std::vector<double> us = linspace(ur.lo, ur.hi, nu);
  const std::vector<double> vs = linspace(vr.lo, vr.hi, nv);
  std::vector<SurfaceSample> samples(us.size() * vs.size());
  parallel_for(nu, [&](int i) {
    const Station st = station(surf, us[i]);
    for (int j = 0; j < nv; ++j) samples[i * nv + j] = surface_sample(st, vs[j]);
  });
  std::ostringstream os;
  auto line = [&](const char* tag, const Vec3& p) {
    os << tag << ' ' << format_number(p[0]) << ' ' << format_number(p[1]) << ' '
       << format_number(p[2]) << '\n';
  };
  for (const SurfaceSample& s : samples) line("v", s.x);
  if (cfg.normals) {
    for (const SurfaceSample& s : samples) line("vn", s.xi);
  }
  auto corner = [&](int k) {
    os << ' ' << k;
    if (cfg.normals) os << "//" << k;
  };
  for (int i = 0; i + 1 < nu; ++i) {
    for (int j = 0; j + 1 < nv; ++j) {
      // 1-based; (u, v) edge order keeps the face normal along xi.
      const int a = i * nv + j + 1, b = (i + 1) * nv + j + 1, c = b + 1, d = a + 1;
      os << 'f';
      corner(a);
      corner(b);
      corner(c);
      os << "\nf";
      corner(a);
      corner(c);
      corner(d);
      os << '\n';
    }
  }
  return os.str();
}

std::string catalog_json() {
  json arr = json::array();
  for (const CatalogEntry& e : catalog()) {
    const Invariants inv = load_invariants(e);
    json classes = json::array();
    for (SurfaceClass c : classify_surface(inv)) classes.push_back(to_string(c));
    arr.push_back({{"name", e.name},
                   {"delta", e.delta},
                   {"kappa", e.kappa},
                   {"lambda", e.lambda},
                   {"domain", {e.domain.lo, e.domain.hi}},
                   {"classes", classes},
                   {"description", e.description}});
  }
  return arr.dump(1) + "\n";
}

std::string catalog_text() {
  std::ostringstream os;
  for (const CatalogEntry& e : catalog()) {
    const Invariants inv = load_invariants(e);
    os << e.name << "  [" << format_number(e.domain.lo) << ", " << format_number(e.domain.hi)
       << "]  delta=" << e.delta << "  kappa=" << e.kappa << "  lambda=" << e.lambda << "  {";
    bool first = true;
    for (SurfaceClass c : classify_surface(inv)) {
      os << (first ? "" : ",") << to_string(c);
      first = false;
    }
    os << "}  " << e.description << '\n';
  }
  return os.str();
}

}  // namespace rulekit
