#include "rulekit/rulekit.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "error.hpp"
#include "expr.hpp"
#include "run.hpp"
#include "vector_fields.hpp"

struct rk_surface {
  rulekit::SurfacePtr surface;
};

struct rk_normalization {
  rulekit::SurfacePtr surface;
  rulekit::SupportPair sp;
};

namespace {

thread_local std::string last_error;

rk_status status_of(rulekit::ErrorCode code) {
  using rulekit::ErrorCode;
  switch (code) {
    case ErrorCode::Domain: return RK_ERR_DOMAIN;
    case ErrorCode::Syntax: return RK_ERR_SYNTAX;
    case ErrorCode::Singular: return RK_ERR_SINGULAR;
    case ErrorCode::Precondition: return RK_ERR_PRECONDITION;
    case ErrorCode::Construction: return RK_ERR_CONSTRUCTION;
    case ErrorCode::NotFound: return RK_ERR_NOT_FOUND;
    case ErrorCode::Numerical: return RK_ERR_NUMERICAL;
    case ErrorCode::Io: return RK_ERR_IO;
    case ErrorCode::Internal: return RK_ERR_INTERNAL;
  }
  return RK_ERR_INTERNAL;
}

template <class F>
rk_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const rulekit::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return RK_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RK_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown exception";
    return RK_ERR_INTERNAL;
  }
}

rk_status invalid(const char* what) {
  last_error = what;
  return RK_ERR_INVALID_ARGUMENT;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void put(double* dst, const rulekit::Vec3& v) {
  for (int k = 0; k < 3; ++k) dst[k] = v[k];
}

rk_status run_driver(const char* config_json, char** out,
                     std::string (*driver)(const rulekit::RunConfig&)) {
  if (!config_json || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    *out = dup(driver(rulekit::parse_run_config(config_json)));
    return RK_OK;
  });
}

}  // namespace

extern "C" {

const char* rk_version(void) { return "1.0.0"; }

const char* rk_status_name(rk_status status) {
  switch (status) {
    case RK_OK: return "ok";
    case RK_ERR_DOMAIN: return "domain";
    case RK_ERR_SYNTAX: return "syntax";
    case RK_ERR_SINGULAR: return "singular";
    case RK_ERR_PRECONDITION: return "precondition";
    case RK_ERR_CONSTRUCTION: return "construction";
    case RK_ERR_NOT_FOUND: return "not_found";
    case RK_ERR_NUMERICAL: return "numerical";
    case RK_ERR_IO: return "io";
    case RK_ERR_INTERNAL: return "internal";
    case RK_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case RK_PROPERTY_FAILED: return "property_failed";
  }
  return "unknown";
}

const char* rk_last_error(void) { return last_error.c_str(); }

void rk_string_free(char* s) { std::free(s); }

rk_status rk_surface_from_catalog(const char* name, rk_surface** out) {
  if (!name || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    rulekit::SurfaceSpec spec;
    spec.name = name;
    *out = new rk_surface{rulekit::build_surface(spec).surface};
    return RK_OK;
  });
}

rk_status rk_surface_from_invariants(const char* delta, const char* kappa, const char* lambda,
                                     double u_lo, double u_hi, rk_surface** out) {
  if (!delta || !kappa || !lambda || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    rulekit::SurfaceSpec spec;
    spec.kind = rulekit::SurfaceSpec::Kind::Invariants;
    spec.delta = delta;
    spec.kappa = kappa;
    spec.lambda = lambda;
    spec.domain = rulekit::Interval{u_lo, u_hi};
    *out = new rk_surface{rulekit::build_surface(spec).surface};
    return RK_OK;
  });
}

void rk_surface_free(rk_surface* surface) { delete surface; }

rk_status rk_surface_domain(const rk_surface* surface, double* lo, double* hi) {
  if (!surface || !lo || !hi) return invalid("null argument");
  *lo = surface->surface->domain().lo;
  *hi = surface->surface->domain().hi;
  return RK_OK;
}

rk_status rk_surface_sample_at(const rk_surface* surface, double u, double v,
                               rk_surface_sample* out) {
  if (!surface || !out) return invalid("null argument");
  return guarded([&] {
    const rulekit::SurfaceSample s = rulekit::surface_sample(*surface->surface, u, v);
    put(out->x, s.x);
    put(out->x1, s.x1);
    put(out->x2, s.x2);
    put(out->xi, s.xi);
    out->w = s.w;
    out->h11 = s.h11;
    out->h12 = s.h12;
    out->h22 = s.h22;
    out->Kt = s.Kt;
    out->Ht = s.Ht;
    return RK_OK;
  });
}

rk_status rk_normalization_create(const rk_surface* surface, const char* f, const char* g,
                                  rk_normalization** out) {
  if (!surface || !f || !g || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    const rulekit::Interval dom = surface->surface->domain();
    rulekit::SupportPair sp = rulekit::make_support(rulekit::expr::compile(f, dom),
                                                    rulekit::expr::compile(g, dom), dom);
    *out = new rk_normalization{surface->surface, std::move(sp)};
    return RK_OK;
  });
}

void rk_normalization_free(rk_normalization* n) { delete n; }

rk_status rk_normalization_type(const rk_normalization* n, int* type) {
  if (!n || !type) return invalid("null argument");
  return guarded([&] {
    const rulekit::RelativeImage img = rulekit::classify_and_image(n->surface, n->sp);
    *type = img.type() == rulekit::NormalizationType::First ? 1 : 2;
    return RK_OK;
  });
}

rk_status rk_relative_sample_at(const rk_normalization* n, double u, double v,
                                rk_relative_sample* out) {
  if (!n || !out) return invalid("null argument");
  return guarded([&] {
    const rulekit::RightPoint p = rulekit::right_point(*n->surface, n->sp, u, v);
    const rulekit::RelativeSample s = rulekit::relative_sample(p);
    out->q = s.q;
    put(out->y, s.y);
    put(out->y_frame, s.y_frame);
    out->B11 = s.B11;
    out->B12 = s.B12;
    out->B21 = s.B21;
    out->B22 = s.B22;
    out->H = s.H;
    out->K = s.K;
    out->J = s.J;
    out->S = s.S;
    out->G11 = s.G11;
    out->G12 = s.G12;
    out->G22 = s.G22;
    out->Ginv11 = s.Ginv11;
    out->Ginv12 = s.Ginv12;
    out->Ginv22 = s.Ginv22;
    return RK_OK;
  });
}

rk_status rk_field_sample_at(const rk_normalization* n, double u, double v,
                             rk_field_sample* out) {
  if (!n || !out) return invalid("null argument");
  return guarded([&] {
    const rulekit::RightPoint p = rulekit::right_point(*n->surface, n->sp, u, v);
    const rulekit::FieldSample s = rulekit::field_sample(p);
    out->T1 = s.T1;
    out->T2 = s.T2;
    put(out->T, s.T);
    put(out->Q, s.Q);
    out->divI = s.divI;
    out->divG = s.divG;
    return RK_OK;
  });
}

rk_status rk_catalog_json(char** out) {
  if (!out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    *out = dup(rulekit::catalog_json());
    return RK_OK;
  });
}

rk_status rk_catalog_text(char** out) {
  if (!out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    *out = dup(rulekit::catalog_text());
    return RK_OK;
  });
}

rk_status rk_eval(const char* config_json, char** out) {
  return run_driver(config_json, out, rulekit::run_eval);
}

rk_status rk_mesh(const char* config_json, char** out) {
  return run_driver(config_json, out, rulekit::run_mesh);
}

rk_status rk_verify(const char* config_json, char** out) {
  if (!config_json || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    const rulekit::VerifyRun run = rulekit::run_verify(rulekit::parse_run_config(config_json));
    *out = dup(run.json);
    if (run.report.pass) return RK_OK;
    last_error = "property does not hold: max residual " +
                 rulekit::format_number(run.report.max_residual) + " exceeds tol " +
                 rulekit::format_number(run.report.tol);
    return RK_PROPERTY_FAILED;
  });
}

rk_status rk_proposition_ids(char** out) {
  if (!out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    std::string s;
    for (rulekit::PropositionId id : rulekit::all_propositions()) {
      s += rulekit::to_string(id);
      s += '\n';
    }
    *out = dup(s);
    return RK_OK;
  });
}

}  // extern "C"
