#ifndef RULEKIT_RULEKIT_H
#define RULEKIT_RULEKIT_H

/* C interface to the rulekit core. Every call returns an rk_status; on
 * failure rk_last_error() holds a message for the calling thread. Handles are
 * opaque and must be released with the matching *_free function. Strings
 * returned through char** are owned by the caller and released with
 * rk_string_free. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define RK_API __declspec(dllexport)
#else
#define RK_API __attribute__((visibility("default")))
#endif

typedef enum rk_status {
  RK_OK = 0,
  RK_ERR_DOMAIN = 1,
  RK_ERR_SYNTAX = 2,
  RK_ERR_SINGULAR = 3,
  RK_ERR_PRECONDITION = 4,
  RK_ERR_CONSTRUCTION = 5,
  RK_ERR_NOT_FOUND = 6,
  RK_ERR_NUMERICAL = 7,
  RK_ERR_IO = 8,
  RK_ERR_INTERNAL = 9,
  RK_ERR_INVALID_ARGUMENT = 10,
  /* rk_verify ran to completion but the property does not hold. */
  RK_PROPERTY_FAILED = 11
} rk_status;

typedef struct rk_surface rk_surface;
typedef struct rk_normalization rk_normalization;

typedef struct rk_surface_sample {
  double x[3], x1[3], x2[3], xi[3];
  double w;
  double h11, h12, h22;
  double Kt, Ht;
} rk_surface_sample;

typedef struct rk_relative_sample {
  double q;
  double y[3];       /* ambient coordinates */
  double y_frame[3]; /* components in (e, n, z) */
  double B11, B12, B21, B22;
  double H, K, J, S;
  double G11, G12, G22;
  double Ginv11, Ginv12, Ginv22;
} rk_relative_sample;

typedef struct rk_field_sample {
  double T1, T2;
  double T[3], Q[3];
  double divI, divG;
} rk_field_sample;

RK_API const char* rk_version(void);
RK_API const char* rk_status_name(rk_status status);
/* Message of the last failed call on this thread; "" if none. */
RK_API const char* rk_last_error(void);
RK_API void rk_string_free(char* s);

RK_API rk_status rk_surface_from_catalog(const char* name, rk_surface** out);
RK_API rk_status rk_surface_from_invariants(const char* delta, const char* kappa,
                                            const char* lambda, double u_lo, double u_hi,
                                            rk_surface** out);
RK_API void rk_surface_free(rk_surface* surface);
RK_API rk_status rk_surface_domain(const rk_surface* surface, double* lo, double* hi);
RK_API rk_status rk_surface_sample_at(const rk_surface* surface, double u, double v,
                                      rk_surface_sample* out);

/* The normalization keeps its own reference to the surface. */
RK_API rk_status rk_normalization_create(const rk_surface* surface, const char* f,
                                         const char* g, rk_normalization** out);
RK_API void rk_normalization_free(rk_normalization* n);
/* 1 or 2; RK_ERR_PRECONDITION when the type changes along the domain. */
RK_API rk_status rk_normalization_type(const rk_normalization* n, int* type);
/* RK_ERR_SINGULAR at a pole (f + g v = 0). */
RK_API rk_status rk_relative_sample_at(const rk_normalization* n, double u, double v,
                                       rk_relative_sample* out);
RK_API rk_status rk_field_sample_at(const rk_normalization* n, double u, double v,
                                    rk_field_sample* out);

/* Drivers taking a JSON run configuration (keys documented in README). */
RK_API rk_status rk_catalog_json(char** out);
RK_API rk_status rk_catalog_text(char** out);
RK_API rk_status rk_eval(const char* config_json, char** out);
/* *out holds the report whenever the status is RK_OK or RK_PROPERTY_FAILED. */
RK_API rk_status rk_verify(const char* config_json, char** out);
RK_API rk_status rk_mesh(const char* config_json, char** out);
/* Lists proposition ids, one per line. */
RK_API rk_status rk_proposition_ids(char** out);

#ifdef __cplusplus
}
#endif

#endif
