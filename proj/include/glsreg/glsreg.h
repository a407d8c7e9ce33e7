/* SPDX-License-Identifier: Apache-2.0 */
#ifndef GLSREG_GLSREG_H
#define GLSREG_GLSREG_H

#include <stddef.h>
#include <stdint.h>

#if defined(GLSREG_BUILDING_LIBRARY)
#define GLSREG_API __attribute__((visibility("default")))
#else
#define GLSREG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Values are stable; new codes are only appended. */
typedef enum gls_status {
  GLS_OK = 0,
  GLS_INVALID_ARGUMENT = 1,
  GLS_INVALID_EPSILON = 2,
  GLS_EMPTY_DOMAIN = 3,
  GLS_NO_FINITE_MOMENT = 4,
  GLS_DOMAIN_ERROR = 5,
  GLS_EMPTY_SAMPLE = 6,
  GLS_INVALID_EXPONENT = 7,
  GLS_DIVERGENT = 8,
  GLS_TOLERANCE_UNREACHABLE = 9,
  GLS_TRUNCATION_INFEASIBLE = 10,
  GLS_MOMENT_INFINITE = 11,
  GLS_INDEX_OUT_OF_RANGE = 12,
  GLS_LENGTH_MISMATCH = 13,
  GLS_NONPOSITIVE_DELTA = 14,
  GLS_NONPOSITIVE_GENERATING = 15,
  GLS_CONFIG_ERROR = 16,
  GLS_IO_ERROR = 17,
  GLS_INTERNAL = 18
} gls_status;

typedef enum gls_format { GLS_FORMAT_JSON = 0, GLS_FORMAT_CSV = 1, GLS_FORMAT_SVG = 2 } gls_format;

typedef struct gls_generating gls_generating;
typedef struct gls_moments gls_moments;
typedef struct gls_pair gls_pair;
typedef struct gls_result gls_result;

GLSREG_API const char* gls_version(void);
GLSREG_API const char* gls_status_name(gls_status status);
/* Message of the last failed call on this thread; "" if none. */
GLSREG_API const char* gls_last_error(void);
/* Frees strings returned through char** out-parameters. */
GLSREG_API void gls_string_free(char* s);

/* Generating functions and moment curves, built from their JSON specs. */
GLSREG_API gls_status gls_generating_from_json(const char* json, gls_generating** out);
GLSREG_API void gls_generating_free(gls_generating* psi);
GLSREG_API gls_status gls_generating_value(const gls_generating* psi, double p, double* out);
GLSREG_API gls_status gls_generating_describe(const gls_generating* psi, char** out);

GLSREG_API gls_status gls_moments_from_json(const char* json, gls_moments** out);
GLSREG_API void gls_moments_free(gls_moments* m);
GLSREG_API gls_status gls_moments_value(const gls_moments* m, double p, double* out);

GLSREG_API gls_status gls_pair_from_json(const char* json, gls_pair** out);
GLSREG_API void gls_pair_free(gls_pair* pair);

/* Norms and conjugates. `argmax` may be NULL. */
GLSREG_API gls_status gls_norm(const gls_moments* m, const gls_generating* psi, double* value, double* argmax);
GLSREG_API gls_status gls_grand_norm(const gls_moments* m, double q, double* value);
GLSREG_API gls_status gls_natural_function(const gls_moments* m, gls_generating** out);
GLSREG_API gls_status gls_young_fenchel(const gls_generating* psi, double v, double* value, double* argmax);
GLSREG_API gls_status gls_tail_bound(const gls_generating* psi, double t, double* out);

/* Regulator bounds. */
GLSREG_API gls_status gls_kloeden_bound(const gls_generating* K, double alpha, double eps, double p, double* out);
GLSREG_API gls_status gls_sigma(const gls_pair* pair, double p, double rel_tol, double* out);
GLSREG_API gls_status gls_generalized_bound(const gls_generating* psi, const gls_pair* pair, double p,
                                            double rel_tol, double* out);

/* Exact quantities of the exponential-power model. */
GLSREG_API gls_status gls_exact_eta_tail(double alpha, double eps, double u, double abs_tol,
                                         int64_t index_start, double* out);
GLSREG_API gls_status gls_exact_eta_moment(double alpha, double eps, double p, double rel_tol,
                                           int64_t index_start, double* out);

/* Regulator samples for a simulation plan (JSON); read them with
 * gls_result_values. The report holds the run metadata. */
GLSREG_API gls_status gls_simulate_eta(const char* plan_json, gls_result** out);

/* Config-driven commands: "norm", "conjugate", "bound", "simulate", "verify".
 * The config text is validated against the published schema first; a
 * validation failure returns GLS_CONFIG_ERROR with one line per violation in
 * gls_last_error(). `seed` and `threads` override the config when non-NULL. */
GLSREG_API gls_status gls_run_command(const char* command, const char* config_text, const char* source_name,
                                      const uint64_t* seed, const int* threads, gls_format format,
                                      gls_result** out);
GLSREG_API gls_status gls_validate_config(const char* config_text, const char* source_name);
GLSREG_API const char* gls_config_schema(void);

GLSREG_API void gls_result_free(gls_result* r);
GLSREG_API const char* gls_result_report(const gls_result* r);
/* Nonzero when a check inside the command failed. */
GLSREG_API int gls_result_failed(const gls_result* r);
GLSREG_API size_t gls_result_artifact_count(const gls_result* r);
GLSREG_API const char* gls_result_artifact_name(const gls_result* r, size_t i);
GLSREG_API const char* gls_result_artifact_data(const gls_result* r, size_t i, size_t* size);
/* Sample values of a gls_simulate_eta result. */
GLSREG_API size_t gls_result_value_count(const gls_result* r);
GLSREG_API const double* gls_result_values(const gls_result* r);

/* Writes via a temporary file and rename. */
GLSREG_API gls_status gls_write_file_atomic(const char* path, const char* data, size_t size);

#ifdef __cplusplus
}
#endif

#endif /* GLSREG_GLSREG_H */
