/* heatshape: stability analysis of balls for Robin heat-convection energies,
 * with spectral/FEM PDE cross-checks, rearrangement experiments, and the
 * two-disk counterexample.
 *
 * C API over an opaque-handle core. All functions return hs_status; outputs
 * go through pointers. String outputs are allocated by the library and must
 * be released with hs_string_free. hs_last_error() describes the most recent
 * failure on the calling thread.
 */
#ifndef HEATSHAPE_H
#define HEATSHAPE_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(HEATSHAPE_BUILDING_SHARED)
#define HEATSHAPE_API __attribute__((visibility("default")))
#else
#define HEATSHAPE_API
#endif

typedef enum hs_status {
  HS_OK = 0,
  HS_ERR_INVALID_ARGUMENT = 1, /* bad input or precondition violation */
  HS_ERR_RANGE = 2,            /* evaluation outside a working range */
  HS_ERR_NUMERIC = 3,          /* quadrature / linear-solve failure */
  HS_ERR_CONFIG = 4,           /* malformed config or geometry */
  HS_ERR_ASSERTION = 5         /* a mathematical assertion failed */
} hs_status;

typedef struct hs_source hs_source; /* opaque radial heat source */

HEATSHAPE_API const char* hs_version(void);

/* Thread-local message for the last failing call. */
HEATSHAPE_API const char* hs_last_error(void);

HEATSHAPE_API void hs_string_free(char* s);

/* Create a source from its JSON spec:
 *   {"kind": "constant"|"gaussian"|"polynomial"|"tabulated",
 *    "params": {...}, "n": int}
 */
HEATSHAPE_API hs_status hs_source_create(const char* json_spec,
                                         hs_source** out);
HEATSHAPE_API void hs_source_destroy(hs_source* src);

HEATSHAPE_API hs_status hs_source_value(const hs_source* src, double r,
                                        double* out);
HEATSHAPE_API hs_status hs_source_radial_derivative(const hs_source* src,
                                                    double r, double* out);
HEATSHAPE_API hs_status hs_source_ball_mean(const hs_source* src, double R,
                                            double* out);

/* Stability report for the centered ball B_R with Robin coefficient beta;
 * JSON fields {lhs, A0, A1, A2, beta1, beta2, verdict, clause, underflow}. */
HEATSHAPE_API hs_status hs_stability_report(const hs_source* src, double R,
                                            double beta, char** json_out);

/* Instability window; JSON {A0, A1, A2, always_stable, beta1, beta2,
 * underflow}. */
HEATSHAPE_API hs_status hs_beta_thresholds(const hs_source* src, double R,
                                           char** json_out);

/* Second variation per unit boundary integral of zeta^2 for the
 * degree-l mode (l >= 1). */
HEATSHAPE_API hs_status hs_mode_second_variation(const hs_source* src,
                                                 double R, double beta, int l,
                                                 double* q_out);

/* Dirichlet-limit verdict: -1 unstable, 0 marginal, +1 strictly stable. */
HEATSHAPE_API hs_status hs_dirichlet_stability(const hs_source* src, double R,
                                               int* verdict_out);

/* Closed-form two-disk counterexample report as JSON. */
HEATSHAPE_API hs_status hs_two_disk_counterexample(double eps, double beta,
                                                   char** json_out);

/* Batch experiment runner (the CLI front door). `command` is one of:
 * stability | thresholds | modes | translate-check | fem-compare |
 * counterexample | rearrange-check | insulation | sweep.
 * config_json is the experiment config; out_dir may be NULL (no files) or a
 * directory for atomically written reports; jobs >= 1 parallelizes sweeps.
 * On success *summary_json_out holds the summary (field "passed" reports the
 * mathematical assertions); HS_ERR_ASSERTION is returned when the experiment
 * itself ran but an assertion failed, with the summary still populated. */
HEATSHAPE_API hs_status hs_run_experiment(const char* command,
                                          const char* config_json,
                                          const char* out_dir, int jobs,
                                          char** summary_json_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HEATSHAPE_H */
