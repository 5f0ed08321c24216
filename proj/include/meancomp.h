/*
 * meancomp — C API for evaluating and comparing n-variable generalized
 * Bajraktarevic means.
 *
 * The library is consumed through opaque handles and mc_status error codes.
 * Every function that can fail returns mc_status; on failure the handle
 * outputs are untouched and mc_last_error() carries a thread-local message.
 * All returned strings are owned by the handle they came from unless the
 * function documents that the caller must release them with mc_free().
 */

#ifndef MEANCOMP_H
#define MEANCOMP_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define MC_API __declspec(dllexport)
#else
#define MC_API __attribute__((visibility("default")))
#endif

#define MC_VERSION_STRING "0.1.0"

typedef enum mc_status {
    MC_OK = 0,
    MC_ERR_PARSE = 1,     /* expression text does not parse            */
    MC_ERR_DOMAIN = 2,    /* evaluation outside a function's domain    */
    MC_ERR_OVERFLOW = 3,  /* finite inputs produced a non-finite value */
    MC_ERR_INVALID = 4,   /* bad argument / violated precondition      */
    MC_ERR_CERTIFY = 5,   /* monotonicity/positivity check failed      */
    MC_ERR_INVERT = 6,    /* generator inversion failed                */
    MC_ERR_CONFIG = 7,    /* malformed problem configuration           */
    MC_ERR_INTERNAL = 8   /* dual-route consistency failure            */
} mc_status;

MC_API const char* mc_version(void);

/* Message for the most recent failure on the calling thread ("" if none). */
MC_API const char* mc_last_error(void);

/* Release a string returned through a char** out-parameter. */
MC_API void mc_free(char* text);

/* ---- expressions ------------------------------------------------------ */

typedef struct mc_expr mc_expr;

/* Parse DSL text (`x`, `+ - * / ^`, `exp`, `log`, parentheses, decimal
 * literals) into an immutable expression handle. */
MC_API mc_status mc_expr_parse(const char* source, mc_expr** out);
MC_API mc_status mc_expr_eval(const mc_expr* expr, double x, double* value_out);
MC_API mc_status mc_expr_derivative(const mc_expr* expr, mc_expr** out);
/* Round-trippable text form; caller frees with mc_free(). */
MC_API mc_status mc_expr_format(const mc_expr* expr, char** text_out);
MC_API void mc_expr_free(mc_expr* expr);

/* ---- means ------------------------------------------------------------ */

typedef struct mc_mean mc_mean;

/* Mean from DSL strings. `weights` is an array of n expression strings;
 * lo/hi bound the open interval (use -HUGE_VAL / HUGE_VAL for unbounded).
 * Construction certifies strict monotonicity of the generator and
 * positivity of every weight on a dense sample. */
MC_API mc_status mc_mean_create(const char* generator, const char* const* weights, int n,
                                double lo, double hi, mc_mean** out);

/* Power-family mean: generator x^exponent (log for exponent 0) and weights
 * lambda_i * x^alpha_i on a positive interval. */
MC_API mc_status mc_mean_create_power(double exponent, const double* lambda, const double* alpha,
                                      int n, double lo, double hi, mc_mean** out);

MC_API mc_status mc_mean_eval(const mc_mean* mean, const double* xs, int n, double* value_out);

/* Solve generator(x) = y over the mean's interval. */
MC_API mc_status mc_mean_invert_generator(const mc_mean* mean, double y, double* x_out);

/* Closed-form diagonal first partial p_i/p_0 at x (0-based index). */
MC_API mc_status mc_mean_diag_first_partial(const mc_mean* mean, int index, double x,
                                            double* value_out);

MC_API void mc_mean_free(mc_mean* mean);

/* ---- comparison runs --------------------------------------------------- */

typedef struct mc_run mc_run;

/* Execute a full comparison described by a JSON configuration (see the
 * repository documentation for the schema). `overrides_json` is an optional
 * JSON merge-patch applied on top (pass NULL or "" for none). */
MC_API mc_status mc_run_compare(const char* config_json, const char* overrides_json,
                                mc_run** out);

/* Owned by the run handle; valid until mc_run_free(). */
MC_API const char* mc_run_report_json(const mc_run* run);
MC_API const char* mc_run_summary(const mc_run* run);
/* Gap-landscape CSV (n = 2 runs only; NULL otherwise). */
MC_API const char* mc_run_csv(const mc_run* run);
/* Output paths requested in the configuration (NULL when absent). */
MC_API const char* mc_run_report_path(const mc_run* run);
MC_API const char* mc_run_csv_path(const mc_run* run);
MC_API const char* mc_run_summary_path(const mc_run* run);
/* 1 when the run refuted the comparison (a conclusion is "refuted"). */
MC_API int mc_run_refuted(const mc_run* run);
MC_API void mc_run_free(mc_run* run);

/* ---- selftest ---------------------------------------------------------- */

/* Runs the built-in invariant battery. Writes a per-suite pass/fail text to
 * *text_out (caller frees with mc_free) and the number of failed suites to
 * *failures_out. Returns MC_OK even when suites fail; inspect failures_out. */
MC_API mc_status mc_selftest(char** text_out, int* failures_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MEANCOMP_H */
