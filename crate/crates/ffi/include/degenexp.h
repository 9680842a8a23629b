/* C interface to the degenexp library: degenerate exponentials, degenerate Stirling numbers, truncated-exponential tail sums and the identity verification harness. */

#ifndef DEGENEXP_H
#define DEGENEXP_H

/* Generated by cbindgen from degenexp-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes for every fallible call.
 */
typedef enum DgxStatus {
  DGX_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  DGX_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  DGX_STATUS_UTF8_ERROR = 2,
  /**
   * A rational literal or JSON document failed to parse.
   */
  DGX_STATUS_PARSE_ERROR = 3,
  /**
   * The input lies outside the function's mathematical domain.
   */
  DGX_STATUS_DOMAIN_ERROR = 4,
  /**
   * The series does not converge for this input.
   */
  DGX_STATUS_NON_CONVERGENCE = 5,
  /**
   * The term budget ran out before the remainder bound was met.
   */
  DGX_STATUS_BUDGET_EXCEEDED = 6,
  /**
   * The requested quantity has no exact rational value.
   */
  DGX_STATUS_NO_EXACT_VALUE = 7,
  /**
   * Arguments are structurally invalid (missing parameter, bad mode).
   */
  DGX_STATUS_INVALID_ARGUMENT = 8,
} DgxStatus;

/**
 * Opaque triangle of degenerate Stirling numbers of the second kind.
 */
typedef struct DgxStirlingTable DgxStirlingTable;

/**
 * Result of an adaptively truncated summation.
 */
typedef struct DgxSumResult {
  double value;
  /**
   * Bound on the magnitude of the discarded remainder.
   */
  double tail_bound;
  uint32_t terms_used;
  /**
   * 1 when the stopping rule certified the tail bound, else 0.
   */
  uint8_t converged;
} DgxSumResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *dgx_version(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a pointer previously returned through a `char**`
 * output of this library, not yet freed.
 */
void dgx_string_free(char *s);

/**
 * Degenerate exponential `e_lambda^x(t)` as a double.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum DgxStatus dgx_exp(double x, double lambda, double t, double *out);

/**
 * Partial sum of the degenerate exponential series up to degree `n`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum DgxStatus dgx_exp_partial(double x, double lambda, double t, uint32_t n, double *out);

/**
 * Degenerate hyperbolic cosine `(e_lambda(-x) + e_lambda(x))/2`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum DgxStatus dgx_cosh(double lambda, double x, double *out);

/**
 * Tail `T_n(y)` of the degenerate exponential series, summed forward
 * with a ratio-test remainder bound.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum DgxStatus dgx_tail(double lambda,
                        double y,
                        uint32_t n,
                        double tol,
                        uint32_t max_terms,
                        struct DgxSumResult *out);

/**
 * Degenerate Bell polynomial value via its Dobinski-style series.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum DgxStatus dgx_bell_dobinski(uint32_t n,
                                 double lambda,
                                 double x,
                                 double tol,
                                 uint32_t max_terms,
                                 struct DgxSumResult *out);

/**
 * Exact rational value of `e_lambda^x(y)`, when one exists
 * (`DGX_STATUS_NO_EXACT_VALUE` otherwise). All rationals are "p/q"
 * strings.
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` must be valid. The
 * result string must be freed with `dgx_string_free`.
 */
enum DgxStatus dgx_exp_exact(const char *x, const char *lambda, const char *y, char **out);

/**
 * Generalized falling factorial `(x)_{n,lambda}` as an exact rational.
 *
 * # Safety
 * As for `dgx_exp_exact`.
 */
enum DgxStatus dgx_falling_factorial(const char *x, uint32_t n, const char *lambda, char **out);

/**
 * Degenerate Bell polynomial `phi_{n,lambda}(x)` as an exact rational.
 *
 * # Safety
 * As for `dgx_exp_exact`.
 */
enum DgxStatus dgx_bell(uint32_t n, const char *lambda, const char *x, char **out);

/**
 * Single degenerate Stirling number `S_{2,lambda}(n, k)` by the
 * explicit alternating sum.
 *
 * # Safety
 * As for `dgx_exp_exact`.
 */
enum DgxStatus dgx_stirling2(uint32_t n, uint32_t k, const char *lambda, char **out);

/**
 * Build the triangle of `S_{2,lambda}(n, k)` for n ≤ n_max by the
 * recurrence. Free the handle with `dgx_stirling_table_free`.
 *
 * # Safety
 * `lambda` must be NUL-terminated; `out` must be valid.
 */
enum DgxStatus dgx_stirling_table_new(const char *lambda,
                                      uint32_t n_max,
                                      struct DgxStirlingTable **out);

/**
 * Entry `S_{2,lambda}(n, k)` of a table as an exact rational string;
 * entries with k > n are "0". Fails with `DGX_STATUS_INVALID_ARGUMENT`
 * when n exceeds the table size.
 *
 * # Safety
 * `table` must be a live handle from `dgx_stirling_table_new`.
 */
enum DgxStatus dgx_stirling_table_entry(const struct DgxStirlingTable *table,
                                        uint32_t n,
                                        uint32_t k,
                                        char **out);

/**
 * Number of rows in the table minus one.
 *
 * # Safety
 * `table` must be a live handle; `out` must be valid.
 */
enum DgxStatus dgx_stirling_table_n_max(const struct DgxStirlingTable *table, uint32_t *out);

/**
 * Release a table handle.
 *
 * # Safety
 * `table` must be NULL or a live handle from `dgx_stirling_table_new`,
 * not yet freed.
 */
void dgx_stirling_table_free(struct DgxStirlingTable *table);

/**
 * Verify one identity case described as a JSON object with the same
 * keys as the CLI flags, e.g.
 * `{"identity":"thm2.1b","lambda":"1/2","y":"1","mode":"both"}`.
 * Writes the full report JSON and the pass flag.
 *
 * # Safety
 * `case_json` must be NUL-terminated; `out_report` and `out_passed`
 * must be valid. The report string must be freed with
 * `dgx_string_free`.
 */
enum DgxStatus dgx_verify_json(const char *case_json, char **out_report, uint8_t *out_passed);

/**
 * Run a suite: `config_json` is either NULL (default verification grid)
 * or `{"cases":[...]}`. Writes the aggregated summary JSON and whether
 * every case passed.
 *
 * # Safety
 * As for `dgx_verify_json`.
 */
enum DgxStatus dgx_suite_json(const char *config_json, char **out_report, uint8_t *out_all_passed);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* DEGENEXP_H */
