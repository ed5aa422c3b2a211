#ifndef ELAB_H
#define ELAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ElabStatus {
  ElabStatus_Ok = 0,
  ElabStatus_NullPointer = 1,
  ElabStatus_InvalidArgument = 2,
  ElabStatus_OutOfRange = 3,
  ElabStatus_Overflow = 4,
  ElabStatus_ToleranceNotMet = 5,
  ElabStatus_Panic = 6,
} ElabStatus;

/**
 * Opaque Euler path.
 */
typedef struct ElabEulerPath ElabEulerPath;

typedef struct ElabEnclosure {
  double lo;
  double hi;
} ElabEnclosure;

typedef struct ElabSeriesState {
  double partial_sum;
  uint64_t terms_used;
  double last_term;
  double tail_bound;
} ElabSeriesState;

typedef struct ElabComplex {
  double re;
  double im;
} ElabComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *elab_last_error(void);

/**
 * Static description of a status code.
 */
const char *elab_status_str(enum ElabStatus status);

/**
 * `(1 + 1/n)^n`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ElabStatus elab_compound(uint64_t n, double *out);

/**
 * `(1 + x/n)^n`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ElabStatus elab_compound_x(double x, uint64_t n, double *out);

/**
 * `(a^h − 1)/h`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ElabStatus elab_diff_quotient(double a, double h, double *out);

/**
 * `a^(1/DQ(a, h))`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ElabStatus elab_estimate_e_by_stretch(double a, double h, double *out);

/**
 * Certified enclosure of `a^x` at dyadic depth `depth`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ElabStatus elab_exp_base(double a, double x, uint32_t depth, struct ElabEnclosure *out);

/**
 * `y^(1/n)` by bisection.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ElabStatus elab_nth_root(double y, uint32_t n, double tol, double *out);

/**
 * `Σ_{k ≤ m} 1/k!`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ElabStatus elab_factorial_partial_sum(uint64_t m, double *out);

/**
 * Upper bound on `Σ_{k > m} 1/k!`.
 */
double elab_tail_bound(uint64_t m);

/**
 * Bound on `|e − (1 + 1/n)^n|` from the first `m` binomial terms.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ElabStatus elab_series_error_certificate(uint64_t n, uint64_t m, double *out);

/**
 * `e^x` from its Taylor series.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ElabStatus elab_taylor_exp(double x, double tol, struct ElabSeriesState *out);

/**
 * `e^{iθ}`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ElabStatus elab_complex_exp(double theta, double tol, struct ElabComplex *out);

/**
 * `ln y` by bisection on the series exponential.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ElabStatus elab_nat_log(double y, double tol, double *out);

/**
 * `∫_1^x dt/t` by the midpoint rule.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ElabStatus elab_quadrature_log(double x, uint64_t panels, double *out);

/**
 * Napier's logarithm of a sine scaled to the whole sine 10,000,000.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ElabStatus elab_napier_log(uint64_t scaled_sine, double *out);

/**
 * `log10 x`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum ElabStatus elab_briggs_log10(double x, double *out);

/**
 * Builds the Euler path for `y' = y` on `[0, x]` with `n` steps.
 *
 * # Safety
 * `out` must be null or valid for writes. The handle written there must be
 * released with [`elab_euler_path_free`].
 */
enum ElabStatus elab_euler_path_new(double x, uint64_t n, struct ElabEulerPath **out);

/**
 * Number of points, `n + 1`; 0 for a null handle.
 *
 * # Safety
 * `path` must be null or a live handle from [`elab_euler_path_new`].
 */
size_t elab_euler_path_len(const struct ElabEulerPath *path);

/**
 * Point `index` of the path.
 *
 * # Safety
 * `path` must be null or a live handle; `x` and `y` must be null or valid
 * for writes.
 */
enum ElabStatus elab_euler_path_point(const struct ElabEulerPath *path,
                                      size_t index,
                                      double *x,
                                      double *y);

/**
 * Releases a path; null is ignored.
 *
 * # Safety
 * `path` must be null or a handle from [`elab_euler_path_new`] not yet freed.
 */
void elab_euler_path_free(struct ElabEulerPath *path);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ELAB_H */
