#ifndef HECKE_FAREY_H
#define HECKE_FAREY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum HfStatus {
  HF_STATUS_OK = 0,
  /**
   * A sweep has no further vectors.
   */
  HF_STATUS_DONE = 1,
  HF_STATUS_NULL_POINTER = 2,
  HF_STATUS_INVALID_Q = 3,
  HF_STATUS_INVALID_ARGUMENT = 4,
  HF_STATUS_PARSE = 5,
  HF_STATUS_OUTSIDE_TRIANGLE = 6,
  HF_STATUS_UNBOUNDED_STRIP = 7,
  HF_STATUS_EMPTY_SWEEP = 8,
  HF_STATUS_NO_CONVERGENCE = 9,
  HF_STATUS_OVERFLOW = 10,
  HF_STATUS_INTERNAL = 11,
  HF_STATUS_PANIC = 12,
} HfStatus;

/**
 * A Hecke group `G_q` with its coordinate field.
 */
typedef struct HfContext HfContext;

/**
 * A slope-ordered sweep of a strip.
 */
typedef struct HfSweep HfSweep;

/**
 * One vector of a sweep in floating point, with the gap to the next one.
 */
typedef struct HfSweepItem {
  double x;
  double y;
  double slope;
  /**
   * `tau^2` times the slope gap to the next vector.
   */
  double roof;
  uint32_t region;
} HfSweepItem;

/**
 * One step of the BCZ map. `next_a` and `next_b` are owned strings.
 */
typedef struct HfBczStep {
  uint32_t region;
  int64_t k;
  double roof;
  char *next_a;
  char *next_b;
} HfBczStep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *hf_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void hf_string_free(char *s);

/**
 * Creates the context for `G_q`, `q >= 3`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum HfStatus hf_context_new(uint32_t q, struct HfContext **out);

/**
 * # Safety
 * `ctx` must come from [`hf_context_new`] and not have been freed. Sweeps
 * created from it stay valid.
 */
void hf_context_free(struct HfContext *ctx);

/**
 * Degree of the coordinate field over the rationals, or 0 for null.
 *
 * # Safety
 * `ctx` must be null or a live context.
 */
size_t hf_context_degree(const struct HfContext *ctx);

/**
 * `lambda_q = 2 cos(pi / q)` rounded to double.
 *
 * # Safety
 * `ctx` must be a live context and `out` a valid pointer.
 */
enum HfStatus hf_context_lambda(const struct HfContext *ctx, double *out);

/**
 * Starts a sweep over orbit vectors with `0 < x <= tau` and slope in
 * `[lo, hi]`, `0 <= lo < hi`.
 *
 * # Safety
 * `ctx` must be a live context, the strings valid C strings and `out` a
 * valid pointer.
 */
enum HfStatus hf_sweep_new(const struct HfContext *ctx,
                           const char *tau,
                           const char *lo,
                           const char *hi,
                           struct HfSweep **out);

/**
 * Writes the next vector to `item` and returns `Ok`, or returns `Done`.
 *
 * # Safety
 * `sweep` must be a live sweep and `item` a valid pointer.
 */
enum HfStatus hf_sweep_next(struct HfSweep *sweep, struct HfSweepItem *item);

/**
 * Exact coordinates of the vector last returned by [`hf_sweep_next`].
 *
 * # Safety
 * `sweep` must be a live sweep; `x` and `y` valid pointers. The strings
 * written must be released with [`hf_string_free`].
 */
enum HfStatus hf_sweep_current_exact(const struct HfSweep *sweep, char **x, char **y);

/**
 * # Safety
 * `sweep` must come from [`hf_sweep_new`] and not have been freed.
 */
void hf_sweep_free(struct HfSweep *sweep);

/**
 * Applies the BCZ map once to the exact point `(a, b)` of the Farey
 * triangle. Release `out.next_a` and `out.next_b` with [`hf_string_free`].
 *
 * # Safety
 * `ctx` must be a live context, `a` and `b` valid C strings and `out` a
 * valid pointer.
 */
enum HfStatus hf_bcz_step(const struct HfContext *ctx,
                          const char *a,
                          const char *b,
                          struct HfBczStep *out);

/**
 * Mean of the roof function by adaptive quadrature.
 *
 * # Safety
 * `ctx` must be a live context; `value` and `error` valid pointers.
 */
enum HfStatus hf_mean_roof_quadrature(const struct HfContext *ctx,
                                      double tol,
                                      double *value,
                                      double *error);

/**
 * Number of orbit vectors with `0 < x <= tau` and slope in `[lo, hi]`.
 *
 * # Safety
 * `ctx` must be a live context, the strings valid C strings and `out` a
 * valid pointer.
 */
enum HfStatus hf_count_strip(const struct HfContext *ctx,
                             const char *tau,
                             const char *lo,
                             const char *hi,
                             uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HECKE_FAREY_H */
