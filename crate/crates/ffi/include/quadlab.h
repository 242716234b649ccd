#ifndef QUADLAB_H
#define QUADLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Rule families that can be built from a node count alone.
 */
typedef enum QuadlabFamily {
  QUADLAB_FAMILY_NEWTON_COTES = 0,
  QUADLAB_FAMILY_CLENSHAW_CURTIS = 1,
  QUADLAB_FAMILY_GAUSS_LEGENDRE = 2,
  QUADLAB_FAMILY_GAUSS_HERMITE = 3,
  QUADLAB_FAMILY_GAUSS_LAGUERRE = 4,
  QUADLAB_FAMILY_TRAPEZOID = 5,
} QuadlabFamily;

/*
 Result of every fallible call.
 */
typedef enum QuadlabStatus {
  QUADLAB_STATUS_OK = 0,
  QUADLAB_STATUS_NULL_POINTER = 1,
  QUADLAB_STATUS_INVALID_ARGUMENT = 2,
  QUADLAB_STATUS_CONSTRUCTION = 3,
  QUADLAB_STATUS_EVALUATION = 4,
  QUADLAB_STATUS_ORACLE = 5,
  QUADLAB_STATUS_BUFFER_TOO_SMALL = 6,
  QUADLAB_STATUS_PANIC = 7,
} QuadlabStatus;

/*
 Opaque quadrature rule.
 */
typedef struct QuadlabRule QuadlabRule;

/*
 Scalar integrand called once per node.
 */
typedef double (*QuadlabIntegrand)(double x, void *user_data);

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Builds an `n`-point rule of `family`. On success `*out` owns the new rule.

 # Safety
 `out` must be null or valid for writes.
 */
enum QuadlabStatus quadlab_rule_new(enum QuadlabFamily family, size_t n, struct QuadlabRule **out);

/*
 Builds the `n`-point Gauss-Legendre rule transplanted through the strip map
 of the Bernstein ellipse with parameter `rho > 1`.

 # Safety
 `out` must be null or valid for writes.
 */
enum QuadlabStatus quadlab_strip_rule_new(size_t n, double rho, struct QuadlabRule **out);

/*
 Releases a rule. Null is ignored.

 # Safety
 `rule` must be null or a handle returned by this library and not yet freed.
 */
void quadlab_rule_free(struct QuadlabRule *rule);

/*
 Number of nodes, or 0 for a null handle.

 # Safety
 `rule` must be null or a live handle.
 */
size_t quadlab_rule_len(const struct QuadlabRule *rule);

/*
 Copies the nodes into `buf`, which must hold at least `quadlab_rule_len` values.

 # Safety
 `rule` must be a live handle and `buf` valid for `len` writes.
 */
enum QuadlabStatus quadlab_rule_nodes(const struct QuadlabRule *rule, double *buf, size_t len);

/*
 Copies the weights into `buf`, which must hold at least `quadlab_rule_len` values.

 # Safety
 `rule` must be a live handle and `buf` valid for `len` writes.
 */
enum QuadlabStatus quadlab_rule_weights(const struct QuadlabRule *rule, double *buf, size_t len);

/*
 `Σ w_j f(x_j)` with `f(x) = callback(x, user_data)`.

 # Safety
 `rule` must be a live handle, `out` valid for writes, and `callback` safe
 to call with `user_data`.
 */
enum QuadlabStatus quadlab_rule_apply(const struct QuadlabRule *rule,
                                      QuadlabIntegrand callback,
                                      void *user_data,
                                      double *out);

/*
 Signed error `I_n(f) - I(f)` for a named integrand such as `"runge"` or
 `"cos-x3"`, against the reference integral for the rule's own weight.

 # Safety
 `rule` must be a live handle, `integrand` a NUL-terminated string and
 `out` valid for writes.
 */
enum QuadlabStatus quadlab_rule_error(const struct QuadlabRule *rule,
                                      const char *integrand,
                                      double *out);

/*
 Largest `d` such that every monomial of degree `<= d` is integrated to
 relative accuracy `tol`.

 # Safety
 `rule` must be a live handle and `out` valid for writes.
 */
enum QuadlabStatus quadlab_exactness_degree(const struct QuadlabRule *rule,
                                            double tol,
                                            size_t *out);

/*
 Ratio of total-degree to Euclidean-degree monomial counts in dimension `s`.

 # Safety
 `out` must be valid for writes.
 */
enum QuadlabStatus quadlab_inefficiency_ratio(uint32_t s, double *out);

/*
 Message for the last failed call on this thread, empty after a success.
 The pointer stays valid until the next call into the library on this thread.
 */
const char *quadlab_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUADLAB_H */
