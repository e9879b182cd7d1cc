#ifndef DESCM_H
#define DESCM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Values accepted by the `mesh` argument of [`descm_solve`] and [`descm_converge`].
 */
typedef enum DescmMeshKind {
  DESCM_MESH_KIND_OPTIMAL = 0,
  DESCM_MESH_KIND_TRACE_MINIMIZED = 1,
  DESCM_MESH_KIND_FIXED = 2,
} DescmMeshKind;

typedef enum DescmStatus {
  DESCM_STATUS_OK = 0,
  DESCM_STATUS_NULL_POINTER = 1,
  DESCM_STATUS_INVALID_ARGUMENT = 2,
  DESCM_STATUS_PARSE_ERROR = 3,
  DESCM_STATUS_INVALID_POTENTIAL = 4,
  DESCM_STATUS_OVERFLOW = 5,
  DESCM_STATUS_NO_INTERIOR_MINIMUM = 6,
  DESCM_STATUS_NOT_CONVERGED = 7,
  DESCM_STATUS_NUMERICAL_FAILURE = 8,
  DESCM_STATUS_PANIC = 9,
} DescmStatus;

/**
 * Opaque potential handle.
 */
typedef struct DescmPotential DescmPotential;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next `descm_*` call on the same thread.
 */
const char *descm_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *descm_version(void);

/**
 * Parses a spec such as `poly:1,1` or `cheb:10;shift=-1`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` must be writable.
 */
enum DescmStatus descm_potential_from_spec(const char *spec, struct DescmPotential **out);

/**
 * `V(x) = c0 + sum_i coefficients[i-1] x^(2i)` with `len >= 1` and a
 * positive last coefficient.
 *
 * # Safety
 * `coefficients` must point to `len` doubles; `out` must be writable.
 */
enum DescmStatus descm_potential_from_coefficients(double c0,
                                                   const double *coefficients,
                                                   size_t len,
                                                   struct DescmPotential **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `p` must come from `descm_potential_from_*` and not be freed twice.
 */
void descm_potential_free(struct DescmPotential *p);

/**
 * Number of polynomial coefficients `m` (the degree is `2m`).
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum DescmStatus descm_potential_degree(const struct DescmPotential *p, size_t *out);

/**
 * `V(x)`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum DescmStatus descm_potential_evaluate(const struct DescmPotential *p, double x, double *out);

/**
 * Principal branch `W0(z)` for `z >= 0`.
 *
 * # Safety
 * `out` must be writable.
 */
enum DescmStatus descm_lambert_w0(double z, double *out);

/**
 * Closed-form mesh size for truncation `n`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum DescmStatus descm_optimal_h(const struct DescmPotential *p, size_t n, double *out);

/**
 * Trace of the collocation matrix at `(n, h)`; may be `+inf`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum DescmStatus descm_trace(const struct DescmPotential *p, size_t n, double h, double *out);

/**
 * Mesh size minimising the trace inside `[low, high]`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum DescmStatus descm_trace_minimized_h(const struct DescmPotential *p,
                                         size_t n,
                                         double low,
                                         double high,
                                         double *out);

/**
 * Lowest `levels` eigenvalues at truncation `n`, ascending, written to
 * `values`. `mesh` is a [`DescmMeshKind`]; `fixed_h` is read only for
 * `DESCM_MESH_KIND_FIXED`. `h_used` may be NULL.
 *
 * # Safety
 * `p` must be a live handle; `values` must hold `levels` doubles.
 */
enum DescmStatus descm_solve(const struct DescmPotential *p,
                             size_t n,
                             int32_t mesh,
                             double fixed_h,
                             double *values,
                             size_t levels,
                             double *h_used);

/**
 * Increases N from 2 until successive values of `level` differ by less
 * than `tolerance`, or `n_max` is reached. The last energy, N and
 * difference are written either way; the status is
 * `DESCM_STATUS_NOT_CONVERGED` in the second case. `out_n` and `out_eps`
 * may be NULL.
 *
 * # Safety
 * `p` must be a live handle; `out_energy` must be writable.
 */
enum DescmStatus descm_converge(const struct DescmPotential *p,
                                size_t level,
                                double tolerance,
                                size_t n_max,
                                int32_t mesh,
                                double fixed_h,
                                double *out_energy,
                                size_t *out_n,
                                double *out_eps);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DESCM_H */
