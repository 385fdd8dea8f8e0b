#ifndef KRATZER2D_H
#define KRATZER2D_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * `V = -2 D0 (r0/r - r0^2/(2 r^2))`; `strength` is `D0`.
 */
#define K2D_KRATZER 0

/**
 * `V = D0 ((r - r0)/r)^2`; `strength` is `D0`.
 */
#define K2D_MODIFIED1 1

/**
 * `V = -q (r0/r - g^2 r0^2/r^2)`; `strength` is `q`.
 */
#define K2D_MODIFIED2 2

typedef enum K2dStatus {
  K2D_STATUS_OK = 0,
  K2D_STATUS_INVALID_PARAMETER = 1,
  K2D_STATUS_NO_BOUND_STATES = 2,
  K2D_STATUS_NON_CONVERGENCE = 3,
  K2D_STATUS_GRID_TOO_COARSE = 4,
  K2D_STATUS_BOX_TOO_SMALL = 5,
  K2D_STATUS_NULL_POINTER = 6,
  K2D_STATUS_BUFFER_TOO_SMALL = 7,
  K2D_STATUS_PANIC = 8,
} K2dStatus;

/**
 * Opaque bound state.
 */
typedef struct K2dBoundState K2dBoundState;

/**
 * Opaque polar density grid.
 */
typedef struct K2dDensityGrid K2dDensityGrid;

/**
 * Potential and unit choice.
 */
typedef struct K2dParams {
  /**
   * One of `K2D_KRATZER`, `K2D_MODIFIED1`, `K2D_MODIFIED2`.
   */
  uint32_t kind;
  double strength;
  double r0;
  /**
   * Ignored unless `kind` is `K2D_MODIFIED2`.
   */
  double g;
  double hbar;
  double mu;
} K2dParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code. Never null; unknown codes get a
 * generic message.
 */
const char *k2d_status_message(int32_t status);

/**
 * Message of the last failed call on this thread, valid until the next
 * failing call on the same thread. Empty if nothing has failed.
 */
const char *k2d_last_error_message(void);

/**
 * Builds the closed-form bound state `(n, m)`.
 *
 * # Safety
 * `params` must point to a valid `K2dParams`; `out` must be writable.
 */
enum K2dStatus k2d_bound_state_new(const struct K2dParams *params,
                                   uint32_t n,
                                   int32_t m,
                                   struct K2dBoundState **out);

/**
 * Releases a handle from `k2d_bound_state_new`. Null is ignored.
 *
 * # Safety
 * `state` must be null or a live handle not yet freed.
 */
void k2d_bound_state_free(struct K2dBoundState *state);

/**
 * # Safety
 * `state` must be a live handle; `out` must be writable.
 */
enum K2dStatus k2d_bound_state_energy(const struct K2dBoundState *state, double *out);

/**
 * Natural log of the normalization constant `C`.
 *
 * # Safety
 * `state` must be a live handle; `out` must be writable.
 */
enum K2dStatus k2d_bound_state_log_norm(const struct K2dBoundState *state, double *out);

/**
 * Radial function `phi(r)`, normalized so that `int phi^2 r dr = 1`.
 *
 * # Safety
 * `state` must be a live handle; `out` must be writable.
 */
enum K2dStatus k2d_bound_state_radial_value(const struct K2dBoundState *state,
                                            double r,
                                            double *out);

/**
 * `|Psi(r, phi)|^2`.
 *
 * # Safety
 * `state` must be a live handle; `out` must be writable.
 */
enum K2dStatus k2d_bound_state_density(const struct K2dBoundState *state,
                                       double r,
                                       double phi,
                                       double *out);

/**
 * Samples `|Psi|^2` on `nr` radii in `[0, r_max]` and `nphi` angles in
 * `[0, 2 pi)`. A non-positive `r_max` selects a radius that holds all but a
 * negligible fraction of the probability.
 *
 * # Safety
 * `state` must be a live handle; `out` must be writable.
 */
enum K2dStatus k2d_density_grid_new(const struct K2dBoundState *state,
                                    double r_max,
                                    size_t nr,
                                    size_t nphi,
                                    struct K2dDensityGrid **out);

/**
 * # Safety
 * `grid` must be null or a live handle not yet freed.
 */
void k2d_density_grid_free(struct K2dDensityGrid *grid);

/**
 * # Safety
 * `grid` must be a live handle; `nr` and `nphi` must be writable.
 */
enum K2dStatus k2d_density_grid_shape(const struct K2dDensityGrid *grid, size_t *nr, size_t *nphi);

/**
 * Copies the grid into `r_out[nr]`, `phi_out[nphi]` and row-major
 * `density_out[nr * nphi]`. Any of the three may be null to skip it.
 *
 * # Safety
 * Non-null buffers must hold at least `len` values as stated.
 */
enum K2dStatus k2d_density_grid_copy(const struct K2dDensityGrid *grid,
                                     double *r_out,
                                     size_t r_len,
                                     double *phi_out,
                                     size_t phi_len,
                                     double *density_out,
                                     size_t density_len);

/**
 * Closed-form energy of `(n, m)` without creating a handle.
 *
 * # Safety
 * `params` must point to a valid `K2dParams`; `out` must be writable.
 */
enum K2dStatus k2d_energy(const struct K2dParams *params, uint32_t n, int32_t m, double *out);

/**
 * Lowest `count` finite-difference eigenvalues at angular number `m`,
 * Richardson-extrapolated on an automatically chosen grid.
 *
 * # Safety
 * `params` must point to a valid `K2dParams`; `out` must hold `out_len`
 * values.
 */
enum K2dStatus k2d_fd_eigenvalues(const struct K2dParams *params,
                                  int32_t m,
                                  size_t count,
                                  double *out,
                                  size_t out_len);

/**
 * Generalized Laguerre polynomial `L_n^a(x)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum K2dStatus k2d_laguerre(uint32_t n, double a, double x, double *out);

/**
 * `ln Gamma(x)` for `x > 0`.
 *
 * # Safety
 * `out` must be writable.
 */
enum K2dStatus k2d_log_gamma(double x, double *out);

/**
 * Confluent hypergeometric `1F1(a; b; x)` for `x >= 0`.
 *
 * # Safety
 * `out` must be writable.
 */
enum K2dStatus k2d_kummer_1f1(double a, double b, double x, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KRATZER2D_H */
