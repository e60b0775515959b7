/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef LE3_H
#define LE3_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum Le3Status {
  LE3_STATUS_OK = 0,
  LE3_STATUS_NULL_POINTER = 1,
  LE3_STATUS_NON_FINITE = 2,
  LE3_STATUS_DEGENERATE = 3,
  LE3_STATUS_OUT_OF_SIGMA = 4,
  LE3_STATUS_OUT_OF_BRANCH = 5,
  LE3_STATUS_NOT_IN_HALF_PLANE = 6,
  LE3_STATUS_INVALID_ARGUMENT = 7,
  LE3_STATUS_EMPTY_ORBIT = 8,
  LE3_STATUS_DEPTH_GUARD = 9,
  LE3_STATUS_INDEX_OUT_OF_RANGE = 10,
  LE3_STATUS_PANIC = 99,
} Le3Status;

/**
 * Opaque orbit handle.
 */
typedef struct Le3Orbit Le3Orbit;

typedef struct Le3Complex {
  double re;
  double im;
} Le3Complex;

/**
 * `z -> magnification * conj?(rotation * (z + translation))`.
 */
typedef struct Le3Chain {
  struct Le3Complex translation;
  struct Le3Complex rotation;
  bool conjugated;
  double magnification;
} Le3Chain;

/**
 * Angles in radians, ascending.
 */
typedef struct Le3Angles {
  double alpha;
  double beta;
  double gamma;
} Le3Angles;

typedef struct Le3AngleStats {
  double min_angle;
  double max_angle;
  struct Le3Complex argmin;
  struct Le3Complex argmax;
} Le3AngleStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *le3_version(void);

/**
 * Message for the last failed call on this thread; empty if none. The
 * pointer is valid until the next failing call on the same thread.
 */
const char *le3_last_error_message(void);

bool le3_in_sigma(struct Le3Complex z);

/**
 * Normalizes the triangle `(a, b, c)`. `out_chain` may be null.
 *
 * # Safety
 * `out_z` must be valid for writes; `out_chain` must be null or valid.
 */
enum Le3Status le3_normalize(struct Le3Complex a,
                             struct Le3Complex b,
                             struct Le3Complex c,
                             struct Le3Complex *out_z,
                             struct Le3Chain *out_chain);

/**
 * Writes the left, middle and right children to `out_children[0..3]` and,
 * when `out_chains` is not null, their maps to `out_chains[0..3]`.
 *
 * # Safety
 * `out_children` must point to 3 writable elements; `out_chains` must be
 * null or point to 3 writable elements.
 */
enum Le3Status le3_trisect(struct Le3Complex z,
                           struct Le3Complex *out_children,
                           struct Le3Chain *out_chains);

/**
 * # Safety
 * `out_angles` must be valid for writes.
 */
enum Le3Status le3_angles(struct Le3Complex z, struct Le3Angles *out_angles);

/**
 * # Safety
 * `out_z` must be valid for writes.
 */
enum Le3Status le3_w_r_closed_form(struct Le3Complex z, struct Le3Complex *out_z);

/**
 * Hyperbolic distance between two points of the upper half-plane.
 *
 * # Safety
 * `out_d` must be valid for writes.
 */
enum Le3Status le3_hyp_distance(struct Le3Complex a, struct Le3Complex b, double *out_d);

/**
 * Distance from `z` to the nearest of the three fixed-orbit centres.
 *
 * # Safety
 * `out_r` must be valid for writes.
 */
enum Le3Status le3_omega_radius(struct Le3Complex z, double *out_r);

/**
 * # Safety
 * `out_in` must be valid for writes.
 */
enum Le3Status le3_omega1_membership(struct Le3Complex z, bool *out_in);

/**
 * # Safety
 * `out_in` must be valid for writes.
 */
enum Le3Status le3_omega2_membership(struct Le3Complex z, bool *out_in);

/**
 * `arccos(-5 / (2√7)) / (π/3)`.
 */
double le3_theorem1_constant(void);

/**
 * Maximum of the quotient curve on `[1e-4, arcsin(3/5)]` with step `t_step`.
 *
 * # Safety
 * `out_max` and `out_argmax_t` must be valid for writes.
 */
enum Le3Status le3_quotient_max(double t_step, double *out_max, double *out_argmax_t);

/**
 * Breadth-first orbit to `depth`. Free the handle with [`le3_orbit_free`].
 *
 * # Safety
 * `out_orbit` must be valid for writes.
 */
enum Le3Status le3_orbit_exhaustive(struct Le3Complex z,
                                    uint32_t depth,
                                    struct Le3Orbit **out_orbit);

/**
 * Monte Carlo orbit. The result does not depend on `parallel`.
 *
 * # Safety
 * `out_orbit` must be valid for writes.
 */
enum Le3Status le3_orbit_simulate(struct Le3Complex z,
                                  uint64_t walkers,
                                  uint64_t steps,
                                  uint64_t seed,
                                  bool parallel,
                                  struct Le3Orbit **out_orbit);

/**
 * Number of points; 0 for a null handle.
 *
 * # Safety
 * `orbit` must be null or a live handle.
 */
size_t le3_orbit_len(const struct Le3Orbit *orbit);

/**
 * Point `index` in canonical (re, im) order.
 *
 * # Safety
 * `orbit` must be a live handle and `out_z` valid for writes.
 */
enum Le3Status le3_orbit_point(const struct Le3Orbit *orbit,
                               size_t index,
                               struct Le3Complex *out_z);

/**
 * # Safety
 * `orbit` must be a live handle and `out_stats` valid for writes.
 */
enum Le3Status le3_orbit_angle_stats(const struct Le3Orbit *orbit, struct Le3AngleStats *out_stats);

/**
 * Releases a handle. Null is a no-op.
 *
 * # Safety
 * `orbit` must be null or a live handle that is not used afterwards.
 */
void le3_orbit_free(struct Le3Orbit *orbit);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LE3_H */
