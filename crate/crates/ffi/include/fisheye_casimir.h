#ifndef FISHEYE_CASIMIR_H
#define FISHEYE_CASIMIR_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum FcStatus {
  FC_STATUS_OK = 0,
  FC_STATUS_NULL_POINTER = 1,
  FC_STATUS_DOMAIN = 2,
  FC_STATUS_COINCIDENCE = 3,
  FC_STATUS_CONVERGENCE = 4,
  FC_STATUS_STENCIL = 5,
  FC_STATUS_NOT_ROTATION = 6,
  FC_STATUS_INDEX_OUT_OF_RANGE = 7,
  FC_STATUS_PANIC = 8,
} FcStatus;

typedef enum FcGreenPart {
  FC_GREEN_PART_FREE = 0,
  FC_GREEN_PART_REFLECTED = 1,
  FC_GREEN_PART_TOTAL = 2,
} FcGreenPart;

/**
 * Opaque medium handle.
 */
typedef struct FcMedium FcMedium;

/**
 * Opaque radial profile handle.
 */
typedef struct FcProfile FcProfile;

/**
 * One radial profile sample.
 */
typedef struct FcProfileRow {
  double r_over_a;
  double n;
  double sigma_eigenvalue;
  double force_density;
} FcProfileRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a medium with mirror radius `a` and index scale `n1`; NULL on invalid input.
 */
struct FcMedium *fc_medium_new(double a, double n1);

/**
 * # Safety
 * `m` must be NULL or a handle from [`fc_medium_new`] not yet freed.
 */
void fc_medium_free(struct FcMedium *m);

/**
 * Refractive index at physical radius `r`.
 *
 * # Safety
 * `m` must be a live medium handle and `out` writable.
 */
enum FcStatus fc_refractive_index(const struct FcMedium *m, double r, double *out);

/**
 * Eigenvalue of the isotropic Casimir stress at physical radius `r`, units ħc/a⁴.
 *
 * # Safety
 * `m` must be a live medium handle and `out` writable.
 */
enum FcStatus fc_stress_eigenvalue(const struct FcMedium *m, double r, double *out);

/**
 * Radial force density at physical radius `r`, units ħc/a⁵.
 *
 * # Safety
 * `m` must be a live medium handle and `out` writable.
 */
enum FcStatus fc_force_density(const struct FcMedium *m, double r, double *out);

/**
 * Scalar hypersphere Green function `D(r', kappa)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum FcStatus fc_scalar_green(double r_prime, double kappa, double *out);

/**
 * Electromagnetic Green bi-tensor at imaginary wavenumber `kappa` in reduced
 * units, written row-major into `out[9]`. `part` is one of the
 * [`FcGreenPart`] values.
 *
 * # Safety
 * `r` and `r0` must point to 3 readable doubles, `out` to 9 writable doubles.
 */
enum FcStatus fc_green(uint32_t part, const double *r, const double *r0, double kappa, double *out);

/**
 * Uniform radial profile from `r_min` to `r_max` (physical units); NULL on invalid input.
 *
 * # Safety
 * `m` must be a live medium handle.
 */
struct FcProfile *fc_profile_new(const struct FcMedium *m,
                                 double r_min,
                                 double r_max,
                                 size_t points);

/**
 * Number of rows, 0 for NULL.
 *
 * # Safety
 * `p` must be NULL or a live profile handle.
 */
size_t fc_profile_len(const struct FcProfile *p);

/**
 * # Safety
 * `p` must be a live profile handle and `out` writable.
 */
enum FcStatus fc_profile_row(const struct FcProfile *p, size_t index, struct FcProfileRow *out);

/**
 * # Safety
 * `p` must be NULL or a handle from [`fc_profile_new`] not yet freed.
 */
void fc_profile_free(struct FcProfile *p);

/**
 * Copies the calling thread's last error message into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length excluding the NUL, or
 * 0 when no error has been recorded.
 *
 * # Safety
 * `buf` must be NULL or point to `len` writable bytes.
 */
size_t fc_last_error_message(char *buf, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FISHEYE_CASIMIR_H */
