#ifndef ASYMLOG_H
#define ASYMLOG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes. Zero is success.
typedef enum AsymlogStatus {
  ASYMLOG_STATUS_OK = 0,
  ASYMLOG_STATUS_DOMAIN = 1,
  ASYMLOG_STATUS_BUDGET = 2,
  ASYMLOG_STATUS_VERIFICATION = 3,
  ASYMLOG_STATUS_UNRESOLVED = 4,
  ASYMLOG_STATUS_FIT_RESIDUAL = 5,
  ASYMLOG_STATUS_PRECISION = 6,
  ASYMLOG_STATUS_CONVERGENCE = 7,
  ASYMLOG_STATUS_NULL_POINTER = 8,
  ASYMLOG_STATUS_INVALID_STRING = 9,
  ASYMLOG_STATUS_OUT_OF_RANGE = 10,
  ASYMLOG_STATUS_PANIC = 11,
} AsymlogStatus;

// Coefficients `c_0, c_1, ...` of the small-`s` incomplete-gamma expansion.
typedef struct AsymlogBootstrap AsymlogBootstrap;

// A computed real number, with its exact rational form when known.
typedef struct AsymlogValue AsymlogValue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failure on this thread, or null. Owned by the
// library; valid until the next call on the same thread.
const char *asymlog_last_error(void);

// Library version as a static NUL-terminated string.
const char *asymlog_version(void);

// Releases a string returned by the library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void asymlog_string_free(char *s);

// `zeta^{(p)}(a)` to `digits` digits.
//
// # Safety
// `out` must be a valid pointer to writable storage for a handle.
enum AsymlogStatus asymlog_zeta_derivative(uint32_t p,
                                           int64_t a,
                                           uint32_t digits,
                                           struct AsymlogValue **out);

// Generalized Stieltjes constant `gamma_p`.
//
// # Safety
// `out` must be a valid pointer to writable storage for a handle.
enum AsymlogStatus asymlog_stieltjes(uint32_t p, uint32_t digits, struct AsymlogValue **out);

// Glaisher-type constant of order `q`.
//
// # Safety
// `out` must be a valid pointer to writable storage for a handle.
enum AsymlogStatus asymlog_glaisher(uint32_t q, uint32_t digits, struct AsymlogValue **out);

// Constant `C_{p,q}` of the sum over `1/(n^q log^p n)`.
//
// # Safety
// `out` must be a valid pointer to writable storage for a handle.
enum AsymlogStatus asymlog_cpq(uint32_t p, uint32_t q, uint32_t digits, struct AsymlogValue **out);

// `Li_j(x)` for a decimal string `x`; with `reflection` non-zero,
// `Li_j(1 - x)` through the reflection formula.
//
// # Safety
// `x` must be a NUL-terminated string; `out` a valid handle slot.
enum AsymlogStatus asymlog_polylog(uint32_t j,
                                   const char *x,
                                   uint32_t digits,
                                   int32_t reflection,
                                   struct AsymlogValue **out);

// Nielsen generalized polylogarithm `S_{k,p}(x)`.
//
// # Safety
// `x` must be a NUL-terminated string; `out` a valid handle slot.
enum AsymlogStatus asymlog_nielsen(uint32_t k,
                                   uint32_t p,
                                   const char *x,
                                   uint32_t digits,
                                   struct AsymlogValue **out);

// The meta-zeta sum over `(n log n)^{-s}` for `s > 1`.
//
// # Safety
// `s` must be a NUL-terminated string; `out` a valid handle slot.
enum AsymlogStatus asymlog_meta_zeta(const char *s, uint32_t digits, struct AsymlogValue **out);

// Nearest `f64` to the value.
//
// # Safety
// `h` must be a live handle; `out` writable.
enum AsymlogStatus asymlog_value_to_double(const struct AsymlogValue *h, double *out);

// Decimal rendering: the exact fraction `a/b` when known, otherwise
// scientific notation with `digits` significant digits (0 uses the
// requested precision). Free with [`asymlog_string_free`].
//
// # Safety
// `h` must be a live handle; `out` writable.
enum AsymlogStatus asymlog_value_to_string(const struct AsymlogValue *h,
                                           uint32_t digits,
                                           char **out);

// Non-zero when the value is known as an exact rational.
//
// # Safety
// `h` must be a live handle or null.
int32_t asymlog_value_is_exact(const struct AsymlogValue *h);

// Estimated absolute error of an extracted constant, or NaN when none
// was recorded.
//
// # Safety
// `h` must be a live handle or null.
double asymlog_value_residual(const struct AsymlogValue *h);

// Releases a value handle. Null is ignored.
//
// # Safety
// `h` must come from this library and not have been freed.
void asymlog_value_free(struct AsymlogValue *h);

// Fits `c_0 ..= c_max_i` to `digits` digits.
//
// # Safety
// `out` must be a valid pointer to writable storage for a handle.
enum AsymlogStatus asymlog_bootstrap(uint32_t max_i,
                                     uint32_t digits,
                                     struct AsymlogBootstrap **out);

// Number of coefficients in the table (0 for null).
//
// # Safety
// `h` must be a live handle or null.
size_t asymlog_bootstrap_len(const struct AsymlogBootstrap *h);

// Copies `c_i` out as a new value handle.
//
// # Safety
// `h` must be a live handle; `out` a valid handle slot.
enum AsymlogStatus asymlog_bootstrap_get(const struct AsymlogBootstrap *h,
                                         size_t i,
                                         struct AsymlogValue **out);

// Releases a bootstrap handle. Null is ignored.
//
// # Safety
// `h` must come from this library and not have been freed.
void asymlog_bootstrap_free(struct AsymlogBootstrap *h);

// Runs an exact identity suite by name. Zero for `max_p`, `max_n` or `k`
// selects the suite default. Returns [`AsymlogStatus::Verification`] when
// any instance fails; the counts are written either way.
//
// # Safety
// `suite` must be a NUL-terminated string; the count pointers writable or
// null.
enum AsymlogStatus asymlog_verify_suite(const char *suite,
                                        uint64_t max_p,
                                        uint64_t max_n,
                                        uint32_t k,
                                        uint64_t *instances,
                                        uint64_t *failed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ASYMLOG_H */
