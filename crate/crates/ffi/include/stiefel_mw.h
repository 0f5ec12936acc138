#ifndef STIEFEL_MW_H
#define STIEFEL_MW_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SmwStatus {
  SMW_STATUS_OK = 0,
  SMW_STATUS_NULL_POINTER = 1,
  // `(n, k)` violates `1 <= k <= n - 1`.
  SMW_STATUS_DOMAIN = 2,
  // `n` or `2^k` exceeds the supported size.
  SMW_STATUS_TOO_LARGE = 3,
  SMW_STATUS_INVALID_ARGUMENT = 4,
  SMW_STATUS_BUFFER_TOO_SMALL = 5,
  SMW_STATUS_PANIC = 6,
} SmwStatus;

typedef enum SmwRingKind {
  // Full MW-motivic coefficients.
  SMW_RING_KIND_MW = 0,
  // Motivic coefficients, cokernel of η.
  SMW_RING_KIND_M = 1,
  // Motivic coefficients, kernel of η.
  SMW_RING_KIND_ETA_M = 2,
} SmwRingKind;

// Which computation produces a cohomology handle. Passed as `uint32_t`.
typedef enum SmwPath {
  SMW_PATH_CLOSED_FORM = 0,
  SMW_PATH_INDUCTIVE = 1,
  SMW_PATH_MOTIVE = 2,
} SmwPath;

// Additive cohomology of one Stiefel variety.
typedef struct SmwCohomology SmwCohomology;

// Motive expansion conventions. `cone_shift_delta` is 0 or -1.
typedef struct SmwConventions {
  int64_t cone_shift_delta;
  int64_t cone_square_twist;
  int64_t cone_square_shift;
} SmwConventions;

typedef struct SmwVanishingFlags {
  bool negative_weight_motivic;
  bool mw_subdiagonal_negative_weight;
} SmwVanishingFlags;

// One distinct atom `kind@(p,q)` with its multiplicity.
typedef struct SmwTerm {
  enum SmwRingKind kind;
  int64_t p;
  int64_t q;
  uint64_t mult;
} SmwTerm;

// Euler class of `V_{k+1}(A^n) -> V_k(A^n)`: zero, or η·β_beta in degree `(p, q)`.
typedef struct SmwEulerClass {
  bool is_zero;
  uint32_t beta;
  int64_t p;
  int64_t q;
} SmwEulerClass;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *smw_version(void);

// Message of the last failing call on this thread; empty if none.
// Valid until the next failing call on the same thread.
const char *smw_last_error_message(void);

// # Safety
// `out` must be valid for writes.
enum SmwStatus smw_conventions_default(struct SmwConventions *out);

// # Safety
// `out` must be valid for writes.
enum SmwStatus smw_vanishing_flags_default(struct SmwVanishingFlags *out);

// Computes the cohomology of `V_k(A^n)` along `path` (an [`SmwPath`] value).
// `conv` may be null for the default conventions; only the motive path reads it.
//
// # Safety
// `conv` must be null or point to a valid `SmwConventions`; `out` must be valid
// for writes. The handle written to `out` must be released with
// [`smw_cohomology_free`].
enum SmwStatus smw_cohomology_new(uint32_t n,
                                  uint32_t k,
                                  uint32_t path,
                                  const struct SmwConventions *conv,
                                  struct SmwCohomology **out);

// # Safety
// `h` must be null or a handle from [`smw_cohomology_new`] not yet freed.
void smw_cohomology_free(struct SmwCohomology *h);

// Number of distinct atoms.
//
// # Safety
// `h` must be a live handle; `out` must be valid for writes.
enum SmwStatus smw_cohomology_len(const struct SmwCohomology *h, size_t *out);

// Total atom count, with multiplicity. Equals `2^k`.
//
// # Safety
// `h` must be a live handle; `out` must be valid for writes.
enum SmwStatus smw_cohomology_rank(const struct SmwCohomology *h, uint64_t *out);

// The `i`-th distinct atom in canonical `(p, q, kind)` order.
//
// # Safety
// `h` must be a live handle; `out` must be valid for writes.
enum SmwStatus smw_cohomology_term(const struct SmwCohomology *h, size_t i, struct SmwTerm *out);

// Multiset equality, labels ignored.
//
// # Safety
// `a` and `b` must be live handles; `out` must be valid for writes.
enum SmwStatus smw_cohomology_equal(const struct SmwCohomology *a,
                                    const struct SmwCohomology *b,
                                    bool *out);

// JSON array of atom records.
//
// # Safety
// `h` must be a live handle; `buf` must be valid for `cap` bytes (may be null
// when `cap` is 0); `needed` may be null.
enum SmwStatus smw_cohomology_to_json(const struct SmwCohomology *h,
                                      char *buf,
                                      size_t cap,
                                      size_t *needed);

// The group in bidegree `(p, q)` over the base field, as text such as
// `K^MW_{-1}(K)`. `flags` may be null for the defaults.
//
// # Safety
// `h` must be a live handle; `flags` must be null or valid; `buf` must be
// valid for `cap` bytes (may be null when `cap` is 0); `needed` may be null.
enum SmwStatus smw_cohomology_group_at(const struct SmwCohomology *h,
                                       int64_t p,
                                       int64_t q,
                                       const struct SmwVanishingFlags *flags,
                                       char *buf,
                                       size_t cap,
                                       size_t *needed);

// # Safety
// `out` must be valid for writes.
enum SmwStatus smw_euler_class(uint32_t n, uint32_t k, struct SmwEulerClass *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STIEFEL_MW_H */
