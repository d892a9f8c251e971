#ifndef RESMAT_H
#define RESMAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Number of configuration classes of prime triples.
 */
#define RESMAT_CLASS_COUNT 10

/**
 * Result codes.
 */
typedef enum ResmatStatus {
  RESMAT_STATUS_OK = 0,
  /**
   * The matrix is not a residue matrix of the requested kind.
   */
  RESMAT_STATUS_NOT_MEMBER = 1,
  RESMAT_STATUS_INVALID_ARGUMENT = 2,
  RESMAT_STATUS_PARSE = 3,
  RESMAT_STATUS_SEARCH_EXHAUSTED = 4,
  RESMAT_STATUS_UNSUPPORTED_DIMENSION = 5,
  RESMAT_STATUS_RAMIFIED_PRIME = 6,
  RESMAT_STATUS_NOT_COPRIME = 7,
  RESMAT_STATUS_NULL_POINTER = 8,
  RESMAT_STATUS_BUFFER_TOO_SMALL = 9,
  RESMAT_STATUS_PANIC = 10,
  RESMAT_STATUS_INTERNAL = 11,
} ResmatStatus;

/**
 * Matrix family for counting.
 */
typedef enum ResmatFamily {
  RESMAT_FAMILY_QR = 0,
  RESMAT_FAMILY_SYMMETRIC = 1,
  RESMAT_FAMILY_SKEW = 2,
} ResmatFamily;

/**
 * Opaque matrix handle.
 */
typedef struct ResmatMatrix ResmatMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next `resmat_*` call on the same thread.
 */
const char *resmat_last_error_message(void);

/**
 * Builds an `n x n` matrix of `m`th roots of unity from `n*n` row-major
 * exponents (`-1` on the diagonal).
 *
 * # Safety
 * `exponents` must point to `n*n` readable values; `out` must be writable.
 */
enum ResmatStatus resmat_matrix_new(uint8_t m,
                                    uintptr_t n,
                                    const int32_t *exponents,
                                    struct ResmatMatrix **out);

/**
 * Parses matrix text (rows on lines, entries separated by spaces or
 * commas; alphabet `0 1 -1`, `0 1 w w2` or `0 1 i -1 -i`).
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum ResmatStatus resmat_matrix_parse(const char *text, uint8_t m, struct ResmatMatrix **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `matrix` must come from this library and not be freed twice.
 */
void resmat_matrix_free(struct ResmatMatrix *matrix);

/**
 * Dimension of the matrix, 0 for null.
 *
 * # Safety
 * `matrix` must be null or a live handle.
 */
uintptr_t resmat_matrix_dim(const struct ResmatMatrix *matrix);

/**
 * Root-of-unity order `m`, 0 for null.
 *
 * # Safety
 * `matrix` must be null or a live handle.
 */
uint8_t resmat_matrix_modulus(const struct ResmatMatrix *matrix);

/**
 * Exponent at `(i, j)`, `-1` for the diagonal.
 *
 * # Safety
 * `matrix` must be a live handle; `out` must be writable.
 */
enum ResmatStatus resmat_matrix_get(const struct ResmatMatrix *matrix,
                                    uintptr_t i,
                                    uintptr_t j,
                                    int32_t *out);

/**
 * Canonical representative of the permutation class.
 *
 * # Safety
 * `matrix` must be a live handle; `out` must be writable.
 */
enum ResmatStatus resmat_canonical_form(const struct ResmatMatrix *matrix,
                                        struct ResmatMatrix **out);

/**
 * `result[i][j] = M[perm[i]][perm[j]]`, with a 0-based image array.
 *
 * # Safety
 * `perm` must point to `len` readable values; `out` must be writable.
 */
enum ResmatStatus resmat_conjugate(const struct ResmatMatrix *matrix,
                                   const uintptr_t *perm,
                                   uintptr_t len,
                                   struct ResmatMatrix **out);

/**
 * Quadratic membership test. Writes `s` (0 when not a member) and the
 * diagonal of `M²` into `diag` (`n` values; may be null when `diag_len`
 * is 0). Returns `Ok` or `NotMember`.
 *
 * # Safety
 * Pointers must be valid for the stated lengths.
 */
enum ResmatStatus resmat_qr_check(const struct ResmatMatrix *matrix,
                                  uintptr_t *out_s,
                                  int64_t *diag,
                                  uintptr_t diag_len);

/**
 * Cubic membership test.
 *
 * # Safety
 * `matrix` must be a live handle.
 */
enum ResmatStatus resmat_cubic_check(const struct ResmatMatrix *matrix);

/**
 * Quartic membership test; writes `s` (0 when not a member).
 *
 * # Safety
 * `matrix` must be a live handle; `out_s` may be null.
 */
enum ResmatStatus resmat_quartic_check(const struct ResmatMatrix *matrix, uintptr_t *out_s);

/**
 * Distinct odd primes below `limit` whose QR matrix is `matrix`, written
 * to `primes` (`n` values).
 *
 * # Safety
 * `primes` must be writable for `len` values.
 */
enum ResmatStatus resmat_qr_witness(const struct ResmatMatrix *matrix,
                                    uint64_t limit,
                                    uint64_t *primes,
                                    uintptr_t len);

/**
 * Primary Eisenstein primes `a[k] + b[k]ω` realizing a cubic matrix.
 *
 * # Safety
 * `a` and `b` must be writable for `len` values.
 */
enum ResmatStatus resmat_cubic_witness(const struct ResmatMatrix *matrix,
                                       uint64_t norm_limit,
                                       int64_t *a,
                                       int64_t *b,
                                       uintptr_t len);

/**
 * Primary Gaussian primes `a[k] + b[k]i` realizing a quartic matrix.
 *
 * # Safety
 * `a` and `b` must be writable for `len` values.
 */
enum ResmatStatus resmat_quartic_witness(const struct ResmatMatrix *matrix,
                                         uint64_t norm_limit,
                                         int64_t *a,
                                         int64_t *b,
                                         uintptr_t len);

/**
 * Legendre symbol `(a/p)`: -1, 0 or 1.
 *
 * # Safety
 * `out` must be writable.
 */
enum ResmatStatus resmat_legendre(int64_t a, uint64_t p, int32_t *out);

/**
 * Jacobi symbol `(a/n)` for odd positive `n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum ResmatStatus resmat_jacobi(int64_t a, uint64_t n, int32_t *out);

/**
 * Cubic symbol `((xa + xb ω) / (qa + qb ω))_3` as an exponent of `ω`. The
 * denominator must be a primary prime.
 *
 * # Safety
 * `out` must be writable.
 */
enum ResmatStatus resmat_cubic_symbol(int64_t xa, int64_t xb, int64_t qa, int64_t qb, uint8_t *out);

/**
 * Quartic symbol `((xa + xb i) / (qa + qb i))_4` as an exponent of `i`.
 * The denominator must be a primary prime.
 *
 * # Safety
 * `out` must be writable.
 */
enum ResmatStatus resmat_quartic_symbol(int64_t xa,
                                        int64_t xb,
                                        int64_t qa,
                                        int64_t qb,
                                        uint8_t *out);

/**
 * Number of `n x n` matrices in a family.
 *
 * # Safety
 * `out` must be writable.
 */
enum ResmatStatus resmat_count_matrices(uintptr_t n, enum ResmatFamily kind, uint64_t *out);

/**
 * Number of permutation classes in a family.
 *
 * # Safety
 * `out` must be writable.
 */
enum ResmatStatus resmat_count_classes(uintptr_t n, enum ResmatFamily kind, uint64_t *out);

/**
 * Exact model frequencies `num[k] / den[k]` of the 10 configuration
 * classes, in class order.
 *
 * # Safety
 * `num` and `den` must be writable for `len` values.
 */
enum ResmatStatus resmat_exact_frequencies(uint64_t *num, uint64_t *den, uintptr_t len);

/**
 * Per-class counts of prime triples `p < q < r` with `p·q·r <= bound`.
 *
 * # Safety
 * `counts` must be writable for `len` values; `total` may be null.
 */
enum ResmatStatus resmat_empirical_scan(uint64_t bound,
                                        uint64_t *counts,
                                        uintptr_t len,
                                        uint64_t *total);

/**
 * Library version as a static nul-terminated string.
 */
const char *resmat_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RESMAT_H */
