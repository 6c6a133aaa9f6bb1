#ifndef ODDFORM_H
#define ODDFORM_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by every entry point.
 */
typedef enum OfStatus {
  OF_STATUS_OK = 0,
  /**
   * a mathematical check found a violation
   */
  OF_STATUS_VIOLATION = 1,
  OF_STATUS_CAPACITY = 2,
  OF_STATUS_INPUT = 3,
  OF_STATUS_INTERNAL = 4,
  OF_STATUS_NULL_POINTER = 5,
  OF_STATUS_PANIC = 6,
} OfStatus;

/**
 * Opaque ring handle.
 */
typedef struct OfRing OfRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds one of the shipped families ("linear", "symplectic", "even-orth", "odd-orth").
 *
 * # Safety
 * `family` must be a NUL-terminated string; `out` must be writable.
 */
enum OfStatus of_ring_new(const char *family, uint32_t modulus, uint32_t rank, struct OfRing **out);

/**
 * Builds a ring from a JSON descriptor.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum OfStatus of_ring_from_json(const char *json, struct OfRing **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `ring` must come from `of_ring_new`/`of_ring_from_json` and not be used afterwards.
 */
void of_ring_free(struct OfRing *ring);

/**
 * Dimension of the algebra, i.e. the length of every β vector; 0 for null.
 *
 * # Safety
 * `ring` must be null or a live handle.
 */
size_t of_ring_dim(const struct OfRing *ring);

/**
 * Rank of the hyperbolic family; 0 for null.
 *
 * # Safety
 * `ring` must be null or a live handle.
 */
size_t of_ring_rank(const struct OfRing *ring);

/**
 * |U(n)| by exhaustive enumeration.
 *
 * # Safety
 * `ring` must be a live handle; `out` must be writable.
 */
enum OfStatus of_unitary_order(const struct OfRing *ring, uint32_t n, uint64_t *out);

/**
 * |EU(n)| by closure.
 *
 * # Safety
 * `ring` must be a live handle; `out` must be writable.
 */
enum OfStatus of_elementary_order(const struct OfRing *ring, uint32_t n, uint64_t *out);

/**
 * Writes whether β (length `len` = dim) defines a unitary element.
 *
 * # Safety
 * `beta` must point to `len` values; `out` must be writable.
 */
enum OfStatus of_is_unitary(const struct OfRing *ring, const uint32_t *beta, size_t len, bool *out);

/**
 * β(gh) into `out`; both inputs must be unitary.
 *
 * # Safety
 * `g`, `h` and `out` must each point to `len` values.
 */
enum OfStatus of_compose(const struct OfRing *ring,
                         const uint32_t *g,
                         const uint32_t *h,
                         size_t len,
                         uint32_t *out);

/**
 * Runs the algebra, odd form, family and relation suites; the JSON report goes to `out`.
 * Returns `Violation` when any suite is not clean.
 *
 * # Safety
 * `ring` must be a live handle; `out` must be writable.
 */
enum OfStatus of_verify_report_json(const struct OfRing *ring, uint64_t seed, char **out);

/**
 * Verified reduction certificate of g ∈ U(n) as JSON.
 *
 * # Safety
 * `beta` must point to `len` values; `out` must be writable.
 */
enum OfStatus of_reduce(const struct OfRing *ring,
                        const uint32_t *beta,
                        size_t len,
                        uint32_t n,
                        char **out);

/**
 * Frees a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void of_string_free(char *s);

/**
 * Last error message on this thread, or null. Valid until the next failing call.
 */
const char *of_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ODDFORM_H */
