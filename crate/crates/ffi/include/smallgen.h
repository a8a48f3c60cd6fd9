#ifndef SMALLGEN_H
#define SMALLGEN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SmallgenStatus {
  SMALLGEN_STATUS_OK = 0,
  SMALLGEN_STATUS_NULL_POINTER = 1,
  SMALLGEN_STATUS_INVALID_UTF8 = 2,
  SMALLGEN_STATUS_PANIC = 3,
  SMALLGEN_STATUS_DEGREE_TOO_SMALL = 10,
  SMALLGEN_STATUS_ZERO_POLYNOMIAL = 11,
  SMALLGEN_STATUS_NOT_PRIME = 12,
  SMALLGEN_STATUS_NOT_SQUAREFREE = 13,
  SMALLGEN_STATUS_REDUCIBLE = 14,
  SMALLGEN_STATUS_VANISHES_MOD_P = 15,
  SMALLGEN_STATUS_DIVISION_BY_ZERO = 16,
  SMALLGEN_STATUS_FIELD_MISMATCH = 17,
  SMALLGEN_STATUS_PRECISION_EXHAUSTED = 18,
  SMALLGEN_STATUS_AMBIGUOUS_FACTOR = 19,
  SMALLGEN_STATUS_UNDECIDED = 20,
  SMALLGEN_STATUS_INVALID_ARGUMENT = 21,
  SMALLGEN_STATUS_NOT_SQUAREFREE_INTEGER = 22,
  SMALLGEN_STATUS_NOT_COPRIME = 23,
  SMALLGEN_STATUS_PRECONDITION = 24,
  SMALLGEN_STATUS_CONSISTENCY = 25,
  SMALLGEN_STATUS_PARSE = 26,
  SMALLGEN_STATUS_IO = 27,
} SmallgenStatus;

// A number field.
typedef struct SmallgenField SmallgenField;

// The height of an algebraic number.
typedef struct SmallgenHeight SmallgenHeight;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The library version as a static NUL-terminated string.
const char *smallgen_version(void);

// Message for the last failure on this thread, or NULL. The pointer stays
// valid until the next call into the library on the same thread.
const char *smallgen_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library, freed once.
void smallgen_string_free(char *s);

// Field defined by an irreducible polynomial with `len` coefficients,
// constant term first.
//
// # Safety
// `coeffs` must point to `len` integers and `out` must be writable.
enum SmallgenStatus smallgen_field_from_coeffs(const int64_t *coeffs,
                                               size_t len,
                                               struct SmallgenField **out);

// Field described by a JSON spec document.
//
// # Safety
// `json` must be a NUL-terminated string and `out` must be writable.
enum SmallgenStatus smallgen_field_from_spec(const char *json, struct SmallgenField **out);

// # Safety
// `field` must be NULL or a handle from this library, freed once.
void smallgen_field_free(struct SmallgenField *field);

// # Safety
// `field` must be a live handle and `out` writable.
enum SmallgenStatus smallgen_field_degree(const struct SmallgenField *field, size_t *out);

// Field discriminant as a decimal string. `exact` is false when only the
// value up to squares of some primes could be certified.
//
// # Safety
// `field` must be a live handle; `out` and `exact` must be writable.
enum SmallgenStatus smallgen_field_discriminant(const struct SmallgenField *field,
                                                char **out,
                                                bool *exact);

// Whether the prime `p` splits completely in the field.
//
// # Safety
// `field` must be a live handle and `out` writable.
enum SmallgenStatus smallgen_splits_completely(const struct SmallgenField *field,
                                               uint64_t p,
                                               bool *out);

// Smallest height of a generator of the field, searched within the given
// candidate and time budget.
//
// # Safety
// `field` must be a live handle and `out` writable.
enum SmallgenStatus smallgen_delta(const struct SmallgenField *field,
                                   uint64_t max_candidates,
                                   double max_seconds,
                                   struct SmallgenHeight **out);

// Height of a root of an irreducible polynomial.
//
// # Safety
// `coeffs` must point to `len` integers and `out` must be writable.
enum SmallgenStatus smallgen_height_from_coeffs(const int64_t *coeffs,
                                                size_t len,
                                                struct SmallgenHeight **out);

// # Safety
// `height` must be NULL or a handle from this library, freed once.
void smallgen_height_free(struct SmallgenHeight *height);

// Lower and upper bounds on the height, certified to `bits` bits and
// rounded outward to doubles.
//
// # Safety
// `height` must be a live handle; `lo` and `hi` must be writable.
enum SmallgenStatus smallgen_height_bounds(const struct SmallgenHeight *height,
                                           uint32_t bits,
                                           double *lo,
                                           double *hi);

// Exact form of the height such as `5^(1/2)`, or a decimal.
//
// # Safety
// `height` must be a live handle and `out` writable.
enum SmallgenStatus smallgen_height_to_string(const struct SmallgenHeight *height, char **out);

// Whether the search that produced this height ran to completion.
//
// # Safety
// `height` must be a live handle.
bool smallgen_height_is_exhaustive(const struct SmallgenHeight *height);

// Number of primes `p ≤ x` with `p ≡ a (mod q)`.
//
// # Safety
// `out` must be writable.
enum SmallgenStatus smallgen_pi_qa(uint64_t x, uint64_t q, uint64_t a, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SMALLGEN_H */
