#ifndef FLUCTUS_H
#define FLUCTUS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FluctusStatus {
  FLUCTUS_STATUS_OK = 0,
  FLUCTUS_STATUS_NULL_POINTER = 1,
  FLUCTUS_STATUS_INVALID_UTF8 = 2,
  FLUCTUS_STATUS_PARSE = 3,
  FLUCTUS_STATUS_INVALID = 4,
  FLUCTUS_STATUS_GUARD = 5,
  FLUCTUS_STATUS_UNSUPPORTED = 6,
  FLUCTUS_STATUS_PANIC = 7,
} FluctusStatus;

/**
 * Engine evaluating the second-order limit of a request.
 */
typedef enum FluctusEngine {
  /**
   * Sum over annular non-crossing diagrams.
   */
  FLUCTUS_ENGINE_COMBINATORIAL = 0,
  /**
   * Vacuum expectation on the cyclic Fock space.
   */
  FLUCTUS_ENGINE_FOCK = 1,
  /**
   * ψ̌ sum over annular non-crossing partitions; Wishart requests only.
   */
  FLUCTUS_ENGINE_PSICHECK = 2,
} FluctusEngine;

typedef enum FluctusKind {
  FLUCTUS_KIND_PAIRINGS = 0,
  FLUCTUS_KIND_PARTITIONS = 1,
  FLUCTUS_KIND_PERMUTATIONS = 2,
} FluctusKind;

/**
 * A parsed and resolved covariance request.
 */
typedef struct FluctusRequest FluctusRequest;

/**
 * Approximate value of an exact complex rational.
 */
typedef struct FluctusComplex {
  double re;
  double im;
} FluctusComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call into the library on the same thread.
 */
const char *fluctus_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *fluctus_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void fluctus_string_free(char *s);

/**
 * Parses a JSON request. On success `*out` owns a new request.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum FluctusStatus fluctus_request_parse(const char *json, struct FluctusRequest **out);

/**
 * # Safety
 * `req` must be null or a request from [`fluctus_request_parse`] not yet freed.
 */
void fluctus_request_free(struct FluctusRequest *req);

/**
 * Second-order limit of the request's `left` and `right` words. The exact
 * value is written to `*text` as `a/b` or `a/b + c/d i` (free with
 * [`fluctus_string_free`]) and its approximation to `*value`; either may be
 * null.
 *
 * # Safety
 * `req` must be a live request; `text` and `value` must be null or writable.
 */
enum FluctusStatus fluctus_covariance(const struct FluctusRequest *req,
                                      enum FluctusEngine engine,
                                      char **text,
                                      struct FluctusComplex *value);

/**
 * Exact covariance of the two traces at matrix size `n`.
 *
 * # Safety
 * As for [`fluctus_covariance`].
 */
enum FluctusStatus fluctus_oracle_covariance(const struct FluctusRequest *req,
                                             size_t n,
                                             char **text,
                                             struct FluctusComplex *value);

/**
 * Number of non-crossing objects of `kind` on the circles with `len`
 * point counts in `sizes`.
 *
 * # Safety
 * `sizes` must point to `len` readable values and `out` must be writable.
 */
enum FluctusStatus fluctus_enumerate_count(enum FluctusKind kind,
                                           const size_t *sizes,
                                           size_t len,
                                           size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FLUCTUS_H */
