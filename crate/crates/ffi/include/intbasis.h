#ifndef INTBASIS_H
#define INTBASIS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IbAlgorithm {
  IB_ALGORITHM_VAN_HOEIJ = 0,
  IB_ALGORITHM_TRAGER = 1,
  IB_ALGORITHM_BOEHM = 2,
  IB_ALGORITHM_ALL = 3,
} IbAlgorithm;

/**
 * Status codes; the nonzero input/verification/internal values match the
 * command line exit codes.
 */
typedef enum IbStatus {
  IB_STATUS_OK = 0,
  IB_STATUS_VERIFICATION_FAILED = 2,
  IB_STATUS_INPUT_ERROR = 3,
  IB_STATUS_INTERNAL_ERROR = 4,
  IB_STATUS_NULL_POINTER = 5,
  IB_STATUS_INVALID_ARGUMENT = 6,
} IbStatus;

typedef enum IbVerify {
  IB_VERIFY_NONE = 0,
  IB_VERIFY_INTEGRALITY = 1,
  IB_VERIFY_FULL = 2,
} IbVerify;

/**
 * A validated curve.
 */
typedef struct IbCurve IbCurve;

/**
 * A computed basis with its JSON rendering.
 */
typedef struct IbResult IbResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread (empty if none). The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *ib_last_error(void);

/**
 * Parses `{"p": ..., "f": [[i, j, c], ...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum IbStatus ib_curve_from_json(const char *json, struct IbCurve **out);

/**
 * Builds a curve from `nterms` triples (i, j, c) stored consecutively in
 * `terms`, each standing for c·x^i·y^j.
 *
 * # Safety
 * `terms` must point to 3·`nterms` readable values and `out` must be valid.
 */
enum IbStatus ib_curve_new(uint64_t p, const int64_t *terms, size_t nterms, struct IbCurve **out);

/**
 * deg_y f, or 0 for a null handle.
 *
 * # Safety
 * `curve` must be null or a live handle.
 */
size_t ib_curve_degree(const struct IbCurve *curve);

/**
 * # Safety
 * `curve` must be null or a handle not yet freed.
 */
void ib_curve_free(struct IbCurve *curve);

/**
 * Computes the integral basis. With `IB_ALGORITHM_ALL` the three algorithms
 * are run and compared. Returns VerificationFailed (with the result still
 * stored in `out`) if they disagree or a requested check fails.
 *
 * # Safety
 * `curve` must be a live handle and `out` a valid pointer.
 */
enum IbStatus ib_compute(const struct IbCurve *curve,
                         enum IbAlgorithm algorithm,
                         enum IbVerify verify,
                         uint64_t seed,
                         struct IbResult **out);

/**
 * Number of basis elements, or 0 for a null handle.
 *
 * # Safety
 * `res` must be null or a live handle.
 */
size_t ib_result_size(const struct IbResult *res);

/**
 * Degree of the denominator of basis element `d` as a polynomial in x.
 *
 * # Safety
 * `res` must be a live handle and `degree` a valid pointer.
 */
enum IbStatus ib_result_denominator_degree(const struct IbResult *res, size_t d, size_t *degree);

/**
 * The result as JSON. The string is owned by `res`.
 *
 * # Safety
 * `res` must be null or a live handle.
 */
const char *ib_result_json(const struct IbResult *res);

/**
 * # Safety
 * `res` must be null or a handle not yet freed.
 */
void ib_result_free(struct IbResult *res);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* INTBASIS_H */
