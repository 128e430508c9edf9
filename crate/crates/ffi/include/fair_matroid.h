#ifndef FAIR_MATROID_H
#define FAIR_MATROID_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FmStatus {
  FM_STATUS_OK = 0,
  FM_STATUS_NULL_POINTER = 1,
  FM_STATUS_INVALID_UTF8 = 2,
  FM_STATUS_MALFORMED = 3,
  FM_STATUS_PRECONDITION = 4,
  FM_STATUS_INFEASIBLE = 5,
  FM_STATUS_CONFIG = 6,
  FM_STATUS_INVARIANT = 7,
  FM_STATUS_IO = 8,
  FM_STATUS_TOO_LARGE = 9,
  FM_STATUS_PANIC = 10,
} FmStatus;

/**
 * Opaque problem instance.
 */
typedef struct FmInstance FmInstance;

/**
 * Opaque result of one run.
 */
typedef struct FmResult FmResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *fm_last_error_message(void);

/**
 * Parses and validates an instance from a JSON string.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum FmStatus fm_instance_from_json(const char *json, struct FmInstance **out);

/**
 * Canonical JSON for an instance; release with [`fm_string_free`].
 *
 * # Safety
 * `inst` must come from this library; `out` must be writable.
 */
enum FmStatus fm_instance_to_json(const struct FmInstance *inst, char **out);

/**
 * Number of elements in the instance, or 0 for a null handle.
 *
 * # Safety
 * `inst` must be null or come from this library.
 */
size_t fm_instance_universe_size(const struct FmInstance *inst);

/**
 * # Safety
 * `inst` must be null or come from this library, and not be used afterwards.
 */
void fm_instance_free(struct FmInstance *inst);

/**
 * Generates a synthetic instance. `kind` is "coverage", "clustering" or
 * "recommender"; `n` and `colors` of 0 select the kind's defaults.
 *
 * # Safety
 * `kind` must be a nul-terminated string; `out` must be writable.
 */
enum FmStatus fm_generate(const char *kind,
                          size_t n,
                          size_t colors,
                          size_t r,
                          uint64_t seed,
                          struct FmInstance **out);

/**
 * Runs `algo` ("our", "our:0.3", "det:0.5", "twopass", "lbmi", "ubmi",
 * "random"). `epsilon` applies when the tag carries none.
 *
 * # Safety
 * `inst` must come from this library, `algo` must be a nul-terminated
 * string and `out` must be writable.
 */
enum FmStatus fm_run(const struct FmInstance *inst,
                     const char *algo,
                     double epsilon,
                     uint64_t seed,
                     struct FmResult **out);

/**
 * # Safety
 * `res` must be null or come from [`fm_run`].
 */
size_t fm_result_size(const struct FmResult *res);

/**
 * # Safety
 * `res` must be null or come from [`fm_run`].
 */
double fm_result_f_value(const struct FmResult *res);

/**
 * # Safety
 * `res` must be null or come from [`fm_run`].
 */
size_t fm_result_fav(const struct FmResult *res);

/**
 * # Safety
 * `res` must be null or come from [`fm_run`].
 */
size_t fm_result_iterations(const struct FmResult *res);

/**
 * Copies up to `cap` solution elements (ascending) into `buf` and returns
 * the total number of elements.
 *
 * # Safety
 * `res` must be null or come from [`fm_run`]; `buf` must hold `cap` values
 * or be null with `cap == 0`.
 */
size_t fm_result_elements(const struct FmResult *res, size_t *buf, size_t cap);

/**
 * # Safety
 * `res` must be null or come from [`fm_run`], and not be used afterwards.
 */
void fm_result_free(struct FmResult *res);

/**
 * Checks that `elements` is independent and within every upper bound.
 * Writes the fairness violation to `fav` when it is non-null.
 *
 * # Safety
 * `inst` must come from this library; `elements` must hold `len` values
 * (or be null with `len == 0`); `passed` must be writable.
 */
enum FmStatus fm_verify(const struct FmInstance *inst,
                        const size_t *elements,
                        size_t len,
                        bool *passed,
                        size_t *fav);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or come from this library, and not be used afterwards.
 */
void fm_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FAIR_MATROID_H */
