#ifndef HYPERMOTIVE_H
#define HYPERMOTIVE_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HmStatus {
  HM_STATUS_OK = 0,
  HM_STATUS_NULL_POINTER = 1,
  HM_STATUS_INVALID_UTF8 = 2,
  HM_STATUS_PARSE = 3,
  HM_STATUS_PRECONDITION = 4,
  HM_STATUS_CROSS_CHECK = 5,
  HM_STATUS_BUFFER_TOO_SMALL = 6,
  HM_STATUS_PANIC = 7,
} HmStatus;

/**
 * Opaque arrangement handle.
 */
typedef struct HmArrangement HmArrangement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses an arrangement document. On success `*out` owns a new handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HmStatus hm_arrangement_from_json(const char *json, struct HmArrangement **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `arr` must come from [`hm_arrangement_from_json`] and not be used afterwards.
 */
void hm_arrangement_free(struct HmArrangement *arr);

/**
 * Number of hyperplanes.
 *
 * # Safety
 * `arr` must be a live handle and `out` a valid pointer.
 */
enum HmStatus hm_arrangement_len(const struct HmArrangement *arr, uintptr_t *out);

/**
 * Total rank of the cohomology module.
 *
 * # Safety
 * `arr` must be a live handle and `out` a valid pointer.
 */
enum HmStatus hm_rank(const struct HmArrangement *arr, uintptr_t *out);

/**
 * Writes the Poincaré coefficients into `buf`. `*written` receives the
 * needed length even when the buffer is too small.
 *
 * # Safety
 * `buf` must hold `capacity` values (may be null when `capacity` is 0).
 */
enum HmStatus hm_poincare(const struct HmArrangement *arr,
                          uintptr_t *buf,
                          uintptr_t capacity,
                          uintptr_t *written);

/**
 * Runs a CLI command (`rank`, `reduce`, `verify`, ...) and returns its JSON
 * report in `*out`. `options_json` may be null. A report is still returned
 * with [`HmStatus::CrossCheck`] when a cross-check disagreed.
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` must be a valid pointer.
 */
enum HmStatus hm_run(const struct HmArrangement *arr,
                     const char *command,
                     const char *options_json,
                     char **out);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void hm_string_free(char *s);

/**
 * Message of the last failure on this thread, or null. Valid until the next
 * library call on the same thread.
 */
const char *hm_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERMOTIVE_H */
