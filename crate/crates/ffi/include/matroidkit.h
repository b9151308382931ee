#ifndef MATROIDKIT_H
#define MATROIDKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MkStatus {
  MK_STATUS_OK = 0,
  MK_STATUS_NULL_ARGUMENT = 1,
  MK_STATUS_INVALID_ARGUMENT = 2,
  MK_STATUS_PARSE = 3,
  MK_STATUS_IO = 4,
  MK_STATUS_PRECONDITION = 5,
  MK_STATUS_SEARCH_LIMIT = 6,
  MK_STATUS_UNSERIALIZABLE = 7,
  MK_STATUS_PANIC = 8,
} MkStatus;

/**
 * Opaque matroid instance.
 */
typedef struct MkInstance MkInstance;

/**
 * Rank-k flat counts; the average size is `average_num / average_den` in lowest terms.
 */
typedef struct MkFlatStats {
  uint64_t count;
  uint64_t total_size;
  uint64_t average_num;
  uint64_t average_den;
} MkFlatStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into the library from this thread.
 */
const char *mk_last_error(void);

/**
 * Library version as a static string.
 */
const char *mk_version(void);

/**
 * Reads an instance file; the extension picks the format.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum MkStatus mk_load(const char *path, struct MkInstance **out);

/**
 * Parses instance text in the format named by its file extension
 * (`mtx`, `gg`, `inc` or `rk`).
 *
 * # Safety
 * `source`, `format` and `name` must be NUL-terminated strings; `out` must be writable.
 */
enum MkStatus mk_parse(const char *source,
                       const char *format,
                       const char *name,
                       struct MkInstance **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum MkStatus mk_dowling(size_t rank,
                         uint32_t group_order,
                         bool delete_joints,
                         struct MkInstance **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum MkStatus mk_uniform(size_t rank, size_t size, struct MkInstance **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum MkStatus mk_figure1(size_t a, struct MkInstance **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum MkStatus mk_graphic_k4(struct MkInstance **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum MkStatus mk_random(size_t rank, size_t size, uint64_t seed, struct MkInstance **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `h` must come from this library and not be used afterwards.
 */
void mk_free(struct MkInstance *h);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t mk_size(const struct MkInstance *h);

/**
 * Rank of the whole ground set, or 0 for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t mk_full_rank(const struct MkInstance *h);

/**
 * Rank of the set of `len` element indices at `elements`.
 *
 * # Safety
 * `elements` must point to `len` readable values (or be null when `len` is 0);
 * `out` must be writable.
 */
enum MkStatus mk_rank(const struct MkInstance *h, const size_t *elements, size_t len, size_t *out);

/**
 * Count, total size and exact average size of the rank-k flats.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum MkStatus mk_flat_stats(const struct MkInstance *h, size_t k, struct MkFlatStats *out);

/**
 * Size of a largest k-degenerate subset; optionally its element indices,
 * written as a 128-bit mask split into `mask_lo` and `mask_hi`.
 *
 * # Safety
 * `h` must be a live handle; `out_size` writable; `mask_lo` and `mask_hi`
 * may be null.
 */
enum MkStatus mk_largest_degenerate(const struct MkInstance *h,
                                    size_t k,
                                    uint64_t node_limit,
                                    size_t *out_size,
                                    uint64_t *mask_lo,
                                    uint64_t *mask_hi);

/**
 * Runs checks and returns the report document as JSON. `checks` is a
 * comma-separated list of check names, or null for every check.
 * `violation` (optional) is set when a theorem check fails.
 *
 * # Safety
 * `h` must be a live handle; `checks` null or NUL-terminated; `out_json`
 * writable; `violation` null or writable.
 */
enum MkStatus mk_verify_json(const struct MkInstance *h,
                             const char *checks,
                             uint64_t node_limit,
                             char **out_json,
                             bool *violation);

/**
 * Serializes the instance in the format named by `format` (a file extension).
 *
 * # Safety
 * `h` must be a live handle; `format` NUL-terminated; `out` writable.
 */
enum MkStatus mk_serialize(const struct MkInstance *h, const char *format, char **out);

/**
 * Releases a string returned by the library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void mk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MATROIDKIT_H */
