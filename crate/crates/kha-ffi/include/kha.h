#ifndef KHA_H
#define KHA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KhaBinaryOp {
  KHA_BINARY_OP_ADD = 0,
  KHA_BINARY_OP_SUB = 1,
  KHA_BINARY_OP_MUL = 2,
  KHA_BINARY_OP_DIV = 3,
} KhaBinaryOp;

typedef enum KhaStatus {
  KHA_STATUS_OK = 0,
  KHA_STATUS_NULL_POINTER = 1,
  KHA_STATUS_INVALID_UTF8 = 2,
  KHA_STATUS_PARSE = 3,
  KHA_STATUS_CONFIG = 4,
  KHA_STATUS_UNSUPPORTED = 5,
  KHA_STATUS_DIVISION_BY_ZERO = 6,
  KHA_STATUS_POLE = 7,
  KHA_STATUS_DIVERGENT = 8,
  KHA_STATUS_INTEGRITY = 9,
  KHA_STATUS_DEGENERATE_FIXED_POINT = 10,
  KHA_STATUS_OUT_OF_RANGE = 11,
  KHA_STATUS_IO = 12,
  KHA_STATUS_PANIC = 13,
} KhaStatus;

/**
 * Opaque quiver handle.
 */
typedef struct KhaQuiver KhaQuiver;

/**
 * Opaque rational function handle.
 */
typedef struct KhaRational KhaRational;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the next call.
 */
const char *kha_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void kha_string_free(char *s);

/**
 * Parses a quiver from its JSON description.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum KhaStatus kha_quiver_from_json(const char *json, struct KhaQuiver **out);

/**
 * # Safety
 * `q` must be null or a handle from [`kha_quiver_from_json`].
 */
void kha_quiver_free(struct KhaQuiver *q);

/**
 * # Safety
 * `q` must be a live quiver handle; `out` must be writable.
 */
enum KhaStatus kha_quiver_vertex_count(const struct KhaQuiver *q, size_t *out);

/**
 * Parses a rational function such as `(1 - z[1,1]/z[1,2])/(qh - qh^-1)`.
 *
 * # Safety
 * `src` must be a NUL-terminated string; `out` must be writable.
 */
enum KhaStatus kha_rational_parse(const char *src, struct KhaRational **out);

/**
 * # Safety
 * `r` must be null or a rational function handle.
 */
void kha_rational_free(struct KhaRational *r);

/**
 * Canonical text form; free the result with [`kha_string_free`].
 *
 * # Safety
 * `r` must be a live handle; `out` must be writable.
 */
enum KhaStatus kha_rational_to_string(const struct KhaRational *r, char **out);

/**
 * `out = a op b`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum KhaStatus kha_rational_binary(enum KhaBinaryOp op,
                                   const struct KhaRational *a,
                                   const struct KhaRational *b,
                                   struct KhaRational **out);

/**
 * Exact equality of two rational functions.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum KhaStatus kha_rational_equal(const struct KhaRational *a,
                                  const struct KhaRational *b,
                                  bool *out);

/**
 * Coefficient of `var^d` in the expansion at infinity minus the one at zero.
 *
 * # Safety
 * `r` must be a live handle, `var` a NUL-terminated variable name; `out` must be writable.
 */
enum KhaStatus kha_rational_delta_coefficient(const struct KhaRational *r,
                                              const char *var,
                                              int32_t d,
                                              struct KhaRational **out);

/**
 * Shuffle product of two words `vertex:d,...`; writes the canonical text of the product.
 *
 * # Safety
 * `q` must be a live handle, `left`/`right` NUL-terminated; `out` must be writable.
 */
enum KhaStatus kha_shuffle_mul_words(const struct KhaQuiver *q,
                                     const char *left,
                                     const char *right,
                                     char **out);

/**
 * Runs the relation suite on the framing `w` (e.g. `"1,1"`) for sectors up to `vmax`.
 * `all_passed` reports the verdict; `report_json`, if not null, receives the JSON report.
 *
 * # Safety
 * `q` must be a live handle, `w`/`vmax` NUL-terminated; `all_passed` must be writable.
 */
enum KhaStatus kha_verify_relations(const struct KhaQuiver *q,
                                    const char *w,
                                    const char *vmax,
                                    int32_t dmin,
                                    int32_t dmax,
                                    bool *all_passed,
                                    char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KHA_H */
