#ifndef TORIFIED_H
#define TORIFIED_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result of every fallible call.
 */
typedef enum TvStatus {
  TV_STATUS_OK = 0,
  TV_STATUS_NULL_POINTER = 1,
  TV_STATUS_INVALID_UTF8 = 2,
  TV_STATUS_INVALID_ARGUMENT = 3,
  TV_STATUS_UNKNOWN_FAMILY = 4,
  TV_STATUS_PARSE_ERROR = 5,
  TV_STATUS_INVALID_FAN = 6,
  TV_STATUS_BUDGET_EXCEEDED = 7,
  TV_STATUS_OVERFLOW = 8,
  TV_STATUS_BUFFER_TOO_SMALL = 9,
  TV_STATUS_INDEX_OUT_OF_RANGE = 10,
  TV_STATUS_PANIC = 11,
} TvStatus;

/*
 Opaque torification handle.
 */
typedef struct TvTorification TvTorification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static NUL-terminated string.
 */
const char *tv_version(void);

/*
 Message for the last failed call on this thread, or NULL. Valid until the
 next `tv_*` call on the same thread.
 */
const char *tv_last_error(void);

/*
 Releases a string returned by this library. NULL is ignored.

 # Safety
 `s` must come from a `tv_*` out-parameter and not have been freed.
 */
void tv_string_free(char *s);

/*
 Built-in torification of a named family, e.g. `"grassmannian"` with
 parameters `{2, 4}`.

 # Safety
 `name` is a NUL-terminated string; `params` points to `n_params` values.
 */
enum TvStatus tv_torification_family(const char *name,
                                     const size_t *params,
                                     size_t n_params,
                                     struct TvTorification **out);

/*
 Torification from the JSON written by `torified torify`.

 # Safety
 `json` is a NUL-terminated string.
 */
enum TvStatus tv_torification_from_json(const char *json, struct TvTorification **out);

/*
 Toric torification of a fan given as fan JSON. Invalid fans are rejected
 with `TV_STATUS_INVALID_FAN`.

 # Safety
 `json` is a NUL-terminated string.
 */
enum TvStatus tv_torification_from_fan_json(const char *json, struct TvTorification **out);

/*
 Product torification `a × b`.

 # Safety
 `a` and `b` are live handles.
 */
enum TvStatus tv_torification_product(const struct TvTorification *a,
                                      const struct TvTorification *b,
                                      struct TvTorification **out);

/*
 Releases a handle. NULL is ignored.

 # Safety
 `t` comes from a constructor and has not been freed.
 */
void tv_torification_free(struct TvTorification *t);

/*
 Number of tori.

 # Safety
 `t` is a live handle.
 */
enum TvStatus tv_torification_len(const struct TvTorification *t, size_t *out);

/*
 Largest torus rank.

 # Safety
 `t` is a live handle.
 */
enum TvStatus tv_torification_dim(const struct TvTorification *t, size_t *out);

/*
 Rank of torus `index`.

 # Safety
 `t` is a live handle.
 */
enum TvStatus tv_torification_rank(const struct TvTorification *t, size_t index, size_t *out);

/*
 Writes the δ-vector into `buf` and its length into `out_len`. When `cap` is
 too small nothing is written to `buf` and `TV_STATUS_BUFFER_TOO_SMALL` is
 returned, with `out_len` still set.

 # Safety
 `t` is a live handle; `buf` has room for `cap` values.
 */
enum TvStatus tv_torification_delta(const struct TvTorification *t,
                                    uint64_t *buf,
                                    size_t cap,
                                    size_t *out_len);

/*
 Torification JSON (`dim`, `tori`, `delta`, `charts`).

 # Safety
 `t` is a live handle.
 */
enum TvStatus tv_torification_to_json(const struct TvTorification *t, char **out);

/*
 `N(q)` as a decimal string.

 # Safety
 `t` is a live handle.
 */
enum TvStatus tv_count(const struct TvTorification *t, uint64_t q, char **out);

/*
 `N(q)` as a 64-bit integer, or `TV_STATUS_OVERFLOW`.

 # Safety
 `t` is a live handle.
 */
enum TvStatus tv_count_i64(const struct TvTorification *t, uint64_t q, int64_t *out);

/*
 Zeta function rendered as a rational function of `s`, e.g. `s/(s-1)`.

 # Safety
 `t` is a live handle.
 */
enum TvStatus tv_zeta(const struct TvTorification *t, char **out);

/*
 Checks `Σ |D|^{d_i} = N(|D| + 1)` for `D = Z/orders[0] × ...`.

 # Safety
 `t` is a live handle; `orders` points to `n_orders` values.
 */
enum TvStatus tv_cc_cardinality_check(const struct TvTorification *t,
                                      const uint64_t *orders,
                                      size_t n_orders,
                                      bool *out_agrees);

/*
 Soulé points of the cone spanned by `n_rays` rays of length `dim` (row
 major in `rays`) with values in `μ_m ∪ {0}`: counted by faces and by
 enumerating homomorphisms.

 # Safety
 `rays` points to `n_rays * dim` values.
 */
enum TvStatus tv_soule_count(const int64_t *rays,
                             size_t n_rays,
                             size_t dim,
                             uint64_t m,
                             uint64_t *out_by_faces,
                             uint64_t *out_enumerated);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORIFIED_H */
