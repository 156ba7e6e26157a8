#ifndef GORINV_H
#define GORINV_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every C-API call.
 */
typedef enum {
  GorinvStatus_Ok = 0,
  GorinvStatus_NullPointer = 1,
  GorinvStatus_InvalidUtf8 = 2,
  GorinvStatus_DomainError = 3,
  GorinvStatus_Panic = 4,
} GorinvStatus;

/**
 * A closed matrix group held behind the FFI boundary.
 */
typedef struct GorinvGroup GorinvGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message from the most recent failing call on this thread, or NULL.
 * The caller owns the returned string.
 */
char *gorinv_last_error_message(void);

/**
 * Releases a string allocated by this library.
 *
 * # Safety
 * `s` must be NULL or a pointer previously returned by a gorinv function and
 * not yet freed.
 */
void gorinv_string_free(char *s);

/**
 * Lemma checker: group spec JSON -> verdict JSON.
 *
 * # Safety
 * `group_json` must be a valid NUL-terminated string and `out_json` a valid
 * location to store a pointer.
 */
GorinvStatus gorinv_check_group(const char *group_json, char **out_json);

/**
 * Inverse-system construction: input JSON -> graded ideal JSON.
 *
 * # Safety
 * `input_json` must be a valid NUL-terminated string and `out_json` a valid
 * location to store a pointer.
 */
GorinvStatus gorinv_construct(const char *input_json, char **out_json);

/**
 * Invariant subspace dimensions and bases. Pass a negative `max_degree` to
 * use the input's own setting.
 *
 * # Safety
 * `input_json` must be a valid NUL-terminated string and `out_json` a valid
 * location to store a pointer.
 */
GorinvStatus gorinv_invariants(const char *input_json, int64_t max_degree, char **out_json);

/**
 * Full pipeline on one instance spec JSON.
 *
 * # Safety
 * `instance_json` must be a valid NUL-terminated string and `out_json` a
 * valid location to store a pointer.
 */
GorinvStatus gorinv_verify(const char *instance_json, char **out_json);

/**
 * Seed-deterministic sweep over a config JSON.
 *
 * # Safety
 * `config_json` must be a valid NUL-terminated string and `out_json` a valid
 * location to store a pointer.
 */
GorinvStatus gorinv_sweep(const char *config_json, char **out_json);

/**
 * Reruns a bundled reference instance ("ex34" or "ex35"). `out_matched`
 * reports whether every recorded value was reproduced.
 *
 * # Safety
 * `id` must be a valid NUL-terminated string; `out_json` and `out_matched`
 * must be NULL or valid locations to write through.
 */
GorinvStatus gorinv_replicate(const char *id, char **out_json, bool *out_matched);

/**
 * Parses and closes a group from its spec JSON. `closure_cap` of 0 selects
 * the default cap. Returns NULL on failure (see
 * [`gorinv_last_error_message`]).
 *
 * # Safety
 * `group_json` must be a valid NUL-terminated string.
 */
GorinvGroup *gorinv_group_new(const char *group_json, uint64_t closure_cap);

/**
 * Releases a group handle.
 *
 * # Safety
 * `group` must be NULL or a pointer from [`gorinv_group_new`] not yet freed.
 */
void gorinv_group_free(GorinvGroup *group);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `group` must be NULL or a live handle from [`gorinv_group_new`].
 */
uint64_t gorinv_group_order(const GorinvGroup *group);

/**
 * Lemma verdict for the held group, as JSON.
 *
 * # Safety
 * `group` must be NULL or a live handle from [`gorinv_group_new`];
 * `out_json` must be a valid location to store a pointer.
 */
GorinvStatus gorinv_group_check(const GorinvGroup *group, char **out_json);

/**
 * Dimension of the degree-d invariant subspace. Returns a negative value on
 * error.
 *
 * # Safety
 * `group` must be NULL or a live handle from [`gorinv_group_new`].
 */
int64_t gorinv_group_invariant_dim(const GorinvGroup *group, uint64_t degree);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GORINV_H */
