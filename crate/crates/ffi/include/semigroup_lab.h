#ifndef SEMIGROUP_LAB_H
#define SEMIGROUP_LAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result of every call. `SL_WITNESS` means the call succeeded and found a
 mathematical negative (counterexample, disjoint pair, exhausted search).
 */
typedef enum SlStatus {
  SL_OK = 0,
  SL_WITNESS = 1,
  SL_PARSE_ERROR = 2,
  SL_BUDGET_ERROR = 3,
  SL_NULL_POINTER = 4,
  SL_INVALID_ARGUMENT = 5,
  SL_UNSUPPORTED = 6,
  SL_INTERNAL_ERROR = 7,
} SlStatus;

/*
 Opaque family of constructible right ideals.
 */
typedef struct SlFamily SlFamily;

/*
 Opaque semigroup model.
 */
typedef struct SlModel SlModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failing call on this thread; empty after success.
 Valid until the next call on the same thread.
 */
const char *sl_last_error(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *sl_version(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void sl_string_free(char *s);

/*
 Parses a model such as `free:2` or `axb:Q(sqrt(-5))`.

 # Safety
 `spec` must be a NUL-terminated string and `out` writable.
 */
enum SlStatus sl_model_parse(const char *spec, struct SlModel **out);

/*
 # Safety
 `model` must come from `sl_model_parse` and not have been freed.
 */
void sl_model_free(struct SlModel *model);

/*
 Canonical text form of the model.

 # Safety
 `model` must be live and `out` writable.
 */
enum SlStatus sl_model_describe(const struct SlModel *model, char **out);

/*
 Closure of `{P, ∅}` for `depth` rounds.

 # Safety
 `model` must be live and `out` writable.
 */
enum SlStatus sl_family_compute(const struct SlModel *model,
                                size_t depth,
                                bool union_closed,
                                struct SlFamily **out);

/*
 # Safety
 `family` must come from `sl_family_compute` and not have been freed.
 */
void sl_family_free(struct SlFamily *family);

/*
 # Safety
 `family` must be live and `out` writable.
 */
enum SlStatus sl_family_len(const struct SlFamily *family, size_t *out);

/*
 # Safety
 `family` must be live and `out` writable.
 */
enum SlStatus sl_family_to_json(const struct SlFamily *family, char **out);

/*
 Independence check; `SL_WITNESS` with a counterexample in the report.

 # Safety
 `family` must be live and `out` writable.
 */
enum SlStatus sl_check_independence(const struct SlFamily *family,
                                    size_t window_radius,
                                    char **out);

/*
 Quasi-lattice check; `SL_WITNESS` with a non-principal ideal.

 # Safety
 `family` must be live and `out` writable.
 */
enum SlStatus sl_check_quasi_lattice(const struct SlFamily *family,
                                     size_t window_radius,
                                     char **out);

/*
 Reversibility on `ball(radius)`: `right = false` for `pP ∩ qP`,
 `true` for `Pp ∩ Pq`.

 # Safety
 `model` must be live and `out` writable.
 */
enum SlStatus sl_check_reversible(const struct SlModel *model,
                                  bool right,
                                  size_t radius,
                                  char **out);

/*
 Følner search with `C` the generators and `ε = eps_num/eps_den`;
 `SL_WITNESS` when the budget is exhausted.

 # Safety
 `model` must be live and `out` writable.
 */
enum SlStatus sl_folner_search(const struct SlModel *model,
                               int64_t eps_num,
                               int64_t eps_den,
                               char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEMIGROUP_LAB_H */
