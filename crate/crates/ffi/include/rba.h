#ifndef RBA_H
#define RBA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RbaStatus {
  RBA_STATUS_OK = 0,
  RBA_STATUS_NULL_POINTER = 1,
  RBA_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed JSON, formula or assignment text.
   */
  RBA_STATUS_PARSE = 3,
  /**
   * Well-formed input describing an ill-formed structure.
   */
  RBA_STATUS_INVALID = 4,
  /**
   * Element index, name or size cap out of range.
   */
  RBA_STATUS_OUT_OF_RANGE = 5,
  RBA_STATUS_INTERNAL = 6,
} RbaStatus;

typedef struct RbaAlgebra RbaAlgebra;

typedef struct RbaModel RbaModel;

typedef struct RbaMrba RbaMrba;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *rba_last_error(void);

/**
 * # Safety
 * `s` is null or a string returned by this library, not yet freed.
 */
void rba_string_free(char *s);

/**
 * Parses an algebra file (tables, glued blocks or a concrete universe).
 * Laws are not checked.
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is writable.
 */
enum RbaStatus rba_algebra_from_json(const char *json, struct RbaAlgebra **out);

/**
 * # Safety
 * `a` is null or a live handle from `rba_algebra_from_json`.
 */
void rba_algebra_free(struct RbaAlgebra *a);

/**
 * # Safety
 * `a` is a live handle; `out` is writable.
 */
enum RbaStatus rba_algebra_size(const struct RbaAlgebra *a, size_t *out);

/**
 * Runs the algebra laws. When `report` is non-null it receives the text
 * report, to be freed with `rba_string_free`.
 *
 * # Safety
 * `a` is a live handle; `passed` is writable; `report` is null or writable.
 */
enum RbaStatus rba_algebra_check(const struct RbaAlgebra *a, bool *passed, char **report);

/**
 * # Safety
 * `a` is a live handle; `name` is a NUL-terminated string; `out` is writable.
 */
enum RbaStatus rba_algebra_find(const struct RbaAlgebra *a, const char *name, uint32_t *out);

/**
 * # Safety
 * `a` is a live handle; `out` is writable. Free the result with
 * `rba_string_free`.
 */
enum RbaStatus rba_algebra_label(const struct RbaAlgebra *a, uint32_t x, char **out);

/**
 * # Safety
 * `a` is a live handle; `out` is writable.
 */
enum RbaStatus rba_algebra_meet(const struct RbaAlgebra *a, uint32_t x, uint32_t y, uint32_t *out);

/**
 * # Safety
 * `a` is a live handle; `out` is writable.
 */
enum RbaStatus rba_algebra_join(const struct RbaAlgebra *a, uint32_t x, uint32_t y, uint32_t *out);

/**
 * # Safety
 * `a` is a live handle; `out` is writable.
 */
enum RbaStatus rba_algebra_neg(const struct RbaAlgebra *a, uint32_t x, uint32_t *out);

/**
 * # Safety
 * `a` is a live handle; `out` is writable.
 */
enum RbaStatus rba_algebra_relative_top(const struct RbaAlgebra *a, uint32_t x, uint32_t *out);

/**
 * The `F^RB` filters as a JSON array of element-name arrays.
 *
 * # Safety
 * `a` is a live handle; `out` is writable. Free the result with
 * `rba_string_free`.
 */
enum RbaStatus rba_algebra_filters_json(const struct RbaAlgebra *a, char **out);

/**
 * Parses a modal algebra file; it must carry `fk`. Laws are not checked.
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is writable.
 */
enum RbaStatus rba_mrba_from_json(const char *json, struct RbaMrba **out);

/**
 * # Safety
 * `m` is null or a live handle from `rba_mrba_from_json`.
 */
void rba_mrba_free(struct RbaMrba *m);

/**
 * Algebra laws plus f1, f2, f3 and, when `require_fd`, fD.
 *
 * # Safety
 * `m` is a live handle; `passed` is writable; `report` is null or writable.
 */
enum RbaStatus rba_mrba_check(const struct RbaMrba *m,
                              bool require_fd,
                              bool *passed,
                              char **report);

/**
 * Value of `formula` under `assignment` (`p=X_B,q=X_R`), as an element index.
 *
 * # Safety
 * `m` is a live handle; `formula` and `assignment` are NUL-terminated
 * strings; `out` is writable.
 */
enum RbaStatus rba_mrba_evaluate(const struct RbaMrba *m,
                                 const char *formula,
                                 const char *assignment,
                                 uint32_t *out);

/**
 * True when the value of `formula` is its own relative top.
 *
 * # Safety
 * As for `rba_mrba_evaluate`.
 */
enum RbaStatus rba_mrba_valid(const struct RbaMrba *m,
                              const char *formula,
                              const char *assignment,
                              bool *out);

/**
 * # Safety
 * `json` is a NUL-terminated string; `out` is writable.
 */
enum RbaStatus rba_model_from_json(const char *json, struct RbaModel **out);

/**
 * # Safety
 * `m` is null or a live handle from `rba_model_from_json`.
 */
void rba_model_free(struct RbaModel *m);

/**
 * Seriality, the preorder, upward-closed languages and `V ⊆ L`.
 *
 * # Safety
 * `m` is a live handle; `passed` is writable; `report` is null or writable.
 */
enum RbaStatus rba_model_check(const struct RbaModel *m, bool *passed, char **report);

/**
 * True at every world where `formula` is defined. Propositions the model
 * does not interpret are an error.
 *
 * # Safety
 * `m` is a live handle; `formula` is a NUL-terminated string; `out` is
 * writable.
 */
enum RbaStatus rba_model_valid(const struct RbaModel *m, const char *formula, bool *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* RBA_H */
