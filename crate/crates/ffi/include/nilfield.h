#ifndef NILFIELD_H
#define NILFIELD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  NF_STATUS_OK = 0,
  NF_STATUS_PARSE_ERROR = 1,
  NF_STATUS_PRECONDITION_FAILED = 2,
  NF_STATUS_INTERNAL = 3,
  NF_STATUS_NULL_ARGUMENT = 4,
  NF_STATUS_INVALID_UTF8 = 5,
  NF_STATUS_PANIC = 6,
} NfStatus;

/**
 * Opaque polynomial vector field.
 */
typedef struct NfField NfField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `dx = ...; dy = ...; dz = ...` or `(p1, p2, p3)` into a new handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
NfStatus nf_field_parse(const char *text, NfField **out);

/**
 * # Safety
 * `field` must come from `nf_field_parse` and not be freed twice; null is
 * ignored.
 */
void nf_field_free(NfField *field);

/**
 * Canonical text `dx = ...; dy = ...; dz = ...`.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
NfStatus nf_field_to_string(const NfField *field, char **out);

/**
 * Sets `*is_member` to 1 or 0. When not a member and `witness` is non-null,
 * `*witness` receives the failing quantity; otherwise it is set to null.
 *
 * # Safety
 * `field` must be a live handle; `is_member` must be writable.
 */
NfStatus nf_field_verify(const NfField *field, int32_t *is_member, char **witness);

/**
 * JSON expansion over the A, B, C generators.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
NfStatus nf_field_decompose_json(const NfField *field, char **out);

/**
 * JSON normal form through `max_grade`.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
NfStatus nf_field_normal_form_json(const NfField *field, uint32_t max_grade, char **out);

/**
 * JSON Clebsch pair `{primary, secondary}`.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
NfStatus nf_field_clebsch_json(const NfField *field, char **out);

/**
 * JSON with both vector potentials and f such that radial + ∇f = delta form.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
NfStatus nf_field_vector_potential_json(const NfField *field, char **out);

/**
 * JSON expansion of [B^{l1}_{i1,k1}, B^{l2}_{i2,k2}].
 *
 * # Safety
 * `out` must be writable.
 */
NfStatus nf_bracket_json(int32_t l1,
                         int32_t i1,
                         uint32_t k1,
                         int32_t l2,
                         int32_t i2,
                         uint32_t k2,
                         char **out);

/**
 * Poisson bracket {f, g} as canonical text.
 *
 * # Safety
 * `f` and `g` must be NUL-terminated strings; `out` must be writable.
 */
NfStatus nf_poisson_bracket(const char *f, const char *g, char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice; null is ignored.
 */
void nf_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *nf_last_error(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* NILFIELD_H */
