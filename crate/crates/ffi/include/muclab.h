#ifndef MUCLAB_H
#define MUCLAB_H

#pragma once

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MuclabStatus {
  MUCLAB_STATUS_OK = 0,
  MUCLAB_STATUS_NULL_POINTER = 1,
  MUCLAB_STATUS_INVALID_UTF8 = 2,
  MUCLAB_STATUS_PARSE = 3,
  MUCLAB_STATUS_VARIABLE_OUT_OF_RANGE = 4,
  MUCLAB_STATUS_BUDGET_EXCEEDED = 5,
  MUCLAB_STATUS_CLAUSE_CAP_EXCEEDED = 6,
  MUCLAB_STATUS_NOT_HORN = 7,
  MUCLAB_STATUS_NOT_MUC = 8,
  MUCLAB_STATUS_INPUT_SATISFIABLE = 9,
  MUCLAB_STATUS_INDEX_OUT_OF_RANGE = 10,
  MUCLAB_STATUS_INVALID_ARGUMENT = 11,
  MUCLAB_STATUS_INTERNAL = 12,
} MuclabStatus;

typedef enum MuclabMucMethod {
  MUCLAB_MUC_METHOD_DELETION = 0,
  MUCLAB_MUC_METHOD_CLASSIFICATION = 1,
} MuclabMucMethod;

typedef enum MuclabOrthoMode {
  MUCLAB_ORTHO_MODE_HORN = 0,
  MUCLAB_ORTHO_MODE_GENERIC = 1,
} MuclabOrthoMode;

/**
 * Opaque formula handle.
 */
typedef struct MuclabCnf MuclabCnf;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null.
 *
 * The pointer stays valid until the next library call on this thread.
 */
const char *muclab_last_error(void);

/**
 * Parses DIMACS text (nul-terminated) into a new handle.
 *
 * # Safety
 * `text` must be a valid nul-terminated string and `out` a valid pointer.
 */
enum MuclabStatus muclab_cnf_parse_dimacs(const char *text, struct MuclabCnf **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `cnf` must be null or a handle returned by this library and not yet freed.
 */
void muclab_cnf_free(struct MuclabCnf *cnf);

/**
 * Number of declared variables, or 0 for a null handle.
 *
 * # Safety
 * `cnf` must be null or a live handle.
 */
uint32_t muclab_cnf_num_vars(const struct MuclabCnf *cnf);

/**
 * Number of clauses, or 0 for a null handle.
 *
 * # Safety
 * `cnf` must be null or a live handle.
 */
size_t muclab_cnf_num_clauses(const struct MuclabCnf *cnf);

/**
 * Serializes to DIMACS. Free the result with `muclab_string_free`.
 *
 * # Safety
 * `cnf` must be a live handle and `out` a valid pointer.
 */
enum MuclabStatus muclab_cnf_write_dimacs(const struct MuclabCnf *cnf, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void muclab_string_free(char *s);

/**
 * Writes 1 to `out` when every clause is Horn, else 0.
 *
 * # Safety
 * `cnf` must be a live handle and `out` a valid pointer.
 */
enum MuclabStatus muclab_cnf_is_horn(const struct MuclabCnf *cnf, int *out);

/**
 * Minimal-unsatisfiability check. `budget` of 0 means the default.
 *
 * On success `is_muc` receives 0 or 1. If `verdict_json` is non-null it
 * receives the full verdict as JSON, to be freed with `muclab_string_free`.
 *
 * # Safety
 * `cnf` must be a live handle, `is_muc` valid, `verdict_json` null or valid.
 */
enum MuclabStatus muclab_is_muc(const struct MuclabCnf *cnf,
                                enum MuclabMucMethod method,
                                uint64_t budget,
                                int *is_muc,
                                char **verdict_json);

/**
 * Classification report as JSON. `budget` of 0 means the default.
 *
 * # Safety
 * `cnf` must be a live handle and `out` a valid pointer.
 */
enum MuclabStatus muclab_classify_json(const struct MuclabCnf *cnf, uint64_t budget, char **out);

/**
 * Phase difference between clauses `i` and `j` (0-based).
 *
 * # Safety
 * `cnf` must be a live handle and `out` a valid pointer.
 */
enum MuclabStatus muclab_phase_difference(const struct MuclabCnf *cnf,
                                          size_t i,
                                          size_t j,
                                          size_t *out);

/**
 * Orthogonalizes a formula into a new handle.
 *
 * `clause_cap` bounds the working clause count in generic mode; 0 means
 * the default. It is ignored in Horn mode.
 *
 * # Safety
 * `cnf` must be a live handle and `out` a valid pointer.
 */
enum MuclabStatus muclab_orthogonalize(const struct MuclabCnf *cnf,
                                       enum MuclabOrthoMode mode,
                                       size_t clause_cap,
                                       struct MuclabCnf **out);

/**
 * Writes 1 when every assignment falsifies exactly one clause.
 *
 * # Safety
 * `cnf` must be a live handle and `out` a valid pointer.
 */
enum MuclabStatus muclab_verify_orthogonal_muc(const struct MuclabCnf *cnf,
                                               uint64_t budget,
                                               int *out);

/**
 * Horn chain of length `k`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum MuclabStatus muclab_gen_horn_chain(uint32_t k, struct MuclabCnf **out);

/**
 * Odd and even parity of `n` variables conjoined. Nonzero `disjoint` puts
 * the two halves on separate variables.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum MuclabStatus muclab_gen_parity_contradiction(uint32_t n, int disjoint, struct MuclabCnf **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MUCLAB_H */
