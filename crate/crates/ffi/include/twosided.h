#ifndef TWOSIDED_H
#define TWOSIDED_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. Zero is success.
typedef enum TsStatus {
  TS_STATUS_OK = 0,
  TS_STATUS_NULL_POINTER = 1,
  TS_STATUS_INVALID_UTF8 = 2,
  TS_STATUS_PARSE_ERROR = 3,
  TS_STATUS_DIMENSION_MISMATCH = 4,
  TS_STATUS_NOT_SQUARE = 5,
  TS_STATUS_ZERO_DENOMINATOR = 6,
  // A correctly detected negative answer: no inverse, no solution.
  TS_STATUS_SINGULAR = 7,
  TS_STATUS_INVALID_ARGUMENT = 8,
  // Two computations that must agree did not.
  TS_STATUS_DISAGREEMENT = 9,
  TS_STATUS_PANIC = 10,
} TsStatus;

// Opaque matrix handle.
typedef struct TsMatrix TsMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *ts_last_error_message(void);

// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void ts_string_free(char *s);

// # Safety
// `m` must be NULL or a handle returned by this library, not yet freed.
void ts_matrix_free(struct TsMatrix *m);

// Parses the text matrix format (`rows cols` header, then rows of rational
// literals).
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum TsStatus ts_matrix_parse(const char *text, struct TsMatrix **out);

// Builds a matrix from row-major numerator and denominator arrays of
// length `rows * cols`. `denominators` may be NULL for integer matrices.
//
// # Safety
// The arrays must hold `rows * cols` readable elements; `out` must be writable.
enum TsStatus ts_matrix_from_i64(size_t rows,
                                 size_t cols,
                                 const int64_t *numerators,
                                 const int64_t *denominators,
                                 struct TsMatrix **out);

// The `n x n` identity. Never fails.
struct TsMatrix *ts_matrix_identity(size_t n);

// # Safety
// `m` must be a live handle or NULL (which yields 0).
size_t ts_matrix_rows(const struct TsMatrix *m);

// # Safety
// `m` must be a live handle or NULL (which yields 0).
size_t ts_matrix_cols(const struct TsMatrix *m);

// Canonical string of entry `(i, j)`, e.g. `"-1/2"`.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum TsStatus ts_matrix_entry(const struct TsMatrix *m, size_t i, size_t j, char **out);

// Renders the matrix in the text file format.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum TsStatus ts_matrix_to_string(const struct TsMatrix *m, char **out);

// Entrywise equality; false if either handle is NULL.
//
// # Safety
// Handles must be live or NULL.
bool ts_matrix_equal(const struct TsMatrix *a, const struct TsMatrix *b);

// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum TsStatus ts_matrix_mul(const struct TsMatrix *a,
                            const struct TsMatrix *b,
                            struct TsMatrix **out);

// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum TsStatus ts_matrix_sub(const struct TsMatrix *a,
                            const struct TsMatrix *b,
                            struct TsMatrix **out);

// Reduced row-echelon form and rank. `out_reduced` may be NULL when only
// the rank is wanted.
//
// # Safety
// `m` must be a live handle; `out_rank` must be writable.
enum TsStatus ts_rref(const struct TsMatrix *m, struct TsMatrix **out_reduced, size_t *out_rank);

// Right inverse `X` with `AX = I`. Returns [`TsStatus::Singular`] when
// none exists, with `*out_first_infeasible` (if non-NULL) set to the
// smallest `i` for which `Ax = e_i` has no solution.
//
// # Safety
// `a` must be a live handle; `out` must be writable.
enum TsStatus ts_right_inverse(const struct TsMatrix *a,
                               struct TsMatrix **out,
                               size_t *out_first_infeasible);

// Computes `AB == I` and `BA == I` independently.
//
// # Safety
// `a`, `b` must be live handles; both output pointers must be writable.
enum TsStatus ts_two_sided_check(const struct TsMatrix *a,
                                 const struct TsMatrix *b,
                                 bool *out_ab_is_identity,
                                 bool *out_ba_is_identity);

// Solves `Ax = b` where `b` is a single-column matrix. Writes the JSON
// report (same schema as the CLI's `solve --json`). Returns
// [`TsStatus::Singular`] for an infeasible system, still writing the report.
//
// # Safety
// `a`, `b` must be live handles; `out_json` must be writable.
enum TsStatus ts_solve_json(const struct TsMatrix *a, const struct TsMatrix *b, char **out_json);

// Evaluates the invertible matrix theorem statements. Writes the JSON
// report (same schema as the CLI's `imt --json`) when `out_json` is
// non-NULL, and whether the matrix is invertible when `out_invertible` is
// non-NULL. Returns [`TsStatus::Disagreement`] if the statements disagree.
//
// # Safety
// `a` must be a live handle; non-NULL outputs must be writable.
enum TsStatus ts_imt_report_json(const struct TsMatrix *a,
                                 size_t probes,
                                 uint64_t seed,
                                 bool *out_invertible,
                                 char **out_json);

// Seeded random invertible `n x n` matrix with default generator settings.
//
// # Safety
// `out` must be writable.
enum TsStatus ts_generate_invertible(uint64_t seed, size_t n, struct TsMatrix **out);

// Seeded random `n x n` matrix of rank exactly `rank`.
//
// # Safety
// `out` must be writable.
enum TsStatus ts_generate_with_rank(uint64_t seed, size_t n, size_t rank, struct TsMatrix **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TWOSIDED_H */
