#ifndef RICF_H
#define RICF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every exported function.
typedef enum RicfStatus {
  RICF_STATUS_OK = 0,
  RICF_STATUS_NULL_POINTER = 1,
  RICF_STATUS_INVALID_UTF8 = 2,
  RICF_STATUS_EMPTY_CORPUS = 3,
  RICF_STATUS_OUT_OF_RANGE = 4,
  RICF_STATUS_DOMAIN = 5,
  RICF_STATUS_INFEASIBLE = 6,
  RICF_STATUS_ZERO_PROBABILITY = 7,
  RICF_STATUS_UNKNOWN_MEASURE = 8,
  RICF_STATUS_BUFFER_TOO_SMALL = 9,
  RICF_STATUS_INTERNAL = 10,
} RicfStatus;

// Opaque term-document matrix.
typedef struct RicfMatrix RicfMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The pointer is
// valid until the next failing call on the same thread.
const char *ricf_last_error_message(void);

// Builds a matrix from canonical dump text (NUL-terminated UTF-8).
//
// # Safety
// `text` must be a valid C string and `out` a valid pointer.
enum RicfStatus ricf_matrix_from_dump(const char *text, struct RicfMatrix **out);

// Releases a matrix. NULL is ignored.
//
// # Safety
// `matrix` must come from [`ricf_matrix_from_dump`] and not be used afterwards.
void ricf_matrix_free(struct RicfMatrix *matrix);

// Vocabulary size `m`, document count `d` and token count `n`.
//
// # Safety
// All pointers must be valid.
enum RicfStatus ricf_matrix_sizes(const struct RicfMatrix *matrix,
                                  uintptr_t *num_terms,
                                  uintptr_t *num_docs,
                                  uint64_t *total);

// Term id of `term`.
//
// # Safety
// `term` must be a valid C string and `out` a valid pointer.
enum RicfStatus ricf_matrix_term_id(const struct RicfMatrix *matrix,
                                    const char *term,
                                    uintptr_t *out);

// Copies term `id` as a NUL-terminated string into `buf`. `len_out` receives
// the string length without the terminator, also when the buffer is too small.
//
// # Safety
// `buf` must point to `capacity` writable bytes; `len_out` must be valid.
enum RicfStatus ricf_matrix_term(const struct RicfMatrix *matrix,
                                 uintptr_t id,
                                 char *buf,
                                 uintptr_t capacity,
                                 uintptr_t *len_out);

// Scores every term with `measure` (`chi_sq`, `cg`, `icb`, `dop` or `ricf`),
// writing `scores[i]` for term id `i`. `len` must equal the vocabulary size.
//
// # Safety
// `measure` must be a valid C string and `scores` point to `len` doubles.
enum RicfStatus ricf_score(const struct RicfMatrix *matrix,
                           const char *measure,
                           double *scores,
                           uintptr_t len);

// Expected ICF of a term with probability `theta` in `n` tokens.
//
// # Safety
// `out` must be valid.
enum RicfStatus ricf_expected_icf(double theta, uint64_t n, double *out);

// Expected IDF of a term with probability `theta` for the given document sizes.
//
// # Safety
// `sizes` must point to `num_docs` values and `out` be valid.
enum RicfStatus ricf_expected_idf(double theta,
                                  const uint64_t *sizes,
                                  uintptr_t num_docs,
                                  double *out);

// Term probability whose expected IDF on this matrix equals `idf`.
// `clamped` is set to 1 when no root exists in the bracket.
//
// # Safety
// `theta` and `clamped` must be valid.
enum RicfStatus ricf_estimate_theta(const struct RicfMatrix *matrix,
                                    double idf,
                                    double *theta,
                                    int *clamped);

// Exact `Pr(N >= n_i | B = b_i)` for the focus term of a toy model by full
// enumeration, refused with `INFEASIBLE` beyond `max_states` matrices.
//
// # Safety
// `thetas` must point to `num_terms` values, `sizes` to `num_docs` values,
// and `out` must be valid.
enum RicfStatus ricf_exact_tail(const double *thetas,
                                uintptr_t num_terms,
                                const uint64_t *sizes,
                                uintptr_t num_docs,
                                uintptr_t focus,
                                uint64_t n_i,
                                uint64_t b_i,
                                uint64_t max_states,
                                double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RICF_H */
