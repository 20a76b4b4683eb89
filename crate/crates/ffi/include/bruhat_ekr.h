#ifndef BRUHAT_EKR_H
#define BRUHAT_EKR_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BruhatStatus {
  BRUHAT_STATUS_OK = 0,
  BRUHAT_STATUS_NULL_POINTER = 1,
  BRUHAT_STATUS_INVALID_ARGUMENT = 2,
  BRUHAT_STATUS_PARSE = 3,
  BRUHAT_STATUS_OUT_OF_RANGE = 4,
  BRUHAT_STATUS_TOO_LARGE = 5,
  BRUHAT_STATUS_OVERFLOW = 6,
  BRUHAT_STATUS_PANIC = 7,
} BruhatStatus;

typedef struct BruhatOutcome BruhatOutcome;

typedef struct BruhatPerm BruhatPerm;

typedef struct BruhatPoly BruhatPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Owned by the
 * library.
 */
const char *bruhat_last_error(void);

void bruhat_string_free(char *s);

/**
 * Parses `"3142"` or `"1,2,10,3,..."`.
 */
enum BruhatStatus bruhat_perm_parse(const char *word, struct BruhatPerm **out);

enum BruhatStatus bruhat_perm_identity(size_t n, struct BruhatPerm **out);

void bruhat_perm_free(struct BruhatPerm *p);

enum BruhatStatus bruhat_perm_size(const struct BruhatPerm *p, size_t *out);

/**
 * Number of inversions.
 */
enum BruhatStatus bruhat_perm_rank(const struct BruhatPerm *p, size_t *out);

enum BruhatStatus bruhat_perm_to_string(const struct BruhatPerm *p, char **out);

/**
 * Inverse-descent set as a bit mask: bit `i - 1` is generator `i`.
 */
enum BruhatStatus bruhat_perm_inverse_descents(const struct BruhatPerm *p, uint32_t *out);

enum BruhatStatus bruhat_perm_meet(const struct BruhatPerm *p,
                                   const struct BruhatPerm *q,
                                   struct BruhatPerm **out);

enum BruhatStatus bruhat_perm_join(const struct BruhatPerm *p,
                                   const struct BruhatPerm *q,
                                   struct BruhatPerm **out);

enum BruhatStatus bruhat_perm_leq(const struct BruhatPerm *p,
                                  const struct BruhatPerm *q,
                                  bool *out);

/**
 * Reverses the word.
 */
enum BruhatStatus bruhat_perm_reverse_complement(const struct BruhatPerm *p,
                                                 struct BruhatPerm **out);

/**
 * Minimal permutation of `Sym(n)` whose inverse descents contain `bits`.
 */
enum BruhatStatus bruhat_pi_minimal(size_t n, uint32_t bits, struct BruhatPerm **out);

/**
 * `|B_ell(n)|`, read from `[n]!`.
 */
enum BruhatStatus bruhat_level_count(size_t n, size_t ell, uint64_t *out);

/**
 * Rank-`ell` permutations of `Sym(n)` whose inverse-descent mask is exactly `bits`.
 */
enum BruhatStatus bruhat_multiplicity(size_t n, uint32_t bits, size_t ell, uint64_t *out);

enum BruhatStatus bruhat_rho(size_t n, size_t t, struct BruhatPerm **out);

/**
 * `[n]!` as a polynomial handle.
 */
enum BruhatStatus bruhat_q_factorial(size_t n, struct BruhatPoly **out);

void bruhat_poly_free(struct BruhatPoly *p);

/**
 * Degree, or -1 for the zero polynomial.
 */
enum BruhatStatus bruhat_poly_degree(const struct BruhatPoly *p, int64_t *out);

/**
 * Coefficient of `x^k` in decimal.
 */
enum BruhatStatus bruhat_poly_coeff(const struct BruhatPoly *p, size_t k, char **out);

/**
 * Coefficient array as JSON.
 */
enum BruhatStatus bruhat_poly_to_json(const struct BruhatPoly *p, char **out);

/**
 * Largest `t`-intersecting family in `B_r(n)`. `max_nodes == 0` and
 * `max_secs <= 0` mean unlimited. An exhausted budget still returns an
 * outcome, with `optimal` false.
 */
enum BruhatStatus bruhat_search_level(size_t n,
                                      size_t r,
                                      size_t t,
                                      uint64_t max_nodes,
                                      double max_secs,
                                      struct BruhatOutcome **out);

void bruhat_outcome_free(struct BruhatOutcome *o);

enum BruhatStatus bruhat_outcome_optimum(const struct BruhatOutcome *o, uint64_t *out);

enum BruhatStatus bruhat_outcome_optimal(const struct BruhatOutcome *o, bool *out);

enum BruhatStatus bruhat_outcome_is_star(const struct BruhatOutcome *o, bool *out);

enum BruhatStatus bruhat_outcome_to_json(const struct BruhatOutcome *o, char **out);

/**
 * Runs a verification suite by tag. Negative parameters select the suite
 * default. `exit_code` receives 0 (pass or consistent), 1 (failure) or 3
 * (budget).
 */
enum BruhatStatus bruhat_verify_json(const char *tag,
                                     int64_t n,
                                     int64_t r,
                                     int64_t t,
                                     int64_t m,
                                     int64_t k,
                                     char **out_json,
                                     int32_t *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRUHAT_EKR_H */
