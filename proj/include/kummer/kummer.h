/* C interface to libkummer: exact arithmetic in Q(zeta_N, a^(1/N)), rigorous
 * house/mean-square measures, the tower discriminant Delta_a(N), minimal
 * representation counts, and the verification suites.
 *
 * All objects are opaque handles. Functions return KMR_OK or an error code;
 * kmr_last_error() describes the most recent failure on the calling thread.
 * Strings returned through char** are heap-allocated; release them with
 * kmr_string_free(). Exact rationals cross the boundary as decimal "p/q"
 * strings, structured results as JSON.
 */

#ifndef KUMMER_KUMMER_H
#define KUMMER_KUMMER_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct kmr_algebra kmr_algebra;
typedef struct kmr_element kmr_element;

typedef enum kmr_status {
  KMR_OK = 0,
  KMR_ERR_INVALID_ARGUMENT = 1,
  KMR_ERR_PERFECT_POWER_RADICAND = 2,
  KMR_ERR_MIXED_ALGEBRA = 3,
  KMR_ERR_DIMENSION_MISMATCH = 4,
  KMR_ERR_PARSE = 5,
  KMR_ERR_NOT_IN_SPAN = 6,
  KMR_ERR_EXHAUSTED = 7,
  KMR_ERR_NONCONVERGENCE = 8,
  KMR_ERR_DOMAIN = 9,
  KMR_ERR_SEARCH_EXHAUSTED = 10,
  KMR_ERR_UNKNOWN_SUITE = 11,
  KMR_ERR_INTERNAL = 12
} kmr_status;

typedef enum kmr_field_status {
  KMR_FIELD_CERTIFIED = 0,
  KMR_FIELD_DEGREE_DROP = 1,
  KMR_FIELD_UNVERIFIED = 2
} kmr_field_status;

const char* kmr_version(void);

/* Message for the last error on this thread (empty string if none). */
const char* kmr_last_error(void);

void kmr_string_free(char* s);

/* ---- algebras ---- */

/* a >= 1 (a == 1 or not a perfect power), N >= 1. */
kmr_status kmr_algebra_create(uint64_t a, uint64_t n, kmr_algebra** out);
void kmr_algebra_destroy(kmr_algebra* alg);

uint64_t kmr_algebra_a(const kmr_algebra* alg);
uint64_t kmr_algebra_n(const kmr_algebra* alg);
uint64_t kmr_algebra_phi(const kmr_algebra* alg);
uint64_t kmr_algebra_dim(const kmr_algebra* alg);
kmr_field_status kmr_algebra_field_status(const kmr_algebra* alg);

/* {"a":..,"n":..,"phi":..,"dim":..,"factorization":[[p,e],..],
 *  "field_status":"...", "cyclotomic":"..."} */
kmr_status kmr_algebra_info_json(const kmr_algebra* alg, char** json_out);

/* Exact Delta_a(N) as a decimal integer string (cached per algebra). */
kmr_status kmr_delta(const kmr_algebra* alg, char** decimal_out);

/* ---- elements ---- */

/* Grammar: integers, rationals p/q, z (= zeta_N), r (= a^(1/N)), + - * / ^,
 * parentheses; division only by rational constants. */
kmr_status kmr_element_parse(const kmr_algebra* alg, const char* expr, kmr_element** out);
void kmr_element_destroy(kmr_element* e);
kmr_status kmr_element_to_string(const kmr_element* e, char** out);

/* Embedding values: {"prec":..,"values":[{"l":..,"k":..,"re":"..","im":"..",
 * "radius":".."}, ...]} (midpoints as decimal strings, radius exact "p/q"). */
kmr_status kmr_element_eval_json(const kmr_element* e, long precision_bits, char** out);

/* house / mean-square enclosures at tolerance 2^-tol_bits:
 * {"house":{"low":"p/q","high":"p/q"},"msq":{...},"precision_bits":..,
 *  "field_status":"..."} */
kmr_status kmr_element_measure_json(const kmr_element* e, long tol_bits, char** out);

/* Minimal representation of Delta_a(N)*e with at most `bound` terms:
 * {"status":"found|not_in_span|exhausted","count":..,
 *  "witness":[{"sign":..,"i":..,"j":..,"mult":..},...]} */
kmr_status kmr_element_minrep_json(const kmr_element* e, unsigned bound, char** out);

/* Decomposition over the tower step ending at prime p (the step's top level
 * must be N): {"p":..,"t":..,"n_sub":..,"n_top":..,"scale":"p/q",
 *  "coefficients":[{"l":..,"k":..,"value":"expr"},...],"integral":bool} */
kmr_status kmr_element_decompose_json(const kmr_element* e, uint64_t p, char** out);

/* ---- verification suites ---- */

/* params_json: flat string map, e.g. {"a":"2","n":"6","n1":"2"}.
 * format: 0 = JSON report, 1 = CSV (one row per trial). */
kmr_status kmr_verify(const char* suite_id, const char* params_json, uint64_t trials,
                      uint64_t seed, int format, char** out);

/* Exit-code suggestion for a report produced by kmr_verify: 0 all-pass,
 * 1 conclusive failure in an oracle-mode suite, 3 inconclusive-only. */
kmr_status kmr_report_exit_code(const char* report_json, int* out);

/* Derived bound constants: {"k":"..","delta":"..","c1":"..","c2":"..",
 *  "c3":"..."|null,"c4":...,"search_cap":"..","precision_bits":..,notes} */
kmr_status kmr_derive_constants_json(const char* k, const char* delta, const char* cap,
                                     char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* KUMMER_KUMMER_H */
