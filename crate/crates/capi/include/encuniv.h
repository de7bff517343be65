/* C interface to the encuniv universal-control analysis toolkit. */

#ifndef ENCUNIV_H
#define ENCUNIV_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every fallible call.
typedef enum EncStatus {
  ENC_STATUS_OK = 0,
  // A required pointer argument was null.
  ENC_STATUS_NULL_ARGUMENT = 1,
  // An input string was not valid UTF-8.
  ENC_STATUS_INVALID_UTF8 = 2,
  // Malformed input: JSON, schema, shapes, or non-Hermitian matrices.
  ENC_STATUS_SCHEMA = 3,
  // The numerical pipeline failed (genericity, convergence, invariance).
  ENC_STATUS_NUMERICAL = 4,
  // A closure budget was exhausted.
  ENC_STATUS_BUDGET = 5,
  // Index out of range.
  ENC_STATUS_OUT_OF_RANGE = 6,
} EncStatus;

// Parsed problem file (opaque).
typedef struct EncProblem EncProblem;

// Analysis outcome (opaque).
typedef struct EncReport EncReport;

// Per-component verdict, plain-old-data for direct C consumption.
typedef struct EncComponent {
  uint64_t label;
  uint64_t d;
  uint64_t n;
  uint64_t restricted_dim;
  uint64_t deficiency;
  bool universal;
  bool trivial_code;
} EncComponent;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Returns the message of the last error raised on this thread, or an empty
// string when no error has occurred.
const char *enc_last_error_message(void);

// Library version as a static string.
const char *enc_version(void);

// Parses and validates a problem-file JSON document.
//
// # Safety
// `json` must be a valid NUL-terminated string and `out` a valid pointer.
enum EncStatus enc_problem_parse_json(const char *json, struct EncProblem **out);

// Releases a problem handle. A null pointer is a no-op.
//
// # Safety
// `p` must come from `enc_problem_parse_json` and not be freed twice.
void enc_problem_free(struct EncProblem *p);

// Runs the Hamiltonian analysis pipeline with default tolerances.
//
// # Safety
// `problem` and `out` must be valid pointers.
enum EncStatus enc_analyze(const struct EncProblem *problem, uint64_t seed, struct EncReport **out);

// Closes the finite group from the problem's `group_generators` and runs
// the generic group-algebra pipeline.
//
// # Safety
// `problem` and `out` must be valid pointers.
enum EncStatus enc_group_analyze(const struct EncProblem *problem,
                                 uint64_t seed,
                                 uint32_t samples,
                                 uint64_t max_order,
                                 struct EncReport **out);

// Releases a report handle. A null pointer is a no-op.
//
// # Safety
// `r` must come from an analyze call and not be freed twice.
void enc_report_free(struct EncReport *r);

// Dimension of the generated dynamical Lie algebra.
//
// # Safety
// `r` must be a valid report handle.
uint64_t enc_report_closure_dim(const struct EncReport *r);

// Number of isotypic components in the decomposition.
//
// # Safety
// `r` must be a valid report handle.
uint64_t enc_report_component_count(const struct EncReport *r);

// Copies the verdict for component `index` into `out`.
//
// # Safety
// `r` and `out` must be valid pointers.
enum EncStatus enc_report_component(const struct EncReport *r,
                                    uint64_t index,
                                    struct EncComponent *out);

// Whether the closure is dense in the full (special) unitary group.
//
// # Safety
// `r` must be a valid report handle.
bool enc_report_globally_universal(const struct EncReport *r);

// Group order recorded by the group pipeline, or 0 for plain analysis.
//
// # Safety
// `r` must be a valid report handle.
uint64_t enc_report_group_order(const struct EncReport *r);

// Serializes the report document; the returned string is owned by the
// caller and released with `enc_string_free`.
//
// # Safety
// `r` and `out` must be valid pointers.
enum EncStatus enc_report_to_json(const struct EncReport *r, char **out);

// Releases a string returned by this library. A null pointer is a no-op.
//
// # Safety
// `s` must come from this library and not be freed twice.
void enc_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ENCUNIV_H */
