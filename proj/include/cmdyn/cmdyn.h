/*
 * cmdyn: pullback-divisor calculus on CM abelian surfaces, diagonal
 * preperiodicity decisions, and genus-2 Jacobian checks over prime fields.
 *
 * All functions return a cmdyn_status. On failure the thread-local message
 * from cmdyn_last_error() describes the problem; for CMDYN_ERROR_PARSE the
 * position is available from cmdyn_last_error_position(). Strings returned
 * through char** out-parameters are owned by the caller and released with
 * cmdyn_string_free(). Handles are immutable once created and may be shared
 * across threads.
 */
#ifndef CMDYN_CMDYN_H
#define CMDYN_CMDYN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CMDYN_BUILDING_LIBRARY)
#    define CMDYN_API __declspec(dllexport)
#  else
#    define CMDYN_API __declspec(dllimport)
#  endif
#else
#  define CMDYN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cmdyn_status {
  CMDYN_OK = 0,
  CMDYN_ERROR_INVALID_ARGUMENT = 1, /* null pointer, bad enum, precondition violated */
  CMDYN_ERROR_PARSE = 2,            /* malformed identity, element or polynomial */
  CMDYN_ERROR_IO = 3,               /* file could not be read */
  CMDYN_ERROR_UNKNOWN_SCENARIO = 4,
  CMDYN_ERROR_NOT_FOUND = 5,        /* requested value does not exist (e.g. no scalar) */
  CMDYN_ERROR_INTERNAL = 6
} cmdyn_status;

typedef enum cmdyn_ring_kind {
  CMDYN_RING_GAUSSIAN = 0,   /* Z[i] */
  CMDYN_RING_SIXTH_ROOT = 1, /* Z[a], a^2 - a + 1 = 0; j = a - 1 */
  CMDYN_RING_FIFTH_ROOT = 2  /* Z[z], z^4 + z^3 + z^2 + z + 1 = 0 */
} cmdyn_ring_kind;

typedef enum cmdyn_verdict {
  CMDYN_VERDICT_HOLDS = 0,
  CMDYN_VERDICT_HOLDS_UP_TO_TORSION = 1,
  CMDYN_VERDICT_NOT_DERIVABLE = 2
} cmdyn_verdict;

typedef enum cmdyn_format { CMDYN_FORMAT_TEXT = 0, CMDYN_FORMAT_JSON = 1 } cmdyn_format;

typedef struct cmdyn_context cmdyn_context; /* calculus context: ring + invariance units */
typedef struct cmdyn_report cmdyn_report;

typedef struct cmdyn_run_options {
  int has_prime; /* nonzero to override the scenario's default prime */
  uint64_t prime;
  uint64_t seed;
} cmdyn_run_options;

CMDYN_API const char* cmdyn_version(void);
CMDYN_API const char* cmdyn_last_error(void);
CMDYN_API void cmdyn_last_error_position(size_t* line, size_t* column);
CMDYN_API void cmdyn_string_free(char* s);
CMDYN_API cmdyn_status cmdyn_ring_kind_from_name(const char* name, cmdyn_ring_kind* out);

/* Ring elements are passed as expressions such as "2+i" or "(1+z)*(1+z^2)". */
CMDYN_API cmdyn_status cmdyn_ring_normalize(cmdyn_ring_kind ring, const char* element, char** out);
CMDYN_API cmdyn_status cmdyn_ring_norm(cmdyn_ring_kind ring, const char* element, char** out_decimal);
CMDYN_API cmdyn_status cmdyn_is_root_of_unity(cmdyn_ring_kind ring, const char* element, int* out);
CMDYN_API cmdyn_status cmdyn_diagonal_preperiodic(cmdyn_ring_kind ring, const char* phi1, const char* phi2,
                                                  int* out);

/* Context with every root of unity of the ring as invariance unit. */
CMDYN_API cmdyn_status cmdyn_context_create(cmdyn_ring_kind ring, cmdyn_context** out);
/* Context with an explicit unit set (must contain -1, be closed, consist of units). */
CMDYN_API cmdyn_status cmdyn_context_create_with_units(cmdyn_ring_kind ring, const char* const* units,
                                                       size_t count, cmdyn_context** out);
CMDYN_API void cmdyn_context_destroy(cmdyn_context* ctx);

/* torsion_order receives 1 for HOLDS, the order of the difference for
 * HOLDS_UP_TO_TORSION and 0 otherwise; it may be null. */
CMDYN_API cmdyn_status cmdyn_verify_identity(const cmdyn_context* ctx, const char* identity, cmdyn_verdict* out,
                                             uint64_t* torsion_order);
/* CMDYN_ERROR_NOT_FOUND when [a]*D is not a positive multiple of D. */
CMDYN_API cmdyn_status cmdyn_polarization_scalar(const cmdyn_context* ctx, const char* element,
                                                 char** out_decimal);
/* Certificate for "[a]*D ~ k D, k >= 1" as JSON {"s","t","equation","solutions","refuted"}. */
CMDYN_API cmdyn_status cmdyn_refute_scalar_hypothesis(const cmdyn_context* ctx, const char* alpha,
                                                      const char* beta, char** out_json);
/* Canonical reduced class of [a]*D, e.g. "2*q(1)". */
CMDYN_API cmdyn_status cmdyn_reduce_pullback(const cmdyn_context* ctx, const char* element, char** out);

/* Reports. options may be null (defaults: scenario prime, seed 1). */
CMDYN_API cmdyn_status cmdyn_run_scenario(const char* name, const cmdyn_run_options* options,
                                          cmdyn_report** out);
/* ring may be null when the file selects rings with "ring:" headers. */
CMDYN_API cmdyn_status cmdyn_verify_file(const char* path, const char* ring, const cmdyn_run_options* options,
                                         cmdyn_report** out);
CMDYN_API cmdyn_status cmdyn_jacobian_check(const char* curve, uint64_t prime, uint64_t seed, cmdyn_report** out);
CMDYN_API int cmdyn_report_passed(const cmdyn_report* report);
CMDYN_API size_t cmdyn_report_failures(const cmdyn_report* report);
CMDYN_API cmdyn_status cmdyn_report_render(const cmdyn_report* report, cmdyn_format format, char** out);
CMDYN_API void cmdyn_report_destroy(cmdyn_report* report);

/* Names of the built-in scenarios, comma separated. */
CMDYN_API const char* cmdyn_scenario_names(void);

#ifdef __cplusplus
}
#endif

#endif /* CMDYN_CMDYN_H */
