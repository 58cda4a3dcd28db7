/* nilaw — finite-group nilpotency-law workbench, C API.
 *
 * The library is consumed through opaque handles and status codes. Every
 * operation that produces output writes a JSON report (and, for replay, a
 * certificate bundle) into a heap string owned by the caller; release it
 * with nilaw_string_free(). Status codes double as the CLI exit codes.
 *
 * Thread safety: a nilaw_group handle is immutable after creation and may be
 * shared across threads. nilaw_last_error() is thread-local.
 */
#ifndef NILAW_H
#define NILAW_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define NILAW_API __declspec(dllexport)
#else
#define NILAW_API __attribute__((visibility("default")))
#endif

#define NILAW_VERSION_STRING "0.1.0"

typedef struct nilaw_group nilaw_group;

typedef enum nilaw_status {
  NILAW_OK = 0,
  NILAW_VERIFY_MISMATCH = 1, /* certificate re-verification found a mismatch */
  NILAW_INVALID = 2,         /* bad arguments, parse errors, budget exceeded */
  NILAW_SOUNDNESS = 3,       /* theorem-guaranteed invariant failed: a bug   */
  NILAW_INTERNAL = 4
} nilaw_status;

NILAW_API const char* nilaw_version(void);

/* Message for the last failing call on this thread ("" if none). */
NILAW_API const char* nilaw_last_error(void);

NILAW_API void nilaw_string_free(char* s);

/* ---- groups ----------------------------------------------------------- */

/* Spec grammar: family(params) joined by infix "x", e.g. "symmetric(3)",
 * "heisenberg(3) x S3". order_cap <= 0 picks the default (2048). */
NILAW_API nilaw_status nilaw_group_create(const char* spec, long order_cap, nilaw_group** out);

/* origin, when non-NULL, is echoed as the group's spec in reports. */
NILAW_API nilaw_status nilaw_group_from_cayley(const char* text, const char* origin,
                                               long order_cap, nilaw_group** out);
NILAW_API nilaw_status nilaw_group_from_permutations(const char* text, const char* origin,
                                                     long order_cap, nilaw_group** out);

NILAW_API void nilaw_group_destroy(nilaw_group* g);
NILAW_API long nilaw_group_order(const nilaw_group* g);
NILAW_API const char* nilaw_group_name(const nilaw_group* g);
NILAW_API nilaw_status nilaw_group_cayley(const nilaw_group* g, char** out_text);
NILAW_API nilaw_status nilaw_group_info(const nilaw_group* g, char** out_report);

/* ---- budgets ----------------------------------------------------------- */

/* Built-in default budget for "density" (prefix op count), "sweep"
 * (verify-lemma / search instance count) or "replay" (witness bitset bits). */
NILAW_API uint64_t nilaw_default_budget(const char* operation);

/* 1 iff |G|^(2*arity) <= budget, i.e. an exhaustive sweep is allowed. */
NILAW_API int nilaw_exhaustive_feasible(const nilaw_group* g, int arity, uint64_t budget);

/* ---- operations (reports are JSON text) -------------------------------- */

NILAW_API nilaw_status nilaw_catalog_list(char** out_report);

NILAW_API nilaw_status nilaw_density_exact(const nilaw_group* g, int k, uint64_t budget,
                                           int workers, char** out_report);
NILAW_API nilaw_status nilaw_density_sampled(const nilaw_group* g, int k, uint64_t samples,
                                             uint64_t seed, int workers, char** out_report);

/* pattern_text NULL selects the canonical right pattern. A violation of the
 * canonical right pattern yields NILAW_SOUNDNESS (report still written). */
NILAW_API nilaw_status nilaw_lemma_verify_exhaustive(const nilaw_group* g,
                                                     const char* pattern_text, uint64_t budget,
                                                     int workers, char** out_report);
NILAW_API nilaw_status nilaw_lemma_verify_randomized(const nilaw_group* g,
                                                     const char* pattern_text, uint64_t trials,
                                                     uint64_t seed, int workers,
                                                     char** out_report);

NILAW_API nilaw_status nilaw_proof_identities(const nilaw_group* g, int workers,
                                              char** out_report);

/* seed may be NULL for exhaustive runs; sampling without a seed is refused. */
NILAW_API nilaw_status nilaw_search_left(const nilaw_group* g, uint64_t budget, uint64_t trials,
                                         const uint64_t* seed, int workers, char** out_report);
NILAW_API nilaw_status nilaw_search_length4(const nilaw_group* g, const char* pattern_text,
                                            uint64_t budget, uint64_t trials,
                                            const uint64_t* seed, int workers,
                                            char** out_report);

/* out_certificate may be NULL when the bundle is not wanted. */
NILAW_API nilaw_status nilaw_replay(const nilaw_group* g, uint64_t budget, int workers,
                                    char** out_report, char** out_certificate);

/* Returns NILAW_VERIFY_MISMATCH (= exit code 1) on the first failing item;
 * the report names it. */
NILAW_API nilaw_status nilaw_verify_certificate(const nilaw_group* g,
                                                const char* certificate_text,
                                                char** out_report);

#ifdef __cplusplus
}
#endif

#endif /* NILAW_H */
