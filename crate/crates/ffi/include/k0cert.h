#ifndef K0CERT_H
#define K0CERT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum K0Status {
  K0_STATUS_OK = 0,
  K0_STATUS_NULL_POINTER = 1,
  K0_STATUS_INVALID_UTF8 = 2,
  K0_STATUS_INVALID_DOCUMENT = 3,
  K0_STATUS_INVALID_ARGUMENT = 4,
  K0_STATUS_INTERNAL = 5,
} K0Status;

typedef enum K0Verdict {
  K0_VERDICT_VIOLATION = 0,
  K0_VERDICT_CONSISTENT = 1,
  K0_VERDICT_UNKNOWN = 2,
} K0Verdict;

/**
 * Parsed, validated document.
 */
typedef struct K0Document K0Document;

/**
 * Search box for `k0c_check_mf` and `k0c_chain_recurrence`.
 */
typedef struct K0Params {
  size_t max_stage;
  size_t word_length;
  uint64_t height_bound;
} K0Params;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Default search box.
 */
struct K0Params k0c_params_default(void);

/**
 * Parses a NUL-terminated JSON document into `*out`.
 *
 * # Safety
 * `json` must be a valid C string; `out` must be writable.
 */
enum K0Status k0c_document_parse(const char *json, struct K0Document **out);

/**
 * # Safety
 * `doc` must come from `k0c_document_parse` and not be freed twice.
 */
void k0c_document_free(struct K0Document *doc);

/**
 * Canonical JSON of the document.
 *
 * # Safety
 * `doc` must be a live handle; `out_json` must be writable.
 */
enum K0Status k0c_document_serialize(const struct K0Document *doc, char **out_json);

/**
 * Number of action generators.
 *
 * # Safety
 * `doc` must be a live handle; `out` must be writable.
 */
enum K0Status k0c_document_generators(const struct K0Document *doc, size_t *out);

/**
 * Checks the action up to `horizon`. `*out_valid` receives the outcome;
 * `out_report` (nullable) receives one line per check.
 *
 * # Safety
 * `doc` must be a live handle; output pointers must be writable or null
 * where allowed.
 */
enum K0Status k0c_validate(const struct K0Document *doc,
                           size_t horizon,
                           bool *out_valid,
                           char **out_report);

/**
 * Runs the full check. `sets_json` (nullable) holds state requests;
 * `out_json` (nullable) receives the canonical verdict.
 *
 * # Safety
 * Pointers must be valid as described; `params` must not be null.
 */
enum K0Status k0c_check_mf(const struct K0Document *doc,
                           const struct K0Params *params,
                           const char *sets_json,
                           enum K0Verdict *out_verdict,
                           char **out_json);

/**
 * Compression search for one-generator actions. `*out_found` is true when
 * a proved witness exists.
 *
 * # Safety
 * Pointers must be valid as described; `params` must not be null.
 */
enum K0Status k0c_chain_recurrence(const struct K0Document *doc,
                                   const struct K0Params *params,
                                   bool *out_found,
                                   char **out_json);

/**
 * Builds a document from whitespace-separated `points=N perms=...` arguments.
 *
 * # Safety
 * `args` must be a valid C string; `out_json` must be writable.
 */
enum K0Status k0c_convert_finite(const char *args, char **out_json);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void k0c_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *k0c_last_error(void);

/**
 * Static description of a status code.
 */
const char *k0c_status_message(enum K0Status status);

/**
 * Library version as a static C string.
 */
const char *k0c_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* K0CERT_H */
