#ifndef ZETAVALS_H
#define ZETAVALS_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes for every entry point.
 */
typedef enum ZvStatus {
  ZV_STATUS_OK = 0,
  /**
   * A pointer argument was null or not valid UTF-8.
   */
  ZV_STATUS_NULL_POINTER = 1,
  /**
   * Malformed request: unknown name, bad JSON, bad flag value.
   */
  ZV_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Input outside an operation's mathematical domain.
   */
  ZV_STATUS_DOMAIN_ERROR = 3,
  /**
   * Arithmetically inconsistent input data.
   */
  ZV_STATUS_VALIDATION_ERROR = 4,
  /**
   * The enumeration budget would be exceeded.
   */
  ZV_STATUS_BUDGET_EXCEEDED = 5,
  /**
   * The request is outside what the catalog supports.
   */
  ZV_STATUS_UNSUPPORTED = 6,
  /**
   * A mathematical check ran and failed.
   */
  ZV_STATUS_CHECK_FAILED = 7,
  /**
   * Internal invariant violation; a bug, not bad input.
   */
  ZV_STATUS_INTERNAL_ERROR = 8,
} ZvStatus;

/**
 * Opaque scheme handle.
 */
typedef struct ZvScheme ZvScheme;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *zv_version(void);

/**
 * Human-readable name for a status code; static, do not free.
 */
const char *zv_status_name(enum ZvStatus status);

/**
 * Frees a string allocated by this library.
 *
 * # Safety
 * `s` must be a string returned by this library (or null) and must not
 * be used afterwards.
 */
void zv_string_free(char *s);

/**
 * Creates a scheme handle from a catalog name (`P2`, `E:1,0`, ...).
 *
 * # Safety
 * `name` must be a valid NUL-terminated string; `out` must be a valid
 * pointer.
 */
enum ZvStatus zv_scheme_from_catalog(const char *name, struct ZvScheme **out);

/**
 * Creates a scheme handle from descriptor JSON (the same schema the CLI
 * and the library use).
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `out` must be valid.
 */
enum ZvStatus zv_scheme_from_json(const char *json, struct ZvScheme **out);

/**
 * Serializes a scheme handle back to descriptor JSON.
 *
 * # Safety
 * `scheme` must be a live handle from this library; `out` must be valid.
 */
enum ZvStatus zv_scheme_to_json(const struct ZvScheme *scheme, char **out);

/**
 * Releases a scheme handle.
 *
 * # Safety
 * `scheme` must be a handle from this library or null; it must not be
 * used afterwards.
 */
void zv_scheme_free(struct ZvScheme *scheme);

/**
 * Exact `#X(F_{p^k})` as a decimal string.
 *
 * # Safety
 * `scheme` must be a live handle; `out` must be valid.
 */
enum ZvStatus zv_count_points(const struct ZvScheme *scheme,
                              uint64_t p,
                              uint32_t k,
                              uint64_t budget,
                              char **out);

/**
 * Zeta function as JSON: counts used, numerator and denominator
 * coefficient arrays, and (for smooth proper schemes) the weight
 * factorization with its Weil bound report.
 *
 * # Safety
 * `scheme` must be a live handle; `out` must be valid.
 */
enum ZvStatus zv_zeta_json(const struct ZvScheme *scheme, uint64_t p, uint64_t budget, char **out);

/**
 * Exact special value report at integer `n` as JSON.
 *
 * # Safety
 * `scheme` must be a live handle; `out` must be valid.
 */
enum ZvStatus zv_special_value_json(const struct ZvScheme *scheme,
                                    uint64_t p,
                                    int64_t n,
                                    uint64_t budget,
                                    char **out);

/**
 * Full verification pipeline as JSON. Returns `CheckFailed` when the
 * report is inconsistent (the JSON is still written).
 *
 * # Safety
 * `scheme` must be a live handle; `out` must be valid.
 */
enum ZvStatus zv_verify_milne_json(const struct ZvScheme *scheme,
                                   uint64_t p,
                                   int64_t n,
                                   uint64_t budget,
                                   char **out);

/**
 * Seed-fixed randomized suite for the determinant/cokernel identity.
 * Returns `CheckFailed` if any instance fails (the JSON reports it).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum ZvStatus zv_lemma21_suite_json(uint64_t p,
                                    uint32_t trials,
                                    uint32_t rank_max,
                                    uint64_t seed,
                                    char **out);

/**
 * Property propagation: takes a ledger JSON document and returns the
 * closed ledger as JSON.
 *
 * # Safety
 * `ledger_json` must be a valid NUL-terminated string; `out` must be
 * valid.
 */
enum ZvStatus zv_propagate_json(const char *ledger_json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZETAVALS_H */
