#ifndef RMCKIT_H
#define RMCKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of fallible calls.
 */
typedef enum RmckStatus {
  RMCK_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  RMCK_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  RMCK_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed files, unknown symbols, bad options.
   */
  RMCK_STATUS_INPUT_ERROR = 3,
  /**
   * The operation is not defined for this kind of system or automaton.
   */
  RMCK_STATUS_UNSUPPORTED = 4,
  /**
   * A size or alphabet cap was exceeded.
   */
  RMCK_STATUS_CAP_EXCEEDED = 5,
  RMCK_STATUS_IO = 6,
  /**
   * A bug in the library; the message names the panic.
   */
  RMCK_STATUS_INTERNAL = 7,
} RmckStatus;

typedef enum RmckEngine {
  RMCK_ENGINE_LOOP = 0,
  RMCK_ENGINE_SIM = 1,
} RmckEngine;

typedef enum RmckCheckKind {
  RMCK_CHECK_KIND_REACH = 0,
  RMCK_CHECK_KIND_GSP = 1,
  RMCK_CHECK_KIND_LOSP = 2,
  RMCK_CHECK_KIND_CLOSURE = 3,
  RMCK_CHECK_KIND_CLOSURE_STAR = 4,
  RMCK_CHECK_KIND_SIM = 5,
} RmckCheckKind;

/**
 * Outcome of a check.
 */
typedef enum RmckVerdict {
  RMCK_VERDICT_HOLDS = 0,
  RMCK_VERDICT_VIOLATED = 1,
  RMCK_VERDICT_UNKNOWN = 2,
} RmckVerdict;

/**
 * A parsed automaton or transducer.
 */
typedef struct RmckAutomaton RmckAutomaton;

/**
 * The result of a check.
 */
typedef struct RmckReport RmckReport;

/**
 * A loaded system file with its properties.
 */
typedef struct RmckSystem RmckSystem;

/**
 * Options of [`rmck_check`]. Start from [`rmck_check_options_default`].
 */
typedef struct RmckCheckOptions {
  /**
   * Declared property name or automaton file path, or null for the first
   * declared property the check can use.
   */
  const char *property;
  size_t slice_lo;
  size_t slice_hi;
  bool unsliced;
  size_t budget;
  enum RmckEngine engine;
} RmckCheckOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The library version as a static NUL-terminated string.
 */
const char *rmck_version(void);

/**
 * The message of the last failed call on this thread, or null. Valid
 * until the next failing call on the same thread.
 */
const char *rmck_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void rmck_string_free(char *s);

/**
 * Fills `opts` with the command line defaults: slices 2..8, budget 64,
 * loop engine.
 *
 * # Safety
 * `opts` must be null or point to writable memory for the struct.
 */
enum RmckStatus rmck_check_options_default(struct RmckCheckOptions *opts);

/**
 * Loads a system file; referenced automata are read relative to its
 * directory.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` writable.
 */
enum RmckStatus rmck_system_load(const char *path, struct RmckSystem **out);

/**
 * # Safety
 * `sys` must be null or a live handle from [`rmck_system_load`].
 */
void rmck_system_free(struct RmckSystem *sys);

/**
 * Runs a check. `opts` may be null for the defaults.
 *
 * # Safety
 * `sys` must be a live handle, `opts` null or valid, `out` writable.
 */
enum RmckStatus rmck_check(const struct RmckSystem *sys,
                           enum RmckCheckKind kind,
                           const struct RmckCheckOptions *opts,
                           struct RmckReport **out);

/**
 * The overall verdict: violated if any slice is, else unknown if any
 * slice is, else holds.
 *
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
enum RmckStatus rmck_report_verdict(const struct RmckReport *report, enum RmckVerdict *out);

/**
 * The report in the command line's JSON layout. Free the result with
 * [`rmck_string_free`]. Returns null when `report` is null.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
char *rmck_report_json(const struct RmckReport *report);

/**
 * # Safety
 * `report` must be null or a live handle from [`rmck_check`].
 */
void rmck_report_free(struct RmckReport *report);

/**
 * Parses an automaton in the `.aut` text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum RmckStatus rmck_automaton_parse(const char *text, struct RmckAutomaton **out);

/**
 * The canonical minimal form, as a new handle.
 *
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
enum RmckStatus rmck_automaton_minimize(const struct RmckAutomaton *a, struct RmckAutomaton **out);

/**
 * The automaton in the `.aut` text format. Free the result with
 * [`rmck_string_free`]. Returns null when `a` is null.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
char *rmck_automaton_serialize(const struct RmckAutomaton *a);

/**
 * Membership of a word. Finite words are written as in the system files
 * (`N T N`, or `N/T T/N` for transducers); ultimately periodic words as
 * `prefix | period`.
 *
 * # Safety
 * `a` must be a live handle, `word` a NUL-terminated string, `out`
 * writable.
 */
enum RmckStatus rmck_automaton_accepts(const struct RmckAutomaton *a, const char *word, bool *out);

/**
 * # Safety
 * `a` must be null or a live handle from this library.
 */
void rmck_automaton_free(struct RmckAutomaton *a);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RMCKIT_H */
