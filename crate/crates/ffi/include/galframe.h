#ifndef GALFRAME_H
#define GALFRAME_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result code of every exported function.
typedef enum GfStatus {
  GF_STATUS_OK = 0,
  // A required pointer argument was null.
  GF_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  GF_STATUS_INVALID_UTF8 = 2,
  // Text could not be parsed as a lattice, frame or formula.
  GF_STATUS_PARSE = 3,
  // No corpus member has the given name.
  GF_STATUS_NOT_FOUND = 4,
  // The lattice has no implication table or it violates A1-A3.
  GF_STATUS_NOT_IMPLICATIVE = 5,
  // A construction or evaluation was rejected; see the message.
  GF_STATUS_INVALID = 6,
  // An internal panic was caught at the boundary.
  GF_STATUS_PANIC = 7,
} GfStatus;

// An implicative frame with any named stable sets recorded for it.
typedef struct GfFrame GfFrame;

// A finite lattice, optionally with an implication table.
typedef struct GfLattice GfLattice;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null if there has
// been none. A failed axiom check also records its first violation here.
// The pointer stays valid until the next failure on the same thread.
const char *gf_last_error_message(void);

// Look up a built-in lattice: C2, C3, C4, B4, B8, M3, N5 or L3.
//
// # Safety
// `name` must be a nul-terminated string; `out` must be writable.
enum GfStatus gf_lattice_from_corpus(const char *name, struct GfLattice **out);

// Parse a `GLATTICE 1` document.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum GfStatus gf_lattice_parse(const char *text, struct GfLattice **out);

// # Safety
// `lattice` must come from this library; `out` must be writable.
enum GfStatus gf_lattice_size(const struct GfLattice *lattice, size_t *out);

// # Safety
// `lattice` must come from this library; `out` must be writable.
enum GfStatus gf_lattice_is_distributive(const struct GfLattice *lattice, bool *out);

// Whether the implication table satisfies H1 and H2. Fails with
// `NotImplicative` when the lattice has no table.
//
// # Safety
// `lattice` must come from this library; `out` must be writable.
enum GfStatus gf_lattice_is_heyting(const struct GfLattice *lattice, bool *out);

// Whether `a^(n+1) -> b <= a^n -> b` holds for all `a`, `b`.
//
// # Safety
// `lattice` must come from this library; `out` must be writable.
enum GfStatus gf_lattice_check_an(const struct GfLattice *lattice, size_t n, bool *out);

// # Safety
// `lattice` must come from this library or be null. It must not be used
// afterwards.
void gf_lattice_free(struct GfLattice *lattice);

// The canonical filter/ideal frame of an implicative lattice.
//
// # Safety
// `lattice` must come from this library; `out` must be writable.
enum GfStatus gf_canonical_frame(const struct GfLattice *lattice,
                                 bool proper_only,
                                 struct GfFrame **out);

// Parse a `GFRAME 1` document.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum GfStatus gf_frame_parse(const char *text, struct GfFrame **out);

// Serialize as a `GFRAME 1` document. Release the string with
// [`gf_string_free`].
//
// # Safety
// `frame` must come from this library; `out` must be writable.
enum GfStatus gf_frame_to_text(const struct GfFrame *frame, char **out);

// # Safety
// `s` must come from this library or be null.
void gf_string_free(char *s);

// Whether F0-F4 all hold. On failure the message names the first failing
// axiom and its witness.
//
// # Safety
// `frame` must come from this library; `out` must be writable.
enum GfStatus gf_frame_check_axioms(const struct GfFrame *frame, bool *out);

// Number of stable sets, enumerating at most `max_family` of them.
//
// # Safety
// `frame` must come from this library; `out` must be writable.
enum GfStatus gf_frame_stable_count(const struct GfFrame *frame, size_t max_family, size_t *out);

// # Safety
// `frame` must come from this library; `out` must be writable.
enum GfStatus gf_frame_is_heyting(const struct GfFrame *frame, bool *out);

// Evaluate `formula` under `bindings`, a newline- or semicolon-separated
// list of `atom=X_a` or `atom={x,...}` entries. Writes whether the formula
// is valid and whether every clause-equivalence check passed.
//
// # Safety
// `frame` must come from this library; strings must be nul-terminated;
// `valid` and `clauses_ok` must be writable.
enum GfStatus gf_model_check(const struct GfFrame *frame,
                             const char *bindings,
                             const char *formula,
                             bool *valid,
                             bool *clauses_ok);

// # Safety
// `frame` must come from this library or be null. It must not be used
// afterwards.
void gf_frame_free(struct GfFrame *frame);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GALFRAME_H */
