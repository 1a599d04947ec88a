/* SPDX-License-Identifier: MIT
 *
 * C interface to the invariant-ring construction library: generators,
 * relations and Hilbert series of rings of invariants of the finite
 * orthogonal and symplectic groups over F2.
 *
 * Every entry point takes an opaque session, returns an IF_* status code,
 * and hands textual results back through an out-parameter the caller
 * releases with if_string_free.  On any nonzero status the session stores a
 * human-readable message retrievable with if_session_error; output
 * parameters are left untouched.  All output is deterministic: equal inputs
 * produce byte-identical strings.
 */
#ifndef INVFORGE_H
#define INVFORGE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define INVFORGE_API_VERSION 1

/* Status codes. */
#define IF_OK 0          /* success */
#define IF_USAGE 1       /* malformed request: unknown name, bad flag */
#define IF_IDENTITY 2    /* a verified identity or golden comparison failed */
#define IF_UNSUPPORTED 3 /* valid request outside the supported range */
#define IF_INTERNAL 4    /* unexpected internal failure */

typedef struct if_session if_session;

/* Session lifecycle.  A session carries the allow-slow flag, the thread cap
 * and the last error message; it is not thread-safe. */
if_session* if_session_new(void);
void if_session_free(if_session* s);

/* Message describing the last failure on this session ("" after success).
 * The pointer stays valid until the next call on the same session. */
const char* if_session_error(const if_session* s);

/* Opt into the gated long-running checks (level-3 factorizations). */
int if_set_allow_slow(if_session* s, int on);
/* Cap worker parallelism (>= 1); the cap is recorded and respected by any
 * parallel section.  Results never depend on it. */
int if_set_threads(if_session* s, int n);

/* Release a string returned through an out-parameter. */
void if_string_free(char* p);

/* Render one constructed object.  `what` is one of:
 *   xi dickson lambda lambda-i omega omega-pm chern eta ke jf relations
 * `n` is the family level; `sign` is "+", "-" or NULL (both/default);
 * `i` is the derivative index for lambda-i (pass -1 otherwise); `group` is
 * "o-odd", "o-plus", "o-minus" or "sp" (NULL defaults to "o-odd"); nonzero
 * `as_json` wraps the text in a one-object JSON report. */
int if_compute(if_session* s, const char* what, int n, const char* sign,
               int i, const char* group, int as_json, char** out);

/* Check one named identity at level n ("PASS <name> n=<n>").  IF_IDENTITY
 * when the identity fails; IF_UNSUPPORTED outside its level range. */
int if_verify_identity(if_session* s, const char* name, int n, char** out);

/* Check the whole catalogue at every admissible level (one PASS/FAIL line
 * each); IF_IDENTITY if any line failed. */
int if_verify_all(if_session* s, char** out);

/* Newline-separated catalogue of identity names. */
int if_identity_names(if_session* s, char** out);

/* Enumerate one group: order next to its closed-form value, plus the
 * transvection count when `transvections` is nonzero.  Enumeration is
 * exhaustive, so the level range is small (n <= 2). */
int if_enumerate_group(if_session* s, const char* group, int n,
                       int transvections, int as_json, char** out);

/* Hilbert series report (JSON): factor degrees, group order, reflection
 * count, and power-series coefficients 0..expand (pass expand < 0 to omit
 * them). */
int if_hilbert(if_session* s, const char* group, int n, int expand,
               char** out);

/* Compare the golden tree at `dir` (NULL: the build's own tree) against
 * live renders; IF_IDENTITY with the offending files on mismatch. */
int if_golden_check(if_session* s, const char* dir, char** out);

/* Rewrite the golden tree at `dir` (NULL: the build's own tree); the output
 * is one status line per file plus a summary. */
int if_golden_regenerate(if_session* s, const char* dir, char** out);

#ifdef __cplusplus
}
#endif

#endif /* INVFORGE_H */
