#ifndef WSCK_H
#define WSCK_H

/*
 * C interface to the W/S conformal superalgebra toolkit.
 *
 * All functions are thread-compatible (no shared mutable state besides the
 * thread-local error buffer). Objects returned through pointers are opaque
 * handles owned by the caller and must be released with the matching _free
 * function. On failure, constructors return NULL and wsck_last_error()
 * describes the problem.
 */

#ifdef __cplusplus
extern "C" {
#endif

/* --- reports: run a full command described by a JSON config -------------- */

typedef struct wsck_report wsck_report;

/* Config schema: {"command": "axioms"|"classify"|"derham"|"dual"|"w1", ...}.
 * Never returns NULL; inspect the status. */
wsck_report* wsck_run(const char* config_json);

/* 0 = all checks passed, 1 = some mathematical check failed, 2 = bad config */
int wsck_report_status(const wsck_report* r);
const char* wsck_report_json(const wsck_report* r);
const char* wsck_report_text(const wsck_report* r);
void wsck_report_free(wsck_report* r);

/* --- algebra handles ------------------------------------------------------ */

typedef struct wsck_algebra wsck_algebra;

/* kind: "W" (n >= 0), "Vir", "S", "Sb" (needs b as a rational string),
 * "Stilde" (even n). NULL on error. */
wsck_algebra* wsck_algebra_create(const char* kind, int n, const char* b);
int wsck_algebra_rank(const wsck_algebra* a);

/* 0 = skew-symmetry and Jacobi hold (for the S-families: on the subalgebra
 * basis, plus bracket closure); nonzero otherwise. */
int wsck_algebra_verify(const wsck_algebra* a);

/* Bracket table as JSON (for the S-families: of the parent W_n).
 * Free with wsck_string_free. */
char* wsck_algebra_table_json(const wsck_algebra* a);
void wsck_algebra_free(wsck_algebra* a);

/* --- misc ------------------------------------------------------------------ */

void wsck_string_free(char* s);
const char* wsck_last_error(void);
const char* wsck_version(void);

#ifdef __cplusplus
}
#endif

#endif /* WSCK_H */
