/*
 * fbh — verification engine for f-biharmonic hypersurfaces in conformally
 * flat spaces.
 *
 * C interface to the shared library. All functions returning int use the
 * exit-code contract {0 pass, 1 claim violated, 2 usage error}; on 1 or 2
 * the session holds a human-readable message (fbh_session_last_error).
 * Strings returned through out-parameters are heap-allocated and must be
 * released with fbh_string_free.
 */

#ifndef FBH_H
#define FBH_H

#ifdef __cplusplus
extern "C" {
#endif

enum {
  FBH_PASS = 0,   /* claim verified / command succeeded */
  FBH_FAIL = 1,   /* command ran, claim violated */
  FBH_USAGE = 2,  /* bad input: unparseable expression, unknown family, ... */
};

typedef struct fbh_session fbh_session;
typedef struct fbh_expr fbh_expr;

fbh_session* fbh_session_new(void);
void fbh_session_free(fbh_session* s);
const char* fbh_session_last_error(const fbh_session* s);

/*
 * Run one engine command. command is "verify", "curvature", "ansatz" or
 * "selftest"; config_json carries the run configuration, e.g.
 *   {"family":"pqe1_ii","m":5,"samples":100,"seed":7,"format":"json"}
 * Recognized keys: family, m, n, sigma, f, hyperplane, immersion, params,
 * guards, samples, seed, tol_verify, tol_falsify, tol_zero, box, jobs,
 * expect, equation, format. The rendered report (text/json/csv per the
 * "format" key) is placed in *report_out even when the claim fails.
 */
int fbh_run(fbh_session* s, const char* command, const char* config_json, char** report_out);

void fbh_string_free(char* str);

/* Expression toolkit: parse once, evaluate with late-bound identifiers. */
int fbh_expr_parse(fbh_session* s, const char* text, fbh_expr** out);
/* bindings_json maps identifiers to numbers: {"z":2.0,"c1":1.0} */
int fbh_expr_eval(fbh_session* s, const fbh_expr* e, const char* bindings_json,
                  double* value_out);
int fbh_expr_print(fbh_session* s, const fbh_expr* e, char** text_out);
void fbh_expr_free(fbh_expr* e);

const char* fbh_version(void);

#ifdef __cplusplus
}
#endif

#endif /* FBH_H */
