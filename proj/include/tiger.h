/* Public C API for the tiger-code analysis library.
 *
 * All functions return a tiger_status; richer results travel as JSON
 * strings allocated by the library and released with tiger_string_free.
 * Handles are opaque; tiger_last_error() describes the most recent
 * failure on the calling thread.
 */
#ifndef TIGER_H
#define TIGER_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct tiger_code tiger_code;

typedef enum tiger_status {
  TIGER_OK = 0,
  TIGER_ERR_INVALID_INPUT = 2,  /* schema/CSS/parameter problems */
  TIGER_ERR_PRECONDITION = 3,   /* operation preconditions violated */
  TIGER_ERR_SEARCH_EXHAUSTED = 4,
  TIGER_ERR_INTERNAL = 5
} tiger_status;

/* Construction.  definition_json: {"G": [[...]], "H": [[...]],
 * "delta": [...], "alpha": x, "cutoff": n, "name": s}. */
tiger_status tiger_code_from_json(const char* definition_json,
                                  tiger_code** out);
/* delta_json NULL selects the family default; alpha <= 0 selects 1.0. */
tiger_status tiger_code_from_catalog(const char* name,
                                     const char* params_json,
                                     const char* delta_json, double alpha,
                                     tiger_code** out);
void tiger_code_free(tiger_code* code);

/* Thread-local message for the most recent error. */
const char* tiger_last_error(void);

/* Analyses; options_json accepts {"cutoff": n, "x_bound": n,
 * "loss_bound": n, "grid_points": n, "threads": n, "phi_logical": x,
 * "skip_dephasing": b}.  NULL means defaults. */
tiger_status tiger_analyze(const tiger_code* code, const char* options_json,
                           char** report_json);
tiger_status tiger_distance(const tiger_code* code, const char* options_json,
                            char** report_json);

/* sweep_json: {"p": [...], "mu": x, "nu": x, "alpha_sq": [...],
 * "cutoff": n} */
tiger_status tiger_dephasing_sweep(const tiger_code* code,
                                   const char* sweep_json,
                                   char** report_json);

/* eval_json: {"y": [x, ...] or [{"re": x, "im": y}, ...], "cutoff": n} */
tiger_status tiger_gkz_eval(const tiger_code* code, const char* eval_json,
                            char** report_json);

/* basis "x" with angle mu, or "z" with integer ell; emits a JSON-lines
 * dump (header line then one line per retained basis state). */
tiger_status tiger_codewords(const tiger_code* code, const char* basis,
                             double mu, long ell, long cutoff,
                             char** jsonl_out);

/* Round-trippable definition of the wrapped code. */
tiger_status tiger_definition(const tiger_code* code, char** definition_json);

tiger_status tiger_catalog_list(char** json_out);

void tiger_string_free(char* s);
const char* tiger_version(void);

#ifdef __cplusplus
}
#endif

#endif /* TIGER_H */
