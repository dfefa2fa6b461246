/* C interface to the W(2)_n symbolic engine: opaque handles, integer status
 * codes, UTF-8 strings. Every returned object is freed by its *_free call;
 * strings returned through char** are freed with w2n_string_free. On any
 * failure the thread-local message from w2n_last_error() describes the cause.
 */
#ifndef W2N_C_H
#define W2N_C_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum w2n_status {
  W2N_OK = 0,
  W2N_ERR_INVALID = 1,
  W2N_ERR_DIVISION = 2,
  W2N_ERR_SINGULAR = 3,
  W2N_ERR_NONLOCAL = 4,
  W2N_ERR_DOMAIN = 5,
  W2N_ERR_PARSE = 6,
  W2N_ERR_INTERNAL = 7
} w2n_status;

typedef enum w2n_format { W2N_FORMAT_TEXT = 0, W2N_FORMAT_LATEX = 1, W2N_FORMAT_JSON = 2 } w2n_format;

typedef struct w2n_realization w2n_realization;
typedef struct w2n_field w2n_field;
typedef struct w2n_expansion w2n_expansion;
typedef struct w2n_report w2n_report;

const char* w2n_version(void);
const char* w2n_last_error(void);
void w2n_string_free(char* s);

/* --- realizations ------------------------------------------------------ */
w2n_status w2n_realization_new(int n, int m, w2n_realization** out);
void w2n_realization_free(w2n_realization* rd);

/* --- fields ------------------------------------------------------------ */
/* Parse an expression such as "E(3,0)", "prod(A1, d^1(Q+))" or
 * "(k+1) d^1(Q)". Pass n = m = -1 to infer the realization from the
 * expression itself. */
w2n_status w2n_field_parse(const char* text, int n, int m, w2n_field** out);
/* Generator by name: "E", "H", "F", "T", "W", "Lambda", "Z".
 * mode 0 = recursion, 1 = factored form. */
w2n_status w2n_generator(const w2n_realization* rd, const char* name, int mode, w2n_field** out);
w2n_status w2n_field_derivative(const w2n_field* f, w2n_field** out);
w2n_status w2n_field_normal_product(const w2n_field* a, const w2n_field* b, w2n_field** out);
/* Exact substitution k -> value ("3", "-1/2", ...). */
w2n_status w2n_field_specialize(const w2n_field* f, const char* k_value, w2n_field** out);
w2n_status w2n_field_render(const w2n_field* f, w2n_format format, char** out);
int w2n_field_equal(const w2n_field* a, const w2n_field* b);
void w2n_field_free(w2n_field* f);

/* --- operator product expansions --------------------------------------- */
w2n_status w2n_ope(const w2n_field* left, const w2n_field* right, int depth, w2n_expansion** out);
w2n_status w2n_expansion_render(const w2n_expansion* o, w2n_format format, char** out);
/* Coefficient of the actual pole (z-w)^{-order}; integer offsets only. */
w2n_status w2n_expansion_pole(const w2n_expansion* o, int order, w2n_field** out);
int w2n_expansion_max_pole(const w2n_expansion* o);
void w2n_expansion_free(w2n_expansion* o);

/* --- verification suites ------------------------------------------------ */
typedef struct w2n_suite_options {
  int n_max;            /* default 4 */
  int depth;            /* default 2 */
  int fock_cutoff;      /* default 4 */
  int jobs;             /* default 1 */
  const char* k_value;  /* optional numeric level, e.g. "1/2"; NULL to skip */
} w2n_suite_options;

void w2n_suite_options_init(w2n_suite_options* opt);
/* name: structure | screenings | appendix-bp | appendix-w4 | duality |
 *       oracle | all */
w2n_status w2n_run_suite(const char* name, const w2n_suite_options* opt, w2n_report** out);
w2n_status w2n_report_render(const w2n_report* r, w2n_format format, char** out);
w2n_status w2n_report_parse(const char* json_text, w2n_report** out);
int w2n_report_failed(const w2n_report* r);
int w2n_report_passed(const w2n_report* r);
void w2n_report_free(w2n_report* r);

#ifdef __cplusplus
}
#endif

#endif /* W2N_C_H */
