/* C interface of the prccsl library: spec parsing, model simulation and
 * statistical checking behind opaque handles.
 *
 * Every fallible call returns a prccsl_status. On failure the calling thread's
 * last error (message, and line/column for parse errors) describes the cause
 * until the next failing call on that thread. Strings returned through char**
 * are owned by the caller and released with prccsl_string_free. Strings
 * returned as const char* live as long as the handle they came from. */
#ifndef PRCCSL_H
#define PRCCSL_H

#include <stddef.h>
#include <stdint.h>

#if defined(PRCCSL_BUILDING)
#define PRCCSL_API __attribute__((visibility("default")))
#else
#define PRCCSL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum prccsl_status {
  PRCCSL_OK = 0,
  PRCCSL_E_INDEX_OUT_OF_RANGE,
  PRCCSL_E_NON_MONOTONE,
  PRCCSL_E_UNKNOWN_CLOCK,
  PRCCSL_E_CYCLIC_DEFINITION,
  PRCCSL_E_EMPTY_ENSEMBLE,
  PRCCSL_E_SYNTAX,
  PRCCSL_E_UNDECLARED_CLOCK,
  PRCCSL_E_BAD_PARAMETER,
  PRCCSL_E_DUPLICATE_NAME,
  PRCCSL_E_UNKNOWN_CONSTRAINT,
  PRCCSL_E_UNKNOWN_QUERY,
  PRCCSL_E_INVALID_MODEL,
  PRCCSL_E_MISSING_RATE,
  PRCCSL_E_MODEL_DEADLOCK,
  PRCCSL_E_GENERATOR_FAILURE,
  PRCCSL_E_DEGENERATE_DENOMINATOR,
  PRCCSL_E_IO,
  PRCCSL_E_INTERNAL
} prccsl_status;

typedef struct prccsl_spec prccsl_spec;
typedef struct prccsl_model prccsl_model;
typedef struct prccsl_report prccsl_report;

PRCCSL_API const char* prccsl_version(void);
PRCCSL_API const char* prccsl_status_name(prccsl_status status);
PRCCSL_API const char* prccsl_last_error_message(void);
/* 1-based source position of the last parse error, 0 when not applicable. */
PRCCSL_API int prccsl_last_error_line(void);
PRCCSL_API int prccsl_last_error_column(void);
PRCCSL_API void prccsl_string_free(char* s);

/* Specs. Parsing includes validation; the first problem is reported. */
PRCCSL_API prccsl_status prccsl_spec_parse(const char* text, prccsl_spec** out);
PRCCSL_API prccsl_status prccsl_spec_load(const char* path, prccsl_spec** out);
PRCCSL_API prccsl_status prccsl_spec_print(const prccsl_spec* spec, char** out);
PRCCSL_API size_t prccsl_spec_query_count(const prccsl_spec* spec);
/* Id of query i in file order, or NULL when out of range. */
PRCCSL_API const char* prccsl_spec_query_id(const prccsl_spec* spec, size_t i);
PRCCSL_API void prccsl_spec_free(prccsl_spec* spec);

/* Collects every validation problem of a syntactically valid spec as lines
 * "LINE: CODE: message" into *diagnostics and their number into *count.
 * Returns PRCCSL_E_SYNTAX (with the position in the last error) when the
 * text does not parse. */
PRCCSL_API prccsl_status prccsl_validate_text(const char* text, char** diagnostics, size_t* count);

/* Models. */
PRCCSL_API prccsl_status prccsl_model_parse(const char* json, prccsl_model** out);
PRCCSL_API prccsl_status prccsl_model_load(const char* path, prccsl_model** out);
/* The bundled autonomous-vehicle model. */
PRCCSL_API prccsl_status prccsl_model_av(prccsl_model** out);
PRCCSL_API void prccsl_model_free(prccsl_model* model);

/* Writes runs 0..runs-1 (steps 0..bound) as JSONL files into dir. Output
 * depends only on (model, seed, runs, bound), not on jobs (0: all cores). */
PRCCSL_API prccsl_status prccsl_simulate_to_dir(const prccsl_model* model, uint64_t seed, size_t runs,
                                                int64_t bound, size_t jobs, const char* dir);

/* Overrides for a check; zero or negative fields are unset and fall back to
 * the query text, then to the library defaults. */
typedef struct prccsl_check_options {
  uint64_t seed;
  size_t jobs;
  int64_t bound;
  size_t runs;
  double alpha;
  double beta;
  double delta;
  double epsilon;
} prccsl_check_options;

PRCCSL_API void prccsl_check_options_init(prccsl_check_options* options);

/* Runs query `query_id` against live simulation of `model`. */
PRCCSL_API prccsl_status prccsl_check_model(const prccsl_spec* spec, const prccsl_model* model,
                                            const char* query_id, const prccsl_check_options* options,
                                            prccsl_report** out);
/* Runs query `query_id` against the JSONL traces of `traces_dir`. */
PRCCSL_API prccsl_status prccsl_check_traces(const prccsl_spec* spec, const char* traces_dir,
                                             const char* query_id, const prccsl_check_options* options,
                                             prccsl_report** out);

PRCCSL_API const char* prccsl_report_query(const prccsl_report* report);
/* hypothesis | estimate | compare | expect | simulate */
PRCCSL_API const char* prccsl_report_kind(const prccsl_report* report);
/* accept | reject | inconclusive | holds | violated | done */
PRCCSL_API const char* prccsl_report_decision(const prccsl_report* report);
/* 0 accept/holds/done, 3 reject/violated, 4 inconclusive. */
PRCCSL_API int prccsl_report_exit_code(const prccsl_report* report);
PRCCSL_API const char* prccsl_report_json(const prccsl_report* report);
/* Empty unless the query is an expected-value query. */
PRCCSL_API const char* prccsl_report_histogram_csv(const prccsl_report* report);
/* Empty unless the query is a simulate query. */
PRCCSL_API const char* prccsl_report_trajectories_csv(const prccsl_report* report);
PRCCSL_API void prccsl_report_free(prccsl_report* report);

/* Writes av.model.json, av.prccsl and wcet.json into dir. */
PRCCSL_API prccsl_status prccsl_export_av(const char* dir);

#ifdef __cplusplus
}
#endif

#endif
