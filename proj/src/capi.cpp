#include "prccsl/prccsl.h"

#include <cstring>
#include <new>
#include <string>

#include "prccsl/av.hpp"
#include "prccsl/check.hpp"
#include "prccsl/error.hpp"
#include "prccsl/simulator.hpp"
#include "prccsl/spec.hpp"
#include "prccsl/sta.hpp"
#include "prccsl/trace_io.hpp"

struct prccsl_spec {
  prccsl::SpecFile spec;
};

struct prccsl_model {
  prccsl::StaModel model;
};

struct prccsl_report {
  prccsl::Report report;
};

namespace {

struct LastError {
  std::string message;
  int line = 0;
  int column = 0;
};

thread_local LastError g_last;

static_assert(static_cast<int>(prccsl::ErrorCode::Io) + 1 == PRCCSL_E_IO);

prccsl_status status_of(prccsl::ErrorCode code) {
  // ErrorCode and prccsl_status list the failure classes in the same order.
  return static_cast<prccsl_status>(static_cast<int>(code) + 1);
}

prccsl_status fail(prccsl_status s, std::string message, int line = 0, int column = 0) {
  g_last = {std::move(message), line, column};
  return s;
}

// Runs `body`, translating exceptions into a status and the last error.
template <typename Fn>
prccsl_status guarded(Fn&& body) {
  try {
    body();
    return PRCCSL_OK;
  } catch (const prccsl::Error& e) {
    return fail(status_of(e.code()), e.what(), e.line(), e.column());
  } catch (const std::bad_alloc&) {
    return fail(PRCCSL_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PRCCSL_E_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

prccsl_status null_argument(const char* what) {
  return fail(PRCCSL_E_BAD_PARAMETER, std::string(what) + " must not be null");
}

prccsl::CheckOptions to_options(const prccsl_check_options* o, const char* source) {
  prccsl_check_options defaults;
  prccsl_check_options_init(&defaults);
  if (!o) o = &defaults;
  prccsl::CheckOptions out;
  out.seed = o->seed;
  out.jobs = o->jobs;
  if (o->bound > 0) out.bound = o->bound;
  if (o->runs > 0) out.runs = o->runs;
  if (o->alpha > 0) out.alpha = o->alpha;
  if (o->beta > 0) out.beta = o->beta;
  if (o->delta > 0) out.delta = o->delta;
  if (o->epsilon > 0) out.epsilon = o->epsilon;
  out.source = source;
  return out;
}

}  // namespace

extern "C" {

const char* prccsl_version(void) { return "0.1.0"; }

const char* prccsl_status_name(prccsl_status status) {
  if (status == PRCCSL_OK) return "Ok";
  if (status == PRCCSL_E_INTERNAL) return "Internal";
  if (status > PRCCSL_OK && status < PRCCSL_E_INTERNAL) {
    return prccsl::error_code_name(static_cast<prccsl::ErrorCode>(status - 1)).data();
  }
  return "Unknown";
}

const char* prccsl_last_error_message(void) { return g_last.message.c_str(); }
int prccsl_last_error_line(void) { return g_last.line; }
int prccsl_last_error_column(void) { return g_last.column; }

void prccsl_string_free(char* s) { delete[] s; }

prccsl_status prccsl_spec_parse(const char* text, prccsl_spec** out) {
  if (!text || !out) return null_argument("text and out");
  return guarded([&] { *out = new prccsl_spec{prccsl::parse_spec(text)}; });
}

prccsl_status prccsl_spec_load(const char* path, prccsl_spec** out) {
  if (!path || !out) return null_argument("path and out");
  return guarded([&] { *out = new prccsl_spec{prccsl::parse_spec(prccsl::read_text_file(path))}; });
}

prccsl_status prccsl_spec_print(const prccsl_spec* spec, char** out) {
  if (!spec || !out) return null_argument("spec and out");
  return guarded([&] { *out = dup_string(prccsl::print_spec(spec->spec)); });
}

size_t prccsl_spec_query_count(const prccsl_spec* spec) { return spec ? spec->spec.queries.size() : 0; }

const char* prccsl_spec_query_id(const prccsl_spec* spec, size_t i) {
  if (!spec || i >= spec->spec.queries.size()) return nullptr;
  return spec->spec.queries[i].id.c_str();
}

void prccsl_spec_free(prccsl_spec* spec) { delete spec; }

prccsl_status prccsl_validate_text(const char* text, char** diagnostics, size_t* count) {
  if (!text || !diagnostics || !count) return null_argument("text, diagnostics and count");
  return guarded([&] {
    const auto diags = prccsl::validate_spec(prccsl::parse_spec_syntax(text));
    std::string joined;
    for (const auto& d : diags) {
      joined += std::to_string(d.line) + ": " + std::string(prccsl::error_code_name(d.code)) + ": " + d.message + "\n";
    }
    *diagnostics = dup_string(joined);
    *count = diags.size();
  });
}

prccsl_status prccsl_model_parse(const char* json, prccsl_model** out) {
  if (!json || !out) return null_argument("json and out");
  return guarded([&] { *out = new prccsl_model{prccsl::StaModel::from_json(json)}; });
}

prccsl_status prccsl_model_load(const char* path, prccsl_model** out) {
  if (!path || !out) return null_argument("path and out");
  return guarded([&] { *out = new prccsl_model{prccsl::StaModel::from_json(prccsl::read_text_file(path))}; });
}

prccsl_status prccsl_model_av(prccsl_model** out) {
  if (!out) return null_argument("out");
  return guarded([&] { *out = new prccsl_model{prccsl::StaModel::from_json(prccsl::build_av_bundle().model_json)}; });
}

void prccsl_model_free(prccsl_model* model) { delete model; }

prccsl_status prccsl_simulate_to_dir(const prccsl_model* model, uint64_t seed, size_t runs, int64_t bound,
                                     size_t jobs, const char* dir) {
  if (!model || !dir) return null_argument("model and dir");
  if (runs == 0) return fail(PRCCSL_E_BAD_PARAMETER, "runs must be >= 1");
  if (bound < 1) return fail(PRCCSL_E_BAD_PARAMETER, "bound must be >= 1");
  return guarded([&] {
    prccsl::SimConfig cfg;
    cfg.seed = seed;
    cfg.runs = runs;
    cfg.bound = bound;
    cfg.jobs = jobs;
    prccsl::write_trace_dir(dir, prccsl::simulate_batch(model->model, cfg));
  });
}

void prccsl_check_options_init(prccsl_check_options* options) {
  if (!options) return;
  *options = prccsl_check_options{};
  options->seed = 42;
}

prccsl_status prccsl_check_model(const prccsl_spec* spec, const prccsl_model* model, const char* query_id,
                                 const prccsl_check_options* options, prccsl_report** out) {
  if (!spec || !model || !query_id || !out) return null_argument("spec, model, query_id and out");
  return guarded([&] {
    prccsl::check_event_map(spec->spec, model->model);
    const prccsl::CheckOptions o = to_options(options, "model");
    const prccsl::SimulatorSource source(model->model, o.seed);
    *out = new prccsl_report{prccsl::run_query(spec->spec, query_id, source, o)};
  });
}

prccsl_status prccsl_check_traces(const prccsl_spec* spec, const char* traces_dir, const char* query_id,
                                  const prccsl_check_options* options, prccsl_report** out) {
  if (!spec || !traces_dir || !query_id || !out) return null_argument("spec, traces_dir, query_id and out");
  return guarded([&] {
    const prccsl::CheckOptions o = to_options(options, "traces");
    const prccsl::TraceSource source(prccsl::read_trace_dir(traces_dir));
    *out = new prccsl_report{prccsl::run_query(spec->spec, query_id, source, o)};
  });
}

const char* prccsl_report_query(const prccsl_report* r) { return r ? r->report.query_id.c_str() : ""; }
const char* prccsl_report_kind(const prccsl_report* r) { return r ? r->report.kind.c_str() : ""; }
const char* prccsl_report_decision(const prccsl_report* r) { return r ? r->report.decision.c_str() : ""; }
int prccsl_report_exit_code(const prccsl_report* r) { return r ? r->report.exit_code : 4; }
const char* prccsl_report_json(const prccsl_report* r) { return r ? r->report.json.c_str() : ""; }
const char* prccsl_report_histogram_csv(const prccsl_report* r) { return r ? r->report.histogram_csv.c_str() : ""; }
const char* prccsl_report_trajectories_csv(const prccsl_report* r) {
  return r ? r->report.trajectories_csv.c_str() : "";
}
void prccsl_report_free(prccsl_report* report) { delete report; }

prccsl_status prccsl_export_av(const char* dir) {
  if (!dir) return null_argument("dir");
  return guarded([&] { prccsl::export_av_bundle(dir); });
}

}  // extern "C"
