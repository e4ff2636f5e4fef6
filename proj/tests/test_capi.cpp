#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include <unistd.h>

#include "prccsl/prccsl.h"

namespace {

namespace fs = std::filesystem;

const char* kModel = R"({"clocks": ["start", "done"], "automata": [{"name": "Task", "initial": "Idle",
  "locations": [{"name": "Idle", "invariant": 10}, {"name": "Busy", "invariant": 6}],
  "edges": [{"from": "Idle", "to": "Busy", "after": 10, "events": ["start"]},
            {"from": "Busy", "to": "Idle", "after": 2, "events": ["done"]}]}]})";

const char* kSpec = "clock start, done\n"
                    "Lat: e2e from start to done within 7\n"
                    "query Q1: hypothesis Lat bound 200\n"
                    "query Q2: expect max latency(start, done) bound 200 runs 20\n";

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("prccsl_capi_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

TEST(CApi, StatusNames) {
  EXPECT_STREQ(prccsl_status_name(PRCCSL_OK), "Ok");
  EXPECT_STREQ(prccsl_status_name(PRCCSL_E_SYNTAX), "SyntaxError");
  EXPECT_STREQ(prccsl_status_name(PRCCSL_E_IO), "Io");
  EXPECT_STREQ(prccsl_status_name(PRCCSL_E_INTERNAL), "Internal");
  EXPECT_NE(std::string(prccsl_version()), "");
}

TEST(CApi, ParseErrorPosition) {
  prccsl_spec* spec = nullptr;
  EXPECT_EQ(prccsl_spec_parse("clock a\n\nR: a causes ?\n", &spec), PRCCSL_E_SYNTAX);
  EXPECT_EQ(spec, nullptr);
  EXPECT_EQ(prccsl_last_error_line(), 3);
  EXPECT_EQ(prccsl_last_error_column(), 13);
  EXPECT_NE(std::string(prccsl_last_error_message()), "");
  EXPECT_EQ(prccsl_spec_parse("clock a\nR: a causes b\n", &spec), PRCCSL_E_UNDECLARED_CLOCK);
  EXPECT_EQ(prccsl_last_error_line(), 2);
}

TEST(CApi, ValidateCollectsAll) {
  char* diags = nullptr;
  size_t count = 0;
  ASSERT_EQ(prccsl_validate_text("clock a\nR: a causes b\nS: c excludes a\n", &diags, &count), PRCCSL_OK);
  EXPECT_EQ(count, 2u);
  const std::string text = diags;
  EXPECT_EQ(text.rfind("2: UndeclaredClock: ", 0), 0u);
  EXPECT_NE(text.find("\n3: UndeclaredClock: "), std::string::npos);
  prccsl_string_free(diags);
  ASSERT_EQ(prccsl_validate_text(kSpec, &diags, &count), PRCCSL_OK);
  EXPECT_EQ(count, 0u);
  EXPECT_STREQ(diags, "");
  prccsl_string_free(diags);
}

TEST(CApi, SpecQueriesAndPrint) {
  prccsl_spec* spec = nullptr;
  ASSERT_EQ(prccsl_spec_parse(kSpec, &spec), PRCCSL_OK);
  ASSERT_EQ(prccsl_spec_query_count(spec), 2u);
  EXPECT_STREQ(prccsl_spec_query_id(spec, 1), "Q2");
  EXPECT_EQ(prccsl_spec_query_id(spec, 2), nullptr);
  char* printed = nullptr;
  ASSERT_EQ(prccsl_spec_print(spec, &printed), PRCCSL_OK);
  prccsl_spec* again = nullptr;
  EXPECT_EQ(prccsl_spec_parse(printed, &again), PRCCSL_OK);
  prccsl_string_free(printed);
  prccsl_spec_free(again);
  prccsl_spec_free(spec);
}

TEST(CApi, CheckModelAndTraces) {
  prccsl_spec* spec = nullptr;
  prccsl_model* model = nullptr;
  ASSERT_EQ(prccsl_spec_parse(kSpec, &spec), PRCCSL_OK);
  ASSERT_EQ(prccsl_model_parse(kModel, &model), PRCCSL_OK);
  prccsl_check_options opts;
  prccsl_check_options_init(&opts);
  EXPECT_EQ(opts.seed, 42u);

  prccsl_report* live = nullptr;
  ASSERT_EQ(prccsl_check_model(spec, model, "Q1", &opts, &live), PRCCSL_OK);
  EXPECT_STREQ(prccsl_report_decision(live), "accept");
  EXPECT_STREQ(prccsl_report_kind(live), "hypothesis");
  EXPECT_STREQ(prccsl_report_query(live), "Q1");
  EXPECT_EQ(prccsl_report_exit_code(live), 0);
  EXPECT_EQ(std::string(prccsl_report_json(live)).front(), '{');

  const fs::path dir = scratch("traces");
  ASSERT_EQ(prccsl_simulate_to_dir(model, 42, 300, 250, 0, dir.c_str()), PRCCSL_OK);
  EXPECT_TRUE(fs::exists(dir / "run_000000.jsonl"));
  EXPECT_TRUE(fs::exists(dir / "run_000299.jsonl"));
  prccsl_report* traced = nullptr;
  ASSERT_EQ(prccsl_check_traces(spec, dir.c_str(), "Q1", &opts, &traced), PRCCSL_OK);
  EXPECT_STREQ(prccsl_report_decision(traced), prccsl_report_decision(live));

  prccsl_report* ev = nullptr;
  ASSERT_EQ(prccsl_check_traces(spec, dir.c_str(), "Q2", &opts, &ev), PRCCSL_OK);
  EXPECT_EQ(std::string(prccsl_report_histogram_csv(ev)).rfind("bin_lo,bin_hi,count\n", 0), 0u);
  EXPECT_STREQ(prccsl_report_trajectories_csv(ev), "");

  prccsl_report* none = nullptr;
  EXPECT_EQ(prccsl_check_model(spec, model, "Q9", &opts, &none), PRCCSL_E_UNKNOWN_QUERY);
  EXPECT_EQ(none, nullptr);

  prccsl_report_free(ev);
  prccsl_report_free(traced);
  prccsl_report_free(live);
  prccsl_model_free(model);
  prccsl_spec_free(spec);
  fs::remove_all(dir);
}

TEST(CApi, NullArgumentsRejected) {
  prccsl_spec* spec = nullptr;
  EXPECT_EQ(prccsl_spec_parse(nullptr, &spec), PRCCSL_E_BAD_PARAMETER);
  EXPECT_EQ(prccsl_spec_parse(kSpec, nullptr), PRCCSL_E_BAD_PARAMETER);
  EXPECT_EQ(prccsl_check_model(nullptr, nullptr, "Q1", nullptr, nullptr), PRCCSL_E_BAD_PARAMETER);
  EXPECT_EQ(prccsl_spec_query_count(nullptr), 0u);
  prccsl_spec_free(nullptr);
  prccsl_model_free(nullptr);
  prccsl_report_free(nullptr);
  prccsl_string_free(nullptr);
}

TEST(CApi, InvalidModelAndMissingFiles) {
  prccsl_model* model = nullptr;
  EXPECT_EQ(prccsl_model_parse("{\"automata\": 3}", &model), PRCCSL_E_INVALID_MODEL);
  EXPECT_EQ(prccsl_model_load("/nonexistent/model.json", &model), PRCCSL_E_IO);
  prccsl_spec* spec = nullptr;
  EXPECT_EQ(prccsl_spec_load("/nonexistent/spec.prccsl", &spec), PRCCSL_E_IO);

  ASSERT_EQ(prccsl_spec_parse("clock start, other\nR: start causes other\nquery Q: hypothesis R bound 10\n", &spec),
            PRCCSL_OK);
  ASSERT_EQ(prccsl_model_parse(kModel, &model), PRCCSL_OK);
  prccsl_report* r = nullptr;
  EXPECT_EQ(prccsl_check_model(spec, model, "Q", nullptr, &r), PRCCSL_E_INVALID_MODEL);
  prccsl_model_free(model);
  prccsl_spec_free(spec);
}

TEST(CApi, ExportAv) {
  const fs::path dir = scratch("av");
  ASSERT_EQ(prccsl_export_av(dir.c_str()), PRCCSL_OK);
  prccsl_spec* spec = nullptr;
  prccsl_model* model = nullptr;
  EXPECT_EQ(prccsl_spec_load((dir / "av.prccsl").c_str(), &spec), PRCCSL_OK);
  EXPECT_EQ(prccsl_model_load((dir / "av.model.json").c_str(), &model), PRCCSL_OK);
  EXPECT_TRUE(fs::exists(dir / "wcet.json"));
  EXPECT_GT(prccsl_spec_query_count(spec), 31u);
  prccsl_model_free(model);
  prccsl_spec_free(spec);
  fs::remove_all(dir);
}

}  // namespace
