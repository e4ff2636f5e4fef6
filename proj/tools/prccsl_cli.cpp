// prccsl command-line tool. Talks to the library only through prccsl.h.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "prccsl/prccsl.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;
constexpr const char* kSeedEnv = "PRCCSL_SEED";
constexpr std::uint64_t kDefaultSeed = 42;

// I/O failures map to 1; parse, validation and model errors to 2.
int report_error(prccsl_status s, const std::string& context) {
  std::cerr << "error: ";
  if (!context.empty()) std::cerr << context;
  const int line = prccsl_last_error_line();
  if (line > 0) std::cerr << ":" << line << ":" << prccsl_last_error_column();
  if (!context.empty() || line > 0) std::cerr << ": ";
  std::cerr << prccsl_status_name(s) << ": " << prccsl_last_error_message() << "\n";
  return s == PRCCSL_E_IO ? kExitIo : kExitInvalid;
}

bool write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) {
    std::cerr << "error: cannot write " << path.string() << "\n";
    return false;
  }
  return true;
}

bool ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) std::cerr << "error: cannot create " << dir << ": " << ec.message() << "\n";
  return !ec;
}

std::optional<std::uint64_t> env_seed() {
  const char* v = std::getenv(kSeedEnv);
  if (!v || !*v) return kDefaultSeed;
  try {
    std::size_t used = 0;
    const unsigned long long s = std::stoull(v, &used);
    if (used != std::string(v).size()) return std::nullopt;
    return s;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

struct Args {
  std::string spec, model, traces, query, out;
  std::size_t runs = 0;
  std::int64_t bound = 0;  // check: 0 keeps the query's bound
  std::int64_t sim_bound = 3000;
  std::uint64_t seed = kDefaultSeed;
  double alpha = 0, beta = 0, delta = 0, epsilon = 0;
  std::size_t jobs = 0;
};

int cmd_validate(const Args& a) {
  std::ifstream in(a.spec, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << a.spec << "\n";
    return kExitIo;
  }
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  char* diags = nullptr;
  std::size_t count = 0;
  const prccsl_status s = prccsl_validate_text(text.c_str(), &diags, &count);
  if (s != PRCCSL_OK) return report_error(s, a.spec);
  const std::string joined(diags);
  prccsl_string_free(diags);
  if (count == 0) {
    std::cout << a.spec << ": ok\n";
    return kExitOk;
  }
  std::size_t start = 0;
  while (start < joined.size()) {
    const std::size_t end = joined.find('\n', start);
    std::cerr << a.spec << ":" << joined.substr(start, end - start) << "\n";
    start = end + 1;
  }
  return kExitInvalid;
}

int cmd_simulate(const Args& a) {
  prccsl_model* model = nullptr;
  prccsl_status s = prccsl_model_load(a.model.c_str(), &model);
  if (s != PRCCSL_OK) return report_error(s, a.model);
  s = prccsl_simulate_to_dir(model, a.seed, a.runs, a.sim_bound, a.jobs, a.out.c_str());
  prccsl_model_free(model);
  if (s != PRCCSL_OK) return report_error(s, "");
  std::cout << "wrote " << a.runs << " trace(s) to " << a.out << "\n";
  return kExitOk;
}

int cmd_check(const Args& a) {
  prccsl_spec* spec = nullptr;
  prccsl_status s = prccsl_spec_load(a.spec.c_str(), &spec);
  if (s != PRCCSL_OK) return report_error(s, a.spec);

  prccsl_check_options o;
  prccsl_check_options_init(&o);
  o.seed = a.seed;
  o.jobs = a.jobs;
  o.bound = a.bound;
  o.runs = a.runs;
  o.alpha = a.alpha;
  o.beta = a.beta;
  o.delta = a.delta;
  o.epsilon = a.epsilon;

  prccsl_report* report = nullptr;
  if (!a.model.empty()) {
    prccsl_model* model = nullptr;
    s = prccsl_model_load(a.model.c_str(), &model);
    if (s != PRCCSL_OK) {
      prccsl_spec_free(spec);
      return report_error(s, a.model);
    }
    s = prccsl_check_model(spec, model, a.query.c_str(), &o, &report);
    prccsl_model_free(model);
  } else {
    s = prccsl_check_traces(spec, a.traces.c_str(), a.query.c_str(), &o, &report);
  }
  prccsl_spec_free(spec);
  if (s != PRCCSL_OK) return report_error(s, "");

  const std::string json = prccsl_report_json(report);
  const std::string hist = prccsl_report_histogram_csv(report);
  const std::string traj = prccsl_report_trajectories_csv(report);
  const std::string id = prccsl_report_query(report);
  const int code = prccsl_report_exit_code(report);
  prccsl_report_free(report);

  std::cout << json << "\n";
  if (!a.out.empty()) {
    if (!ensure_dir(a.out)) return kExitIo;
    const std::filesystem::path dir(a.out);
    if (!write_file(dir / (id + ".json"), json + "\n")) return kExitIo;
    if (!hist.empty() && !write_file(dir / (id + ".histogram.csv"), hist)) return kExitIo;
    if (!traj.empty() && !write_file(dir / (id + ".trajectories.csv"), traj)) return kExitIo;
  }
  return code;
}

int cmd_export_av(const Args& a) {
  const prccsl_status s = prccsl_export_av(a.out.c_str());
  if (s != PRCCSL_OK) return report_error(s, a.out);
  std::cout << "wrote av.model.json, av.prccsl, wcet.json to " << a.out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prccsl: probabilistic clock-constraint checking over stochastic timed automata"};
  app.require_subcommand(1);
  Args a;
  const std::optional<std::uint64_t> seed = env_seed();
  if (!seed) {
    std::cerr << "error: " << kSeedEnv << " must be an unsigned integer\n";
    return kExitIo;
  }
  a.seed = *seed;
  const std::string seed_help = std::string("master seed (default: $") + kSeedEnv + " or 42)";

  auto* validate = app.add_subcommand("validate", "parse and validate a spec file");
  validate->add_option("--spec", a.spec, "spec file")->required();

  auto* simulate = app.add_subcommand("simulate", "write simulated runs as JSONL traces");
  simulate->add_option("--model", a.model, "model JSON file")->required();
  simulate->add_option("--runs", a.runs, "number of runs")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--bound", a.sim_bound, "last step of each run")->capture_default_str()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", a.seed, seed_help);
  simulate->add_option("--jobs", a.jobs, "worker threads (0: all cores)");
  simulate->add_option("--out", a.out, "output directory")->required();

  auto* check = app.add_subcommand("check", "run one query of a spec");
  check->add_option("--spec", a.spec, "spec file")->required();
  auto* model_opt = check->add_option("--model", a.model, "model JSON file for live simulation");
  auto* traces_opt = check->add_option("--traces", a.traces, "directory of JSONL traces");
  model_opt->excludes(traces_opt);
  check->add_option("--query", a.query, "query id")->required();
  check->add_option("--runs", a.runs, "run count or run cap")->check(CLI::PositiveNumber);
  check->add_option("--bound", a.bound, "time bound override")->check(CLI::PositiveNumber);
  check->add_option("--seed", a.seed, seed_help);
  check->add_option("--alpha", a.alpha, "type I error / 1 - confidence")->check(CLI::Range(0.0, 1.0));
  check->add_option("--beta", a.beta, "type II error")->check(CLI::Range(0.0, 1.0));
  check->add_option("--delta", a.delta, "indifference half-width")->check(CLI::Range(0.0, 1.0));
  check->add_option("--epsilon", a.epsilon, "estimate half-width")->check(CLI::Range(0.0, 1.0));
  check->add_option("--jobs", a.jobs, "worker threads (0: all cores)");
  check->add_option("--out", a.out, "directory for the report and CSV files");

  auto* export_av = app.add_subcommand("export-av", "write the bundled autonomous-vehicle case");
  export_av->add_option("--out", a.out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitIo;
  }

  if (validate->parsed()) return cmd_validate(a);
  if (simulate->parsed()) return cmd_simulate(a);
  if (export_av->parsed()) return cmd_export_av(a);
  if (a.model.empty() == a.traces.empty()) {
    std::cerr << "error: check needs exactly one of --model or --traces\n";
    return kExitIo;
  }
  return cmd_check(a);
}
