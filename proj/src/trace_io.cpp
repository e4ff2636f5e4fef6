#include "prccsl/trace_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "prccsl/error.hpp"

namespace prccsl {

namespace {

using nlohmann::json;

void append_string_array(std::string& out, const std::vector<const std::string*>& names) {
  out += '[';
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ',';
    out += json(*names[i]).dump();
  }
  out += ']';
}

json parse_line(std::string_view line, std::size_t line_no) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SyntaxError, "trace line " + std::to_string(line_no) + ": " + e.what(),
                static_cast<int>(line_no));
  }
}

std::vector<std::string> string_array(const json& value, const char* what, std::size_t line_no) {
  if (!value.is_array()) {
    throw Error(ErrorCode::SyntaxError, std::string("trace: '") + what + "' must be an array",
                static_cast<int>(line_no));
  }
  std::vector<std::string> out;
  for (const auto& item : value) {
    if (!item.is_string()) {
      throw Error(ErrorCode::SyntaxError, std::string("trace: '") + what + "' must hold strings",
                  static_cast<int>(line_no));
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

std::string write_trace_jsonl(const Run& run) {
  std::string out;
  std::vector<const std::string*> names;
  for (const auto& c : run.clocks()) names.push_back(&c.name());
  out += "{\"n\":" + std::to_string(run.n()) + ",\"clocks\":";
  append_string_array(out, names);
  if (run.deadlock_step()) out += ",\"deadlock_at\":" + std::to_string(*run.deadlock_step());
  out += "}\n";

  std::vector<std::size_t> cursor(run.clocks().size(), 0);
  std::vector<const TickList*> lists;
  for (const auto& c : run.clocks()) lists.push_back(&run.ticks(c));
  for (Step i = 0; i <= run.n(); ++i) {
    names.clear();
    for (std::size_t c = 0; c < lists.size(); ++c) {
      const TickList& list = *lists[c];
      if (cursor[c] < list.size() && list[cursor[c]] == i) {
        names.push_back(&run.clocks()[c].name());
        ++cursor[c];
      }
    }
    out += "{\"step\":" + std::to_string(i) + ",\"ticks\":";
    append_string_array(out, names);
    out += "}\n";
  }
  return out;
}

Run read_trace_jsonl(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw Error(ErrorCode::SyntaxError, "trace: missing header line", 1);

  const json header = parse_line(lines[0], 1);
  if (!header.is_object() || !header.contains("n") || !header["n"].is_number_integer() ||
      !header.contains("clocks")) {
    throw Error(ErrorCode::SyntaxError, "trace: header needs integer 'n' and 'clocks'", 1);
  }
  const Step n = header["n"].get<Step>();
  if (n < 0) throw Error(ErrorCode::IndexOutOfRange, "trace: negative n");
  std::vector<ClockId> declared;
  std::map<ClockId, TickList> ticks;
  for (auto& name : string_array(header["clocks"], "clocks", 1)) {
    declared.emplace_back(name);
    ticks[declared.back()];
  }
  if (static_cast<Step>(lines.size()) != n + 2) {
    throw Error(ErrorCode::SyntaxError,
                "trace: expected " + std::to_string(n + 1) + " step lines, found " + std::to_string(lines.size() - 1));
  }
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const json step = parse_line(lines[l], l + 1);
    const Step expected = static_cast<Step>(l) - 1;
    if (!step.is_object() || !step.contains("step") || !step["step"].is_number_integer() ||
        step["step"].get<Step>() != expected || !step.contains("ticks")) {
      throw Error(ErrorCode::SyntaxError, "trace: line " + std::to_string(l + 1) + " must be step " +
                                              std::to_string(expected), static_cast<int>(l + 1));
    }
    for (auto& name : string_array(step["ticks"], "ticks", l + 1)) {
      auto it = ticks.find(ClockId(name));
      if (it == ticks.end()) throw Error(ErrorCode::UnknownClock, "trace: undeclared clock '" + name + "'");
      if (!it->second.empty() && it->second.back() == expected) {
        throw Error(ErrorCode::SyntaxError, "trace: clock '" + name + "' listed twice at one step",
                    static_cast<int>(l + 1));
      }
      it->second.push_back(expected);
    }
  }
  Run run(std::move(declared), std::move(ticks), n);
  if (header.contains("deadlock_at")) {
    if (!header["deadlock_at"].is_number_integer()) {
      throw Error(ErrorCode::SyntaxError, "trace: 'deadlock_at' must be an integer", 1);
    }
    run = run.with_deadlock(header["deadlock_at"].get<Step>());
  }
  return run;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
}

void write_trace_file(const std::filesystem::path& path, const Run& run) {
  write_text_file(path, write_trace_jsonl(run));
}

Run read_trace_file(const std::filesystem::path& path) { return read_trace_jsonl(read_text_file(path)); }

std::string trace_file_name(std::size_t j) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "run_%06zu.jsonl", j);
  return buf;
}

void write_trace_dir(const std::filesystem::path& dir, const std::vector<Run>& runs) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create '" + dir.string() + "': " + ec.message());
  for (std::size_t j = 0; j < runs.size(); ++j) write_trace_file(dir / trace_file_name(j), runs[j]);
}

std::vector<Run> read_trace_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw Error(ErrorCode::Io, "not a directory: '" + dir.string() + "'");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
  std::vector<Run> runs;
  runs.reserve(files.size());
  for (const auto& f : files) {
    try {
      runs.push_back(read_trace_file(f));
    } catch (const Error& e) {
      throw Error(e.code(), f.filename().string() + ": " + e.what(), e.line(), e.column());
    }
  }
  return runs;
}

}  // namespace prccsl
