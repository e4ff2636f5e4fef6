#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "prccsl/trace.hpp"

namespace prccsl {

// JSONL trace format. Line 1 is a header {"n":N,"clocks":[...]} (plus
// "deadlock_at" when flagged), followed by one {"step":i,"ticks":[...]} line
// for each step 0..n. Tick arrays follow the header's clock order.
std::string write_trace_jsonl(const Run& run);
Run read_trace_jsonl(std::string_view text);

void write_trace_file(const std::filesystem::path& path, const Run& run);
Run read_trace_file(const std::filesystem::path& path);

// File name used for run j inside an ensemble directory.
std::string trace_file_name(std::size_t j);

void write_trace_dir(const std::filesystem::path& dir, const std::vector<Run>& runs);
// Loads every *.jsonl file of `dir` in lexicographic file-name order.
std::vector<Run> read_trace_dir(const std::filesystem::path& dir);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace prccsl
