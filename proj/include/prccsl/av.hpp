#pragma once

#include <string>
#include <utility>
#include <vector>

#include "prccsl/spec.hpp"

namespace prccsl {

// The autonomous-vehicle case study shipped as data/av/: a model of the
// Camera, SignRecognition, Controller, VehicleDynamic, TrafficSign, Obstacle
// and Speed automata, the R1-R31 requirements with queries, and the WCET
// table. File contents are generated here so that the shipped copies can be
// checked against them.
struct AvBundle {
  std::string model_json;  // av.model.json
  std::string spec_text;   // av.prccsl
  std::string wcet_json;   // wcet.json
};

inline constexpr const char* kAvModelFile = "av.model.json";
inline constexpr const char* kAvSpecFile = "av.prccsl";
inline constexpr const char* kAvWcetFile = "wcet.json";

// Mean obstacle inter-arrival time in ms (exponential).
inline constexpr double kAvObstacleMeanMs = 600.0;

AvBundle build_av_bundle();

// The 31 requirement templates (R1..R31) of the bundled spec, in order.
std::vector<std::pair<std::string, ConstraintBody>> r_spec_table();

// Writes the three files into `dir` (created if needed). Throws Io.
void export_av_bundle(const std::string& dir);

}  // namespace prccsl
