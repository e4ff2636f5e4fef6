#include "prccsl/av.hpp"

#include <filesystem>
#include <initializer_list>
#include <optional>
#include <vector>

#include "json.hpp"
#include "prccsl/error.hpp"
#include "prccsl/trace_io.hpp"

namespace prccsl {

namespace {

using nlohmann::ordered_json;

constexpr int kWcetCamera = 30;
constexpr int kWcetSignRecognition = 150;
constexpr int kWcetController = 150;
constexpr int kWcetVehicleDynamic = 100;

struct EdgeSpec {
  const char* from;
  const char* to;
  double after = 0;
  std::vector<const char*> events = {};
  const char* guard = nullptr;
  const char* update = nullptr;
  bool reset = true;
  double weight = 1;
  const char* emit = nullptr;
  const char* receive = nullptr;
};

ordered_json location(const char* name, std::optional<double> invariant = std::nullopt,
                      std::optional<double> rate = std::nullopt) {
  ordered_json l;
  l["name"] = name;
  if (invariant) l["invariant"] = *invariant;
  if (rate) l["rate"] = *rate;
  return l;
}

ordered_json edge(const EdgeSpec& s) {
  ordered_json e;
  e["from"] = s.from;
  e["to"] = s.to;
  if (s.after != 0) e["after"] = s.after;
  if (s.guard) e["guard"] = s.guard;
  if (s.update) e["update"] = s.update;
  if (!s.reset) e["reset"] = false;
  if (s.weight != 1) e["weight"] = s.weight;
  if (s.emit) e["emit"] = s.emit;
  if (s.receive) e["receive"] = s.receive;
  if (s.events.size() > 0) {
    ordered_json ev = ordered_json::array();
    for (const char* c : s.events) ev.push_back(c);
    e["events"] = ev;
  }
  return e;
}

ordered_json automaton(const char* name, const char* initial, std::initializer_list<ordered_json> locations,
                       std::initializer_list<EdgeSpec> edges) {
  ordered_json a;
  a["name"] = name;
  a["initial"] = initial;
  a["locations"] = ordered_json::array();
  for (const auto& l : locations) a["locations"].push_back(l);
  a["edges"] = ordered_json::array();
  for (const auto& e : edges) a["edges"].push_back(edge(e));
  return a;
}

ordered_json av_model() {
  ordered_json m;
  m["clocks"] = {"cmrTrig",   "cmrOut",        "signTrig",       "imIn",       "signOut",   "DetectLeftSign",
                 "DetectRightSign", "DetectStopSign", "ctrlIn", "signIn",     "signType",  "speed",
                 "direct",    "gear",          "torque",         "ctrlOut",    "reqTorq",   "reqDirect",
                 "reqGear",   "reqBrake",      "vdIn",           "vdOut",      "spOut",     "directOut",
                 "gearOut",   "torqueOut",     "StartTurnLeft",  "StartTurnRight", "StartBrake", "Stop",
                 "turnLeft",  "rightOn",       "veBrake",        "veAcc",      "veRun",     "tLeft",
                 "tRight",    "obstc",         "emgcy",          "obsDetect",  "spUpdate", "signEmit"};
  // sign: 0 none, 1 left, 2 right, 3 stop. mode: 0 normal, 1 emergency.
  m["variables"] = {{"sign", 0}, {"signType", 0}, {"recog", 0}, {"cmd", 0},
                    {"vdcmd", 0}, {"mode", 0}, {"obstacle", 0}};
  m["channels"] = {{"sig", ordered_json::array()}, {"vdreq", ordered_json::array()}, {"emg", ordered_json::array()}};

  ordered_json automata = ordered_json::array();
  automata.push_back(automaton(
      "TrafficSign", "Show", {location("Show", 8.0)},
      {{.from = "Show", .to = "Show", .after = 4, .events = {"signEmit"}, .update = "sign = 0", .weight = 4},
       {.from = "Show", .to = "Show", .after = 4, .events = {"signEmit"}, .update = "sign = 1", .weight = 2},
       {.from = "Show", .to = "Show", .after = 4, .events = {"signEmit"}, .update = "sign = 2", .weight = 2},
       {.from = "Show", .to = "Show", .after = 4, .events = {"signEmit"}, .update = "sign = 3", .weight = 2}}));
  automata.push_back(automaton(
      "Camera", "Init", {location("Init", 49.0), location("Exec", 30.0), location("Wait", 50.0)},
      {{.from = "Init", .to = "Exec", .after = 49, .events = {"cmrTrig"}},
       {.from = "Exec", .to = "Wait", .after = 20, .events = {"cmrOut"}, .update = "signType = sign", .reset = false},
       {.from = "Wait", .to = "Exec", .after = 50, .events = {"cmrTrig"}}}));
  automata.push_back(automaton(
      "SignRecognition", "Init", {location("Init", 199.0), location("Exec", 150.0), location("Wait", 200.0)},
      {{.from = "Init", .to = "Exec", .after = 199, .events = {"signTrig", "imIn"}, .update = "recog = signType"},
       {.from = "Exec", .to = "Wait", .after = 100, .events = {"signOut"}, .guard = "recog == 0", .reset = false,
        .emit = "sig"},
       {.from = "Exec", .to = "Wait", .after = 100, .events = {"signOut", "DetectLeftSign"}, .guard = "recog == 1",
        .reset = false, .emit = "sig"},
       {.from = "Exec", .to = "Wait", .after = 100, .events = {"signOut", "DetectRightSign"}, .guard = "recog == 2",
        .reset = false, .emit = "sig"},
       {.from = "Exec", .to = "Wait", .after = 100, .events = {"signOut", "DetectStopSign"}, .guard = "recog == 3",
        .reset = false, .emit = "sig"},
       {.from = "Wait", .to = "Exec", .after = 200, .events = {"signTrig", "imIn"}, .update = "recog = signType"}}));
  automata.push_back(automaton(
      "Controller", "Idle",
      {location("Idle"), location("Read1", 5.0), location("Read2", 10.0), location("Read3", 15.0),
       location("Read4", 20.0), location("Exec", 150.0), location("Req1", 0.5), location("Req2", 1.0),
       location("Req3", 1.5), location("Req4", 2.0)},
      {{.from = "Idle", .to = "Read1", .events = {"ctrlIn", "signIn", "signType"}, .update = "cmd = recog",
        .receive = "sig"},
       {.from = "Read1", .to = "Read2", .after = 1, .events = {"speed"}, .reset = false},
       {.from = "Read2", .to = "Read3", .after = 2, .events = {"direct"}, .reset = false},
       {.from = "Read3", .to = "Read4", .after = 3, .events = {"gear"}, .reset = false},
       {.from = "Read4", .to = "Exec", .after = 4, .events = {"torque"}, .reset = false},
       {.from = "Exec", .to = "Req1", .after = 100, .events = {"ctrlOut"}, .guard = "cmd == 0"},
       {.from = "Exec", .to = "Req1", .after = 100, .events = {"ctrlOut", "StartTurnLeft", "turnLeft"},
        .guard = "cmd == 1"},
       {.from = "Exec", .to = "Req1", .after = 100, .events = {"ctrlOut", "StartTurnRight", "rightOn"},
        .guard = "cmd == 2"},
       {.from = "Exec", .to = "Req1", .after = 100, .events = {"ctrlOut", "StartBrake", "veBrake"},
        .guard = "cmd == 3"},
       {.from = "Req1", .to = "Req2", .after = 0.1, .events = {"reqTorq"}, .reset = false},
       {.from = "Req2", .to = "Req3", .after = 0.2, .events = {"reqDirect"}, .reset = false},
       {.from = "Req3", .to = "Req4", .after = 0.3, .events = {"reqGear"}, .reset = false},
       {.from = "Req4", .to = "Idle", .after = 0.4, .events = {"reqBrake"}, .reset = false, .emit = "vdreq"}}));
  automata.push_back(automaton(
      "VehicleDynamic", "Idle",
      {location("Idle"), location("Exec", 100.0), location("Out1", 1.0), location("Out2", 2.0),
       location("Out3", 3.0)},
      {{.from = "Idle", .to = "Exec", .events = {"vdIn"}, .update = "vdcmd = cmd", .receive = "vdreq"},
       {.from = "Exec", .to = "Out1", .after = 50, .events = {"vdOut", "spOut"}, .guard = "vdcmd != 3"},
       {.from = "Exec", .to = "Out1", .after = 50, .events = {"vdOut", "spOut", "Stop"}, .guard = "vdcmd == 3"},
       {.from = "Out1", .to = "Out2", .after = 0.2, .events = {"directOut"}, .reset = false},
       {.from = "Out2", .to = "Out3", .after = 0.4, .events = {"gearOut"}, .reset = false},
       {.from = "Out3", .to = "Idle", .after = 0.6, .events = {"torqueOut"}, .reset = false}}));
  automata.push_back(automaton(
      "Obstacle", "Road", {location("Road", std::nullopt, 1.0 / kAvObstacleMeanMs)},
      {{.from = "Road", .to = "Road", .update = "obstacle = 1"}}));
  const auto port_edges = [](const char* from, double after) {
    return std::vector<EdgeSpec>{
        {.from = from, .to = "Loop", .after = after, .events = {"obsDetect"}, .guard = "obstacle == 0"},
        {.from = from, .to = "Loop", .after = after, .events = {"obsDetect", "obstc", "emgcy", "veBrake"},
         .guard = "obstacle == 1 && mode == 0", .update = "obstacle = 0; mode = 1", .emit = "emg"},
        {.from = from, .to = "Loop", .after = after, .events = {"obsDetect"}, .guard = "obstacle == 1 && mode == 1",
         .update = "obstacle = 0"}};
  };
  {
    ordered_json port = automaton("ObstaclePort", "Init", {location("Init", 39.0), location("Loop", 40.0)}, {});
    for (const auto& e : port_edges("Init", 39)) port["edges"].push_back(edge(e));
    for (const auto& e : port_edges("Loop", 40)) port["edges"].push_back(edge(e));
    automata.push_back(port);
  }
  automata.push_back(automaton(
      "Emergency", "Idle", {location("Idle"), location("Hold", 600.0)},
      {{.from = "Idle", .to = "Hold", .receive = "emg"},
       {.from = "Hold", .to = "Idle", .after = 510, .events = {"veRun"}, .update = "mode = 0", .weight = 4},
       {.from = "Hold", .to = "Idle", .after = 510, .events = {"veRun", "veAcc"}, .update = "mode = 0", .weight = 2},
       {.from = "Hold", .to = "Idle", .after = 510, .events = {"veRun", "tLeft"}, .update = "mode = 0"},
       {.from = "Hold", .to = "Idle", .after = 510, .events = {"veRun", "tRight"}, .update = "mode = 0"}}));
  automata.push_back(automaton(
      "Speed", "Init", {location("Init", 29.0), location("Loop", 30.0)},
      {{.from = "Init", .to = "Loop", .after = 29, .events = {"spUpdate"}},
       {.from = "Loop", .to = "Loop", .after = 30, .events = {"spUpdate"}}}));
  m["automata"] = automata;
  return m;
}

constexpr const char* kAvSpec = R"(# Autonomous vehicle with traffic sign recognition: requirements R1-R31.
# Every event is a clock of the bundled model; ms is the 1 ms universal clock.

clock cmrTrig, cmrOut, signTrig, imIn, signOut, DetectLeftSign, DetectRightSign, DetectStopSign
clock ctrlIn, signIn, signType, speed, direct, gear, torque, ctrlOut
clock reqTorq, reqDirect, reqGear, reqBrake, vdIn, vdOut, spOut, directOut
clock gearOut, torqueOut, StartTurnLeft, StartTurnRight, StartBrake, Stop, turnLeft, rightOn
clock veBrake, veAcc, veRun, tLeft, tRight, obstc, emgcy, obsDetect
clock spUpdate

# Worst-case execution times (ms), mirrored in wcet.json.
const W_cmr = 30
const W_sr = 150
const W_ctrl = 150
const W_vd = 100

let sup_ctrl = sup(speed, signType, direct, gear, torque)
let inf_ctrl = inf(speed, signType, direct, gear, torque)
let dinf_ctrl = {inf_ctrl delayFor 40 on ms}

# Periodic
R1: periodic cmrTrig period 50 prob 0.95
R2: signTrig subclock cmrTrig prob 0.95
R3: periodic obsDetect period 40 prob 0.95
R4: periodic spUpdate period 30 prob 0.95

# Execution
R5: execution from imIn to signOut within [100, 150] prob 0.95
R6: execution from cmrTrig to cmrOut within [20, 30] prob 0.95
R7: execution from ctrlIn to ctrlOut within [100, 150] prob 0.95
R8: execution from vdIn to vdOut within [50, 100] prob 0.95

# Sporadic
R9: sporadic from obstc to veRun min 500 prob 0.95
R10: sporadic from obstc to veAcc min 500 prob 0.95
R11: sporadic from obstc to tLeft min 500 prob 0.95
R12: sporadic from obstc to tRight min 500 prob 0.95

# Synchronization
R13: sync speed, signType, direct, gear, torque tolerance 40 prob 0.95
R14: sync reqTorq, reqDirect, reqGear, reqBrake tolerance 30 prob 0.95
R15: sync reqTorq, reqDirect, reqGear, reqBrake tolerance 40 prob 0.95
R16: sync spOut, directOut, gearOut, torqueOut tolerance 40 prob 0.95

# End-to-end
R17: e2e from signIn to spOut within [150, 250] prob 0.95
R18: e2e from cmrTrig to signOut within [120, 180] prob 0.95
R19: e2e from cmrTrig to spOut within [270, 430] prob 0.95
R20: e2e from DetectLeftSign to StartTurnLeft within 500 prob 0.95
R21: e2e from DetectRightSign to StartTurnRight within 500 prob 0.95
# The braking requirement states 200 ms; a 500 ms variant also circulates. 200 is used.
R22: e2e from DetectStopSign to StartBrake within 200 prob 0.95
R23: e2e from DetectStopSign to Stop within 3000 prob 0.95

# Comparison
R24: comparison on signIn bound 250 budget (W_ctrl + W_vd) prob 0.95
R25: comparison on cmrTrig bound 180 budget (W_cmr + W_sr) prob 0.95
R26: comparison on cmrTrig bound 430 budget (W_cmr + W_sr + W_ctrl + W_vd) prob 0.95

# Exclusion
R27: exclusion turnLeft, rightOn prob 0.95
R28: exclusion veAcc, veBrake prob 0.95
R29: exclusion emgcy, turnLeft prob 0.95
R30: exclusion emgcy, rightOn prob 0.95
R31: exclusion emgcy, veAcc prob 0.95

# Halves of the SignRecognition execution window, for the comparison query.
SRfast: execution from imIn to signOut within [100, 125] prob 0.95
SRslow: execution from imIn to signOut within [125, 150] prob 0.95

query HT1: hypothesis R1 bound 3000
query PE1: estimate R1 bound 3000
query EV1: expect max gap(cmrTrig) bound 3000 runs 100
query HT2: hypothesis R2 bound 3000
query HT3: hypothesis R3 bound 3000
query HT4: hypothesis R4 bound 3000
query HT5: hypothesis R5 bound 3000
query PC5: compare SRfast bound 400 with SRslow bound 400 ratio 1.1
query HT6: hypothesis R6 bound 3000
query PE6: estimate R6 bound 3000
query HT7: hypothesis R7 bound 3000
query HT8: hypothesis R8 bound 3000
query HT9: hypothesis R9 bound 3000
query PE9: estimate R9 bound 3000
query EV9: expect max gap(obstc) bound 3000 runs 500
query HT10: hypothesis R10 bound 3000
query HT11: hypothesis R11 bound 3000
query HT12: hypothesis R12 bound 3000
query HT13: hypothesis R13 bound 3000
query PE13: estimate always (h(dinf_ctrl) <= h(sup_ctrl)) bound 3000
query SI13: simulate 2 bound 3000 { h(inf_ctrl), h(sup_ctrl), h(dinf_ctrl) }
query HT14: hypothesis R14 bound 3000
query HT15: hypothesis R15 bound 3000
query HT16: hypothesis R16 bound 3000
query HT17: hypothesis R17 bound 3000
query EV17: expect max latency(signIn, spOut) bound 3000 runs 500
query HT18: hypothesis R18 bound 3000
query HT19: hypothesis R19 bound 3000
query HT20: hypothesis R20 bound 3000
query HT21: hypothesis R21 bound 3000
query HT22: hypothesis R22 bound 3000
query HT23: hypothesis R23 bound 3000
query HT24: hypothesis R24 bound 3000
query HT25: hypothesis R25 bound 3000
query HT26: hypothesis R26 bound 3000
query HT27: hypothesis R27 bound 3000
query PE27: estimate always (!(t(turnLeft) == 1 && t(rightOn) == 1)) bound 3000
query SI27: simulate 2 bound 3000 { t(rightOn), t(turnLeft) }
query HT28: hypothesis R28 bound 3000
query HT29: hypothesis R29 bound 3000
query HT30: hypothesis R30 bound 3000
query HT31: hypothesis R31 bound 3000
)";

}  // namespace

AvBundle build_av_bundle() {
  AvBundle b;
  b.model_json = av_model().dump(2) + "\n";
  b.spec_text = kAvSpec;
  ordered_json wcet;
  wcet["W_cmr"] = kWcetCamera;
  wcet["W_sr"] = kWcetSignRecognition;
  wcet["W_ctrl"] = kWcetController;
  wcet["W_vd"] = kWcetVehicleDynamic;
  b.wcet_json = wcet.dump(2) + "\n";
  return b;
}

std::vector<std::pair<std::string, ConstraintBody>> r_spec_table() {
  const SpecFile spec = parse_spec(kAvSpec);
  std::vector<std::pair<std::string, ConstraintBody>> out;
  for (int r = 1; r <= 31; ++r) {
    const std::string id = "R" + std::to_string(r);
    const Constraint* c = spec.find_constraint(id);
    if (!c) throw Error(ErrorCode::UnknownConstraint, "bundled spec lacks " + id);
    out.emplace_back(id, c->body);
  }
  return out;
}

void export_av_bundle(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + dir + ": " + ec.message());
  const AvBundle b = build_av_bundle();
  const std::filesystem::path root(dir);
  write_text_file((root / kAvModelFile).string(), b.model_json);
  write_text_file((root / kAvSpecFile).string(), b.spec_text);
  write_text_file((root / kAvWcetFile).string(), b.wcet_json);
}

}  // namespace prccsl
