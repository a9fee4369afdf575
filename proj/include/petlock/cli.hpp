#pragma once

// Scenario commands. Each command reads one scenario, writes its artifacts to
// an output directory and returns a process exit code:
//   0 ok, 1 usage or I/O, 2 schema violation, 3 analysis error.
// Failures also leave error.json in the output directory.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "petlock/assembly_graph.hpp"
#include "petlock/coupling_fsm.hpp"
#include "petlock/error.hpp"
#include "petlock/face_capture.hpp"
#include "petlock/lock_mechanism.hpp"
#include "petlock/power_data_bus.hpp"
#include "petlock/scenario.hpp"
#include "petlock/structural_loads.hpp"

namespace petlock::cli {

using scenario::json;

enum class ExitCode : int { ok = 0, usage = 1, schema = 2, analysis = 3 };

struct RunOptions {
  std::string command;
  std::string scenario_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::optional<double> resolution_deg;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"mechanism", "envelope", "calibrate",
                                              "couple",    "loads",    "assembly"};
  return names;
}

enum class LogLevel { quiet, info, debug };

inline LogLevel log_level() {
  const char* v = std::getenv("PETLOCK_LOG");
  if (!v) return LogLevel::quiet;
  const std::string s(v);
  if (s == "debug") return LogLevel::debug;
  if (s == "info") return LogLevel::info;
  return LogLevel::quiet;
}

inline void log(LogLevel level, const std::string& msg) {
  if (level <= log_level() && level != LogLevel::quiet) std::cerr << "[petlock] " << msg << "\n";
}

// Shortest round-trip decimal form; the same bits always print the same text.
inline std::string num(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : width_(header.size()) { row(header); }

  void row(const std::vector<std::string>& cells) {
    require(cells.size() == width_, ErrorKind::parameter, "csv row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  std::string str() const { return out_.str(); }

 private:
  std::size_t width_;
  std::ostringstream out_;
};

class Artifacts {
 public:
  explicit Artifacts(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void text(const std::string& name, const std::string& content) const {
    std::ofstream f(dir_ / name, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(f), ErrorKind::parameter, "cannot write " + (dir_ / name).string());
    f << content;
  }

  void json_file(const std::string& name, const json& j) const { text(name, j.dump(2) + "\n"); }

 private:
  std::filesystem::path dir_;
};

inline std::string jsonl(const std::vector<json>& records) {
  std::string s;
  for (const auto& r : records) s += r.dump() + "\n";
  return s;
}

inline std::string flag(bool b) { return b ? "true" : "false"; }

template <class T>
const T& section(const std::optional<T>& s, const char* name) {
  if (!s) throw scenario::SchemaError(name, "section required by this command is missing");
  return *s;
}

// ---------------------------------------------------------------------------
// Commands

inline void run_mechanism(const scenario::Scenario& sc, const Artifacts& out) {
  const auto& m = section(sc.mechanism, "mechanism");
  const lock::Movability mov = lock::movability(m.params);
  json report;
  report["movability"] = {{"margin", mov.margin},
                          {"normalized_rhs", mov.normalized_rhs},
                          {"movable", mov.movable}};
  report["self_locking"] = {{"mu_rail", m.mu_rail},
                            {"beta_deg", m.params.beta_deg},
                            {"threshold", std::tan(deg_to_rad(m.params.beta_deg))},
                            {"self_locking", lock::self_locking(m.params, m.mu_rail)}};
  report["params"] = {{"mu1", m.params.mu1},
                      {"mu2", m.params.mu2},
                      {"theta_deg", m.params.theta_deg},
                      {"pin_count", m.params.pin_count},
                      {"stroke_mm", m.params.stroke_mm},
                      {"rod_speed_mm_s", m.params.rod_speed_mm_s},
                      {"rod_force_capacity_N", m.params.rod_force_capacity_N}};
  json strokes = json::object();
  if (mov.movable) {
    for (auto dir : {lock::StrokeDirection::locking, lock::StrokeDirection::unlocking}) {
      const lock::StrokeTrace tr = lock::simulate_stroke(m.params, m.resistance.profile(), dir, m.dt_s);
      CsvWriter csv({"time_s", "rod_position_mm", "pin_radial_mm", "pin_contact_force_N", "rod_force_N"});
      double peak = 0.0;
      for (const auto& s : tr.samples) {
        csv.row({num(s.time_s), num(s.rod_position_mm), num(s.pin_radial_mm),
                 num(s.pin_contact_force_N), num(s.rod_force_N)});
        peak = std::max(peak, s.rod_force_N);
      }
      const std::string name = std::string("stroke_") + lock::direction_name(dir) + ".csv";
      out.text(name, csv.str());
      strokes[lock::direction_name(dir)] = {{"samples", tr.samples.size()},
                                            {"duration_s", tr.samples.back().time_s},
                                            {"peak_rod_force_N", peak},
                                            {"csv", name}};
    }
  } else {
    report["warnings"].push_back("mechanism is not movable; no stroke simulated");
  }
  report["strokes"] = strokes;
  out.json_file("mechanism_report.json", report);
}

inline json envelope_json(const face::Envelope& env, double resolution, double tol) {
  return {{"translation_limit_mm", env.translation_limit_mm},
          {"rotation_limit_deg", env.rotation_limit_deg},
          {"deflection_limit_deg", env.deflection_limit_deg},
          {"resolution_deg", resolution},
          {"tol", tol}};
}

inline std::string sweep_csv(const face::Envelope& env) {
  CsvWriter csv({"axis", "direction_deg", "limit"});
  for (const auto& d : env.per_direction) {
    csv.row({face::axis_name(d.axis), num(d.direction_deg), num(d.limit)});
  }
  return csv.str();
}

inline void run_envelope(const scenario::Scenario& sc, const Artifacts& out,
                         std::optional<double> resolution) {
  const double res = resolution.value_or(sc.envelope.resolution_deg);
  const face::Envelope env = face::full_envelope(sc.face, res, sc.envelope.tol);
  json j = envelope_json(env, res, sc.envelope.tol);
  j["profile"] = scenario::to_json(sc.face);
  out.json_file("envelope.json", j);
  out.text("envelope_sweep.csv", sweep_csv(env));
}

inline void run_calibrate(const scenario::Scenario& sc, const Artifacts& out, std::uint64_t seed,
                          std::optional<double> resolution) {
  const auto& cal = section(sc.calibration, "calibration");
  face::CalibrationOptions opt = cal.options;
  opt.seed = seed;
  opt.tol = sc.envelope.tol;
  const face::CalibrationResult r = face::calibrate_profile(cal.targets, opt, sc.face);
  const double res = resolution.value_or(sc.envelope.resolution_deg);
  const face::Envelope check = face::full_envelope(r.profile, res, sc.envelope.tol);

  json profile;
  profile["schema_version"] = scenario::kSchemaVersion;
  profile["name"] = "calibrated profile";
  profile["face"] = scenario::to_json(r.profile);
  out.json_file("profile.json", profile);

  const auto residuals = face::relative_residuals(check, cal.targets);
  json report;
  report["targets"] = {{"translation_mm", cal.targets.translation_limit_mm},
                       {"rotation_deg", cal.targets.rotation_limit_deg},
                       {"deflection_deg", cal.targets.deflection_limit_deg}};
  report["fit"] = envelope_json(r.envelope, opt.resolution_deg, opt.tol);
  report["fit"]["max_relative_residual"] = r.max_residual;
  report["fit"]["evaluations"] = r.evaluations;
  report["check"] = envelope_json(check, res, sc.envelope.tol);
  report["check"]["relative_residuals"] = residuals;
  report["seed"] = seed;
  out.json_file("calibration_report.json", report);
  out.text("envelope_sweep.csv", sweep_csv(check));
}

inline void run_couple(const scenario::Scenario& sc, const Artifacts& out) {
  const auto& c = section(sc.coupling, "coupling");
  const coupling::CouplingMachine machine(c.config, sc.face);
  const coupling::RunResult run = coupling::run_script(machine, c.initial, c.events, c.dt_s);
  std::vector<json> records;
  for (const auto& rec : run.log) {
    json payload;
    if (rec.event == "transition") {
      payload = {{"from", coupling::phase_name(rec.transition.from)},
                 {"to", coupling::phase_name(rec.transition.to)},
                 {"reason", rec.transition.reason}};
    } else {
      if (rec.input.type == coupling::EventType::approach) {
        payload["misalignment"] = scenario::to_json(rec.input.misalignment);
      }
      if (rec.input.type == coupling::EventType::inject_fault) {
        payload["fault"] = coupling::fault_name(rec.input.fault);
      }
      if (!rec.rejection.empty()) payload["rejection"] = rec.rejection;
    }
    payload["state"] = scenario::to_json(rec.state);
    records.push_back({{"t", rec.t}, {"event", rec.event}, {"payload", payload}});
  }
  out.text("coupling_log.jsonl", jsonl(records));
  out.json_file("initial_state.json", scenario::to_json(run.initial));
  out.json_file("final_state.json", scenario::to_json(run.final_state));
}

inline std::vector<std::string> report_cells(const loads::LoadReport& r) {
  return {num(r.traction_u), num(r.lateral_u), num(r.bending_u), num(r.torsion_u),
          num(r.combined_u), flag(r.pass), flag(r.dual_locked)};
}

inline json report_json(const loads::LoadReport& r) {
  return {{"traction_u", r.traction_u}, {"lateral_u", r.lateral_u}, {"bending_u", r.bending_u},
          {"torsion_u", r.torsion_u},   {"combined_u", r.combined_u}, {"pass", r.pass},
          {"dual_locked", r.dual_locked}};
}

inline std::vector<std::string> wrench_cells(const loads::Wrench& w) {
  return {num(w.fx), num(w.fy), num(w.fz), num(w.mx), num(w.my), num(w.mz)};
}

inline const char* rule_name(loads::InteractionRule r) {
  return r == loads::InteractionRule::linear ? "linear" : "max_component";
}

inline void run_loads(const scenario::Scenario& sc, const Artifacts& out) {
  const auto& l = section(sc.loads, "loads");
  const loads::StressReference ref = loads::reference_stress_table();
  CsvWriter csv({"case", "fx_N", "fy_N", "fz_N", "mx_Nm", "my_Nm", "mz_Nm", "traction_u",
                 "lateral_u", "bending_u", "torsion_u", "combined_u", "pass", "dual_locked",
                 "traction_MPa", "torsion_MPa", "bending_MPa", "max_MPa"});
  json cases = json::array();
  json warnings = json::array();
  if (l.envelope.lateral_assumed) {
    warnings.push_back("lateral limit has no published rating; assumed equal to traction");
  }
  for (const auto& c : l.cases) {
    const loads::LoadReport r = loads::check_load(c.wrench, l.envelope, c.dual_locked);
    const loads::StressEstimate s = loads::stress_estimate(c.wrench, ref);
    auto cells = std::vector<std::string>{c.name};
    for (auto& v : wrench_cells(c.wrench)) cells.push_back(v);
    for (auto& v : report_cells(r)) cells.push_back(v);
    for (double v : {s.traction_MPa, s.torsion_MPa, s.bending_MPa, s.max_MPa}) cells.push_back(num(v));
    csv.row(cells);
    json jc = {{"name", c.name}, {"wrench", scenario::to_json(c.wrench)}, {"check", report_json(r)}};
    jc["stress"] = {{"traction_MPa", s.traction_MPa}, {"torsion_MPa", s.torsion_MPa},
                    {"bending_MPa", s.bending_MPa},   {"max_MPa", s.max_MPa},
                    {"multi_component", s.multi_component},
                    {"lateral_unmodeled", s.lateral_unmodeled}};
    if (s.multi_component) {
      warnings.push_back(c.name + ": several components loaded; max_MPa is the largest single-case value, not a combined prediction");
    }
    if (s.lateral_unmodeled) warnings.push_back(c.name + ": lateral force has no stress reference");
    cases.push_back(jc);
  }
  json report;
  report["envelope"] = {{"traction_max_N", l.envelope.traction_max_N},
                        {"bending_max_Nm", l.envelope.bending_max_Nm},
                        {"torsion_max_Nm", l.envelope.torsion_max_Nm},
                        {"lateral_max_N", l.envelope.lateral_max_N},
                        {"lateral_assumed", l.envelope.lateral_assumed},
                        {"interaction_rule", rule_name(l.envelope.interaction_rule)},
                        {"dual_lock_factor", l.envelope.dual_lock_factor}};
  report["cases"] = cases;
  report["warnings"] = warnings;
  out.text("loads_report.csv", csv.str());
  out.json_file("loads_report.json", report);
}

inline json error_json(const Error& e) {
  return {{"kind", std::string(kind_name(e.kind()))}, {"message", e.what()}};
}

inline json plan_json(const assembly::ReconfigureReport& rep) {
  json steps = json::array();
  for (const auto& s : rep.steps) {
    steps.push_back({{"index", s.index}, {"action", s.action}, {"ok", s.ok},
                     {"message", s.message}, {"stranded", s.stranded}, {"grounded", s.grounded}});
  }
  json j = {{"completed", rep.completed}, {"steps", steps}};
  j["aborted_at"] = rep.aborted_at ? json(*rep.aborted_at) : json(nullptr);
  return j;
}

inline void run_assembly(const scenario::Scenario& sc, const Artifacts& out) {
  const auto& a = section(sc.assembly, "assembly");
  assembly::ModuleGraph g(a.config);
  for (const auto& m : a.modules) g.add_module(m);

  json report;
  report["setup"] = plan_json(assembly::reconfigure(g, a.setup, false));

  json routes = json::array();
  for (const auto& p : a.power) {
    json jr = {{"source", p.source}, {"sink", p.sink}, {"watts", p.watts}};
    try {
      const assembly::RouteOutcome r = g.route_power(p.source, p.sink, p.watts);
      jr["granted"] = r.granted;
      jr["path"] = r.path;
      if (r.granted) jr["route"] = r.route;
      else jr["reason"] = r.reason;
    } catch (const Error& e) {
      jr["granted"] = false;
      jr["error"] = error_json(e);
    }
    routes.push_back(jr);
  }
  report["power"] = routes;
  report["plan"] = plan_json(assembly::reconfigure(g, a.plan, a.keep_grounded));

  std::vector<json> frames;
  for (const auto& f : a.frames) {
    json payload = {{"kind", bus::channel_name(f.frame.kind)}, {"source", f.frame.source},
                    {"dest", f.frame.dest}, {"bytes", f.frame.payload.size()}};
    try {
      const bus::DeliveryReport d = bus::send_frame(f.frame, g, a.config.per_hop_delay_s);
      payload["delivered"] = true;
      payload["hops"] = d.hops;
      payload["path"] = d.path;
      payload["latency_s"] = d.latency_s;
      payload["arrival_s"] = d.arrival_s;
    } catch (const Error& e) {
      payload["delivered"] = false;
      payload["error"] = error_json(e);
    }
    frames.push_back({{"t", f.frame.timestamp_s}, {"event", "frame"}, {"payload", payload}});
  }
  out.text("frames.jsonl", jsonl(frames));

  CsvWriter wrench({"load", "edge", "inboard", "outboard", "fx_N", "fy_N", "fz_N", "mx_Nm",
                    "my_Nm", "mz_Nm", "traction_u", "lateral_u", "bending_u", "torsion_u",
                    "combined_u", "pass", "dual_locked"});
  json reactions = json::array();
  for (const auto& l : a.loads) {
    const assembly::WrenchMap wm = assembly::propagate_wrench(g, l.load, a.gravity_mps2);
    for (const auto& e : wm.edges) {
      std::vector<std::string> cells{l.name, std::to_string(e.edge), e.inboard, e.outboard};
      for (auto& v : wrench_cells(e.wrench)) cells.push_back(v);
      for (auto& v : report_cells(e.report)) cells.push_back(v);
      wrench.row(cells);
    }
    reactions.push_back({{"load", l.name},
                         {"root", wm.root},
                         {"force_N", {wm.reaction_force.x(), wm.reaction_force.y(), wm.reaction_force.z()}},
                         {"moment_Nm", {wm.reaction_moment.x(), wm.reaction_moment.y(), wm.reaction_moment.z()}}});
  }
  report["reactions"] = reactions;
  out.text("wrench_map.csv", wrench.str());

  CsvWriter ledger({"t_s", "bus", "allocated_W"});
  for (const auto& e : g.ledger()) ledger.row({num(e.t), e.bus, num(e.allocated_W)});
  out.text("power_ledger.csv", ledger.str());

  json edges = json::array();
  for (const auto& [id, e] : g.edges()) {
    edges.push_back({{"id", id}, {"a", e.a.str()}, {"b", e.b.str()},
                     {"state", scenario::to_json(e.state)},
                     {"main_allocated_W", e.main.allocated_W},
                     {"aux_allocated_W", e.aux.allocated_W}});
  }
  report["edges"] = edges;
  report["time_s"] = g.now();
  out.json_file("plan_report.json", report);
}

// ---------------------------------------------------------------------------

inline int fail(const std::filesystem::path& dir, ExitCode code, json payload) {
  payload["exit_code"] = static_cast<int>(code);
  const std::string text = payload.dump(2) + "\n";
  std::cerr << text;
  std::error_code ec;
  if (!dir.empty() && std::filesystem::is_directory(dir, ec)) {
    std::ofstream(dir / "error.json", std::ios::binary | std::ios::trunc) << text;
  }
  return static_cast<int>(code);
}

inline int run(const RunOptions& opt) {
  const std::filesystem::path dir(opt.out_dir);
  if (std::find(commands().begin(), commands().end(), opt.command) == commands().end()) {
    return fail({}, ExitCode::usage, {{"error", {{"kind", "usage"}, {"message", "unknown command '" + opt.command + "'"}}}});
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    return fail({}, ExitCode::usage, {{"error", {{"kind", "io"}, {"message", "cannot create output directory '" + opt.out_dir + "'"}}}});
  }
  std::filesystem::remove(dir / "error.json", ec);

  scenario::Scenario sc;
  try {
    sc = scenario::load_scenario(opt.scenario_path);
  } catch (const scenario::SchemaError& e) {
    return fail(dir, ExitCode::schema, {{"error", {{"kind", "schema"}, {"field", e.field()}, {"message", e.what()}}}});
  } catch (const Error& e) {
    return fail(dir, ExitCode::usage, {{"error", {{"kind", "io"}, {"message", e.what()}}}});
  }
  log(LogLevel::info, "running " + opt.command + " on " + opt.scenario_path);

  const Artifacts out(dir);
  try {
    if (opt.command == "mechanism") run_mechanism(sc, out);
    else if (opt.command == "envelope") run_envelope(sc, out, opt.resolution_deg);
    else if (opt.command == "calibrate") run_calibrate(sc, out, opt.seed, opt.resolution_deg);
    else if (opt.command == "couple") run_couple(sc, out);
    else if (opt.command == "loads") run_loads(sc, out);
    else run_assembly(sc, out);
  } catch (const scenario::SchemaError& e) {
    return fail(dir, ExitCode::schema, {{"error", {{"kind", "schema"}, {"field", e.field()}, {"message", e.what()}}}});
  } catch (const Error& e) {
    return fail(dir, ExitCode::analysis, {{"error", error_json(e)}, {"command", opt.command}});
  }
  log(LogLevel::info, "wrote artifacts to " + opt.out_dir);
  return static_cast<int>(ExitCode::ok);
}

}  // namespace petlock::cli
