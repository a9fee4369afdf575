#pragma once

// JSON scenario documents. Parsing is strict: every object rejects keys it
// does not know, and errors name the offending field path.

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "petlock/assembly_graph.hpp"
#include "petlock/coupling_fsm.hpp"
#include "petlock/error.hpp"
#include "petlock/face_capture.hpp"
#include "petlock/lock_mechanism.hpp"
#include "petlock/power_data_bus.hpp"
#include "petlock/structural_loads.hpp"

namespace petlock::scenario {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

class SchemaError : public Error {
 public:
  SchemaError(std::string field, const std::string& message)
      : Error(ErrorKind::schema, field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// View of one JSON object that records which keys were read.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw SchemaError(path_, "expected an object");
  }

  const std::string& path() const { return path_; }
  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  std::string field(const std::string& key) const {
    if (key.empty()) return path_;
    return path_.empty() ? key : path_ + "." + key;
  }

  double number(const std::string& key, double fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_number()) throw SchemaError(field(key), "expected a number");
    const double d = v->get<double>();
    if (!std::isfinite(d)) throw SchemaError(field(key), "expected a finite number");
    return d;
  }

  double number(const std::string& key) {
    require_key(key);
    return number(key, 0.0);
  }

  std::optional<double> optional_number(const std::string& key) {
    if (!has(key)) {
      take(key);
      return std::nullopt;
    }
    return number(key, 0.0);
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) throw SchemaError(field(key), "expected an integer");
    return v->get<std::int64_t>();
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw SchemaError(field(key), "expected true or false");
    return v->get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_string()) throw SchemaError(field(key), "expected a string");
    return v->get<std::string>();
  }

  std::string string(const std::string& key) {
    require_key(key);
    return string(key, "");
  }

  std::optional<Reader> object(const std::string& key) {
    const json* v = take(key);
    if (!v) return std::nullopt;
    return Reader(*v, field(key));
  }

  const json* array(const std::string& key) {
    const json* v = take(key);
    if (v && !v->is_array()) throw SchemaError(field(key), "expected an array");
    return v;
  }

  /// Parses a value with a converter that may throw a library Error; such
  /// errors are reported against this field.
  template <class F>
  auto convert(const std::string& key, F&& f) {
    try {
      return f();
    } catch (const SchemaError&) {
      throw;
    } catch (const Error& e) {
      throw SchemaError(field(key), e.what());
    }
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.contains(key)) throw SchemaError(field(key), "unknown field");
    }
  }

 private:
  const json* take(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key) || j_.at(key).is_null()) return nullptr;
    return &j_.at(key);
  }

  void require_key(const std::string& key) const {
    if (!has(key)) throw SchemaError(field(key), "required field is missing");
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

// ---------------------------------------------------------------------------
// Sections

enum class ResistanceKind { constant, spring };

struct Resistance {
  ResistanceKind kind = ResistanceKind::constant;
  double force_N = 0.0;
  double stiffness_N_per_mm = 0.0;
  double preload_N = 0.0;

  lock::ResistanceProfile profile() const {
    return kind == ResistanceKind::constant ? lock::constant_resistance(force_N)
                                            : lock::spring_resistance(stiffness_N_per_mm, preload_N);
  }
};

struct MechanismSection {
  lock::MechanismParams params;
  double mu_rail = 0.1;
  double dt_s = 0.01;
  Resistance resistance;
};

struct CalibrationSection {
  face::Envelope targets;
  face::CalibrationOptions options;
};

struct EnvelopeSection {
  double resolution_deg = 10.0;
  double tol = 0.01;
};

struct LoadCase {
  std::string name;
  loads::Wrench wrench;
  bool dual_locked = false;
};

struct LoadsSection {
  loads::LoadEnvelope envelope;
  std::vector<LoadCase> cases;
};

struct CouplingSection {
  coupling::CouplingConfig config;
  double dt_s = 0.1;
  coupling::InterfaceState initial;
  std::vector<coupling::TimedEvent> events;
};

struct PowerRequest {
  std::string source;
  std::string sink;
  double watts = 0.0;
};

struct FrameRequest {
  bus::Frame frame;
};

struct AssemblyLoad {
  std::string name;
  assembly::AppliedLoad load;
};

struct AssemblySection {
  assembly::GraphConfig config;
  std::optional<double> gravity_mps2;
  bool keep_grounded = false;
  std::vector<assembly::Module> modules;
  std::vector<assembly::PlanStep> setup;  // applied before power routing
  std::vector<PowerRequest> power;
  std::vector<assembly::PlanStep> plan;
  std::vector<FrameRequest> frames;
  std::vector<AssemblyLoad> loads;
};

struct Scenario {
  int schema_version = kSchemaVersion;
  std::string name;
  std::optional<MechanismSection> mechanism;
  face::FaceProfile face = face::reference_profile();
  bool face_given = false;
  EnvelopeSection envelope;
  std::optional<CalibrationSection> calibration;
  std::optional<LoadsSection> loads;
  std::optional<CouplingSection> coupling;
  std::optional<AssemblySection> assembly;
};

// ---------------------------------------------------------------------------
// Element parsers

inline lock::MechanismParams parse_mechanism_params(Reader& r) {
  lock::MechanismParams p;
  p.mu1 = r.number("mu1", p.mu1);
  p.mu2 = r.number("mu2", p.mu2);
  p.theta_deg = r.number("theta_deg", p.theta_deg);
  p.beta_deg = r.number("beta_deg", p.beta_deg);
  p.pin_count = static_cast<int>(r.integer("pin_count", p.pin_count));
  p.stroke_mm = r.number("stroke_mm", p.stroke_mm);
  p.rod_speed_mm_s = r.number("rod_speed_mm_s", p.rod_speed_mm_s);
  p.rod_force_capacity_N = r.number("rod_force_capacity_N", p.rod_force_capacity_N);
  r.convert("", [&] { lock::validate(p); return 0; });
  return p;
}

inline face::FaceProfile parse_face(Reader& r, face::FaceProfile p = face::reference_profile()) {
  p.outer_diameter_mm = r.number("outer_diameter_mm", p.outer_diameter_mm);
  p.petal_count = static_cast<int>(r.integer("petal_count", p.petal_count));
  p.petal_height_mm = r.number("petal_height_mm", p.petal_height_mm);
  p.petal_flank_angle_deg = r.number("petal_flank_angle_deg", p.petal_flank_angle_deg);
  p.groove_radius_mm = r.number("groove_radius_mm", p.groove_radius_mm);
  p.chamfer_depth_mm = r.number("chamfer_depth_mm", p.chamfer_depth_mm);
  if (const json* a = r.array("groove_positions_deg")) {
    if (a->size() != 3) throw SchemaError(r.field("groove_positions_deg"), "expected 3 angles");
    for (std::size_t i = 0; i < 3; ++i) {
      if (!(*a)[i].is_number()) {
        throw SchemaError(r.field("groove_positions_deg") + "[" + std::to_string(i) + "]",
                          "expected a number");
      }
      p.groove_positions_deg[i] = (*a)[i].get<double>();
    }
  }
  r.finish();
  r.convert("", [&] { face::validate(p); return 0; });
  return p;
}

inline face::Misalignment parse_misalignment(Reader& r) {
  face::Misalignment m;
  m.dx_mm = r.number("dx_mm", 0.0);
  m.dy_mm = r.number("dy_mm", 0.0);
  m.rot_deg = r.number("rot_deg", 0.0);
  m.tilt_x_deg = r.number("tilt_x_deg", 0.0);
  m.tilt_y_deg = r.number("tilt_y_deg", 0.0);
  r.finish();
  return m;
}

inline loads::Wrench parse_wrench(Reader& r) {
  loads::Wrench w;
  w.fx = r.number("fx_N", 0.0);
  w.fy = r.number("fy_N", 0.0);
  w.fz = r.number("fz_N", 0.0);
  w.mx = r.number("mx_Nm", 0.0);
  w.my = r.number("my_Nm", 0.0);
  w.mz = r.number("mz_Nm", 0.0);
  r.finish();
  return w;
}

inline loads::LoadEnvelope parse_load_envelope(Reader& r) {
  loads::LoadEnvelope e;
  e.traction_max_N = r.number("traction_max_N", e.traction_max_N);
  e.bending_max_Nm = r.number("bending_max_Nm", e.bending_max_Nm);
  e.torsion_max_Nm = r.number("torsion_max_Nm", e.torsion_max_Nm);
  if (r.has("lateral_max_N")) {
    e.lateral_max_N = r.number("lateral_max_N");
    e.lateral_assumed = false;
  } else {
    r.number("lateral_max_N", 0.0);
  }
  const std::string rule = r.string("interaction_rule", "max_component");
  if (rule == "linear") e.interaction_rule = loads::InteractionRule::linear;
  else if (rule == "max_component") e.interaction_rule = loads::InteractionRule::max_component;
  else throw SchemaError(r.field("interaction_rule"), "expected 'linear' or 'max_component'");
  e.dual_lock_factor = r.number("dual_lock_factor", e.dual_lock_factor);
  r.finish();
  r.convert("", [&] { loads::validate(e); return 0; });
  return e;
}

inline coupling::Sides parse_sides(const std::string& s, const std::string& field) {
  if (s == "A") return coupling::Sides::a;
  if (s == "B") return coupling::Sides::b;
  if (s == "both") return coupling::Sides::both;
  throw SchemaError(field, "expected 'A', 'B' or 'both'");
}

inline coupling::CouplingConfig parse_coupling_config(Reader& r) {
  coupling::CouplingConfig c;
  c.lock_duration_s = r.number("lock_duration_s", c.lock_duration_s);
  c.capture_timeout_s = r.number("capture_timeout_s", c.capture_timeout_s);
  c.which_sides = parse_sides(r.string("which_sides", "A"), r.field("which_sides"));
  c.allow_out_of_range = r.boolean("allow_out_of_range", c.allow_out_of_range);
  c.dual_lock_factor = r.number("dual_lock_factor", c.dual_lock_factor);
  r.finish();
  r.convert("", [&] { coupling::validate(c); return 0; });
  return c;
}

inline coupling::Phase parse_phase(const std::string& s, const std::string& field) {
  using coupling::Phase;
  for (Phase p : {Phase::idle, Phase::aligned, Phase::capturing, Phase::locking, Phase::locked,
                  Phase::unlocking, Phase::fault}) {
    if (s == coupling::phase_name(p)) return p;
  }
  throw SchemaError(field, "unknown phase '" + s + "'");
}

inline coupling::InterfaceState parse_interface_state(Reader& r) {
  coupling::InterfaceState s;
  s.phase = parse_phase(r.string("phase", "Idle"), r.field("phase"));
  const std::string fault = r.string("fault", "none");
  if (fault != "none") s.fault = r.convert("fault", [&] { return coupling::parse_fault(fault); });
  s.side_a_locked = r.boolean("side_a_locked", false);
  s.side_b_locked = r.boolean("side_b_locked", false);
  s.elapsed_in_phase = r.number("elapsed_in_phase_s", 0.0);
  r.finish();
  using coupling::Phase;
  const bool may_hold = s.phase == Phase::locking || s.phase == Phase::locked ||
                        s.phase == Phase::unlocking;
  if ((s.side_a_locked || s.side_b_locked) && !may_hold) {
    throw SchemaError(r.path(), "side flags may be set only in Locking, Locked or Unlocking");
  }
  if (s.phase == Phase::locked && !s.side_a_locked && !s.side_b_locked) {
    throw SchemaError(r.path(), "Locked needs at least one engaged side");
  }
  if ((s.phase == Phase::fault) != (s.fault != coupling::FaultKind::none)) {
    throw SchemaError(r.field("fault"), "fault kind must be set exactly in the Fault phase");
  }
  if (s.elapsed_in_phase < 0.0) throw SchemaError(r.field("elapsed_in_phase_s"), "must be >= 0");
  return s;
}

inline coupling::TimedEvent parse_event(Reader& r) {
  coupling::TimedEvent te;
  te.t = r.number("t_s");
  const std::string type = r.string("type");
  te.event.type = r.convert("type", [&] { return coupling::parse_event(type); });
  if (auto m = r.object("misalignment")) {
    if (te.event.type != coupling::EventType::approach) {
      throw SchemaError(m->path(), "only approach events take a misalignment");
    }
    te.event.misalignment = parse_misalignment(*m);
  }
  const std::string fault = r.string("fault", "");
  if (te.event.type == coupling::EventType::inject_fault) {
    if (fault.empty()) throw SchemaError(r.field("fault"), "inject_fault needs a fault kind");
    te.event.fault = r.convert("fault", [&] { return coupling::parse_fault(fault); });
  } else if (!fault.empty()) {
    throw SchemaError(r.field("fault"), "only inject_fault events take a fault kind");
  }
  r.finish();
  return te;
}

inline Pose parse_pose(Reader& r) {
  auto triple = [&](const std::string& key) {
    Vec3 v = Vec3::Zero();
    if (const json* a = r.array(key)) {
      if (a->size() != 3) throw SchemaError(r.field(key), "expected 3 numbers");
      for (std::size_t i = 0; i < 3; ++i) {
        if (!(*a)[i].is_number()) {
          throw SchemaError(r.field(key) + "[" + std::to_string(i) + "]", "expected a number");
        }
        v[static_cast<Eigen::Index>(i)] = (*a)[i].get<double>();
      }
    }
    return v;
  };
  Pose p;
  p.translation = triple("xyz_m");
  const Vec3 rpy = triple("rpy_deg");
  p.rotation = rotation_from_rpy_deg(rpy.x(), rpy.y(), rpy.z());
  r.finish();
  return p;
}

inline assembly::PortRef parse_port_ref(const std::string& s, const std::string& field) {
  const auto dot = s.rfind('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == s.size()) {
    throw SchemaError(field, "expected 'module.port', got '" + s + "'");
  }
  return {s.substr(0, dot), s.substr(dot + 1)};
}

inline assembly::Module parse_module(Reader& r) {
  assembly::Module m;
  m.id = r.string("id");
  const std::string kind = r.string("kind", "link");
  m.kind = r.convert("kind", [&] { return assembly::parse_kind(kind); });
  m.mass_kg = r.number("mass_kg", 0.0);
  m.grounded = r.boolean("grounded", false);
  if (auto p = r.object("pose")) m.world_pose = parse_pose(*p);
  if (const json* ports = r.array("ports")) {
    for (std::size_t i = 0; i < ports->size(); ++i) {
      Reader pr((*ports)[i], r.field("ports") + "[" + std::to_string(i) + "]");
      assembly::Port port;
      port.id = pr.string("id");
      if (auto pp = pr.object("pose")) port.pose = parse_pose(*pp);
      pr.finish();
      m.ports.push_back(port);
    }
  }
  r.finish();
  return m;
}

inline assembly::PlanStep parse_plan_step(Reader& r) {
  assembly::PlanStep s;
  const std::string action = r.string("action");
  if (action == "dock") s.action = assembly::PlanStep::Action::dock;
  else if (action == "undock") s.action = assembly::PlanStep::Action::undock;
  else throw SchemaError(r.field("action"), "expected 'dock' or 'undock'");
  s.a = parse_port_ref(r.string("a"), r.field("a"));
  if (s.action == assembly::PlanStep::Action::dock) {
    s.b = parse_port_ref(r.string("b"), r.field("b"));
    if (auto m = r.object("misalignment")) s.misalignment = parse_misalignment(*m);
  } else if (r.has("b") || r.has("misalignment")) {
    throw SchemaError(r.path(), "undock takes only the port 'a'");
  }
  r.finish();
  return s;
}

template <class F>
void for_each_element(Reader& r, const std::string& key, F&& f) {
  const json* a = r.array(key);
  if (!a) return;
  for (std::size_t i = 0; i < a->size(); ++i) {
    Reader er((*a)[i], r.field(key) + "[" + std::to_string(i) + "]");
    f(er);
  }
}

inline AssemblySection parse_assembly(Reader& r, const face::FaceProfile& profile) {
  AssemblySection a;
  a.config.profile = profile;
  if (auto c = r.object("coupling")) a.config.coupling = parse_coupling_config(*c);
  if (auto e = r.object("load_envelope")) a.config.envelope = parse_load_envelope(*e);
  a.config.fsm_dt_s = r.number("fsm_dt_s", a.config.fsm_dt_s);
  if (!(a.config.fsm_dt_s > 0.0)) throw SchemaError(r.field("fsm_dt_s"), "must be > 0");
  a.config.per_hop_delay_s = r.number("per_hop_delay_s", a.config.per_hop_delay_s);
  a.config.aux_actuator_only = r.boolean("aux_actuator_only", false);
  a.gravity_mps2 = r.optional_number("gravity_mps2");
  a.keep_grounded = r.boolean("keep_grounded", false);
  for_each_element(r, "modules", [&](Reader& e) { a.modules.push_back(parse_module(e)); });
  for_each_element(r, "setup", [&](Reader& e) { a.setup.push_back(parse_plan_step(e)); });
  for_each_element(r, "power", [&](Reader& e) {
    PowerRequest p;
    p.source = e.string("source");
    p.sink = e.string("sink");
    p.watts = e.number("watts");
    e.finish();
    a.power.push_back(p);
  });
  for_each_element(r, "plan", [&](Reader& e) { a.plan.push_back(parse_plan_step(e)); });
  for_each_element(r, "frames", [&](Reader& e) {
    FrameRequest f;
    const std::string kind = e.string("kind");
    f.frame.kind = e.convert("kind", [&] { return bus::parse_channel(kind); });
    f.frame.source = e.string("source");
    f.frame.dest = e.string("dest");
    const std::int64_t n = e.integer("payload_bytes", 0);
    if (n < 0 || n > 65535) throw SchemaError(e.field("payload_bytes"), "must lie in [0, 65535]");
    f.frame.payload.assign(static_cast<std::size_t>(n), 0);
    f.frame.timestamp_s = e.number("t_s", 0.0);
    e.finish();
    a.frames.push_back(f);
  });
  for_each_element(r, "loads", [&](Reader& e) {
    AssemblyLoad l;
    l.name = e.string("name", "load" + std::to_string(a.loads.size()));
    l.load.module = e.string("module");
    if (auto w = e.object("wrench")) l.load.wrench = parse_wrench(*w);
    e.finish();
    a.loads.push_back(l);
  });
  r.finish();
  return a;
}

// ---------------------------------------------------------------------------
// Documents

inline Scenario parse_scenario(const json& doc) {
  Reader r(doc, "");
  Scenario s;
  if (!r.has("schema_version")) throw SchemaError("schema_version", "required field is missing");
  s.schema_version = static_cast<int>(r.integer("schema_version", 0));
  if (s.schema_version != kSchemaVersion) {
    throw SchemaError("schema_version", "unsupported version " + std::to_string(s.schema_version));
  }
  s.name = r.string("name", "");

  if (auto m = r.object("mechanism")) {
    MechanismSection sec;
    sec.mu_rail = m->number("mu_rail", sec.mu_rail);
    sec.dt_s = m->number("dt_s", sec.dt_s);
    if (!(sec.dt_s > 0.0)) throw SchemaError(m->field("dt_s"), "must be > 0");
    if (auto res = m->object("resistance")) {
      const std::string kind = res->string("kind", "constant");
      if (kind == "constant") sec.resistance.kind = ResistanceKind::constant;
      else if (kind == "spring") sec.resistance.kind = ResistanceKind::spring;
      else throw SchemaError(res->field("kind"), "expected 'constant' or 'spring'");
      sec.resistance.force_N = res->number("force_N", 0.0);
      sec.resistance.stiffness_N_per_mm = res->number("stiffness_N_per_mm", 0.0);
      sec.resistance.preload_N = res->number("preload_N", 0.0);
      res->finish();
    }
    sec.params = parse_mechanism_params(*m);
    m->finish();
    s.mechanism = sec;
  }

  if (auto f = r.object("face")) {
    s.face = parse_face(*f);
    s.face_given = true;
  }

  if (auto e = r.object("envelope")) {
    s.envelope.resolution_deg = e->number("resolution_deg", s.envelope.resolution_deg);
    s.envelope.tol = e->number("tol", s.envelope.tol);
    if (!(s.envelope.tol > 0.0)) throw SchemaError(e->field("tol"), "must be > 0");
    e->finish();
  }

  if (auto c = r.object("calibration")) {
    CalibrationSection sec;
    auto t = c->object("targets");
    if (!t) throw SchemaError(c->field("targets"), "required field is missing");
    sec.targets.translation_limit_mm = t->number("translation_mm");
    sec.targets.rotation_limit_deg = t->number("rotation_deg");
    sec.targets.deflection_limit_deg = t->number("deflection_deg");
    t->finish();
    sec.options.resolution_deg = c->number("resolution_deg", sec.options.resolution_deg);
    sec.options.accept = c->number("accept", sec.options.accept);
    sec.options.goal = c->number("goal", sec.options.goal);
    sec.options.max_evaluations =
        static_cast<int>(c->integer("max_evaluations", sec.options.max_evaluations));
    c->finish();
    s.calibration = sec;
  }

  if (auto l = r.object("loads")) {
    LoadsSection sec;
    if (auto e = l->object("envelope")) sec.envelope = parse_load_envelope(*e);
    for_each_element(*l, "cases", [&](Reader& e) {
      LoadCase c;
      c.name = e.string("name");
      if (auto w = e.object("wrench")) c.wrench = parse_wrench(*w);
      c.dual_locked = e.boolean("dual_locked", false);
      e.finish();
      sec.cases.push_back(c);
    });
    l->finish();
    s.loads = sec;
  }

  if (auto c = r.object("coupling")) {
    CouplingSection sec;
    if (auto cfg = c->object("config")) sec.config = parse_coupling_config(*cfg);
    sec.dt_s = c->number("dt_s", sec.dt_s);
    if (!(sec.dt_s > 0.0)) throw SchemaError(c->field("dt_s"), "must be > 0");
    if (auto init = c->object("initial_state")) sec.initial = parse_interface_state(*init);
    for_each_element(*c, "events", [&](Reader& e) { sec.events.push_back(parse_event(e)); });
    double last = 0.0;
    for (std::size_t i = 0; i < sec.events.size(); ++i) {
      if (sec.events[i].t < last) {
        throw SchemaError(c->field("events") + "[" + std::to_string(i) + "].t_s",
                          "event times must be non-decreasing");
      }
      last = sec.events[i].t;
    }
    c->finish();
    s.coupling = sec;
  }

  if (auto a = r.object("assembly")) s.assembly = parse_assembly(*a, s.face);

  r.finish();
  return s;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parameter, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
}

inline Scenario load_scenario(const std::string& path) { return parse_scenario(read_json_file(path)); }

// ---------------------------------------------------------------------------
// Serialization of the sections that artifacts echo back

inline json to_json(const face::FaceProfile& p) {
  return {{"outer_diameter_mm", p.outer_diameter_mm},
          {"petal_count", p.petal_count},
          {"petal_height_mm", p.petal_height_mm},
          {"petal_flank_angle_deg", p.petal_flank_angle_deg},
          {"groove_radius_mm", p.groove_radius_mm},
          {"groove_positions_deg", p.groove_positions_deg},
          {"chamfer_depth_mm", p.chamfer_depth_mm}};
}

inline json to_json(const coupling::InterfaceState& s) {
  return {{"phase", coupling::phase_name(s.phase)},
          {"fault", coupling::fault_name(s.fault)},
          {"side_a_locked", s.side_a_locked},
          {"side_b_locked", s.side_b_locked},
          {"elapsed_in_phase_s", s.elapsed_in_phase}};
}

inline json to_json(const face::Misalignment& m) {
  return {{"dx_mm", m.dx_mm}, {"dy_mm", m.dy_mm}, {"rot_deg", m.rot_deg},
          {"tilt_x_deg", m.tilt_x_deg}, {"tilt_y_deg", m.tilt_y_deg}};
}

inline json to_json(const loads::Wrench& w) {
  return {{"fx_N", w.fx}, {"fy_N", w.fy}, {"fz_N", w.fz},
          {"mx_Nm", w.mx}, {"my_Nm", w.my}, {"mz_Nm", w.mz}};
}

}  // namespace petlock::scenario
