#pragma once

// Assemblies of modules joined by docking interfaces.
//
// Frames: every port carries an interface frame (pose relative to its module,
// translation in metres) whose +z axis points out of the module. Two docked
// ports face each other: the child's interface frame is the parent's rotated
// by 180 deg about x. Wrenches are in N and N*m.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "petlock/coupling_fsm.hpp"
#include "petlock/error.hpp"
#include "petlock/face_capture.hpp"
#include "petlock/geometry.hpp"
#include "petlock/power_data_bus.hpp"
#include "petlock/structural_loads.hpp"

namespace petlock::assembly {

enum class ModuleKind { joint, link, end_effector, facility_module, truss_node };

inline const char* kind_name(ModuleKind k) {
  switch (k) {
    case ModuleKind::joint: return "joint";
    case ModuleKind::link: return "link";
    case ModuleKind::end_effector: return "end_effector";
    case ModuleKind::facility_module: return "facility_module";
    case ModuleKind::truss_node: return "truss_node";
  }
  return "?";
}

inline ModuleKind parse_kind(const std::string& s) {
  for (ModuleKind k : {ModuleKind::joint, ModuleKind::link, ModuleKind::end_effector,
                       ModuleKind::facility_module, ModuleKind::truss_node}) {
    if (s == kind_name(k)) return k;
  }
  throw Error(ErrorKind::parameter, "unknown module kind '" + s + "'");
}

struct Port {
  std::string id;
  Pose pose;  // interface frame in the module frame
};

struct Module {
  std::string id;
  ModuleKind kind = ModuleKind::link;
  double mass_kg = 0.0;
  std::vector<Port> ports;
  bool grounded = false;
  Pose world_pose;  // used for grounded modules only

  const Port& port(const std::string& pid) const {
    for (const auto& p : ports) {
      if (p.id == pid) return p;
    }
    throw Error(ErrorKind::unknown_entity, "module '" + id + "' has no port '" + pid + "'");
  }
};

struct PortRef {
  std::string module;
  std::string port;

  auto operator<=>(const PortRef&) const = default;
  std::string str() const { return module + "." + port; }
};

struct Edge {
  int id = 0;
  PortRef a;  // side A of the interface
  PortRef b;
  coupling::InterfaceState state;
  face::FaceProfile profile_a;
  face::FaceProfile profile_b;
  bus::PowerBus main = bus::main_bus();
  bus::PowerBus aux = bus::auxiliary_bus();

  bool locked() const { return state.phase == coupling::Phase::locked; }
  const std::string& other(const std::string& module) const {
    return a.module == module ? b.module : a.module;
  }
};

struct GraphConfig {
  coupling::CouplingConfig coupling;
  face::FaceProfile profile = face::reference_profile();
  loads::LoadEnvelope envelope;
  double fsm_dt_s = 0.01;
  double per_hop_delay_s = 1e-3;
  bool aux_actuator_only = false;
};

struct LedgerEntry {
  double t;
  std::string bus;  // "e<id>/<main|auxiliary>"
  double allocated_W;
};

struct Route {
  std::uint64_t id = 0;
  std::string source;
  std::string sink;
  double watts = 0.0;
  std::vector<int> edges;
  std::vector<std::uint64_t> grants;  // parallel to edges
};

struct RouteOutcome {
  bool granted = false;
  std::uint64_t route = 0;
  std::vector<int> path;
  std::string reason;
};

struct DockOutcome {
  bool docked = false;
  int edge = -1;
  std::string rejection;
  std::vector<coupling::Transition> transitions;
  double duration_s = 0.0;
};

struct UndockOutcome {
  bool undocked = false;
  std::string rejection;
  std::vector<std::string> stranded;
  double duration_s = 0.0;
};

// Half turn about x.
inline Mat3 facing_flip() { return Vec3(1.0, -1.0, -1.0).asDiagonal(); }

class ModuleGraph {
 public:
  explicit ModuleGraph(GraphConfig config = {}) : config_(std::move(config)) {
    coupling::validate(config_.coupling);
    face::validate(config_.profile);
    loads::validate(config_.envelope);
    require(config_.fsm_dt_s > 0.0, ErrorKind::parameter, "fsm_dt_s must be > 0");
  }

  const GraphConfig& config() const { return config_; }
  double now() const { return now_; }

  void add_module(Module m) {
    require(!m.id.empty(), ErrorKind::parameter, "module id must not be empty");
    require(!modules_.contains(m.id), ErrorKind::parameter, "duplicate module id '" + m.id + "'");
    require(std::isfinite(m.mass_kg) && m.mass_kg >= 0.0, ErrorKind::parameter,
            "module mass must be >= 0");
    std::set<std::string> seen;
    for (const auto& p : m.ports) {
      require(seen.insert(p.id).second, ErrorKind::parameter,
              "duplicate port '" + p.id + "' on module '" + m.id + "'");
    }
    modules_.emplace(m.id, std::move(m));
  }

  bool has_module(const std::string& id) const { return modules_.contains(id); }

  const Module& module(const std::string& id) const {
    auto it = modules_.find(id);
    require(it != modules_.end(), ErrorKind::unknown_entity, "unknown module '" + id + "'");
    return it->second;
  }

  const std::map<std::string, Module>& modules() const { return modules_; }
  const std::map<int, Edge>& edges() const { return edges_; }
  const std::map<std::uint64_t, Route>& routes() const { return routes_; }
  const std::vector<LedgerEntry>& ledger() const { return ledger_; }

  const Edge& edge(int id) const {
    auto it = edges_.find(id);
    require(it != edges_.end(), ErrorKind::unknown_entity, "unknown edge " + std::to_string(id));
    return it->second;
  }

  std::optional<int> edge_at(const PortRef& p) const {
    for (const auto& [id, e] : edges_) {
      if (e.a == p || e.b == p) return id;
    }
    return std::nullopt;
  }

  /// Runs the capture check and, on success, drives a fresh coupling
  /// sequence to Locked.
  DockOutcome dock(const PortRef& a, const PortRef& b, const face::Misalignment& mis) {
    module(a.module).port(a.port);
    module(b.module).port(b.port);
    require(a.module != b.module, ErrorKind::parameter, "cannot dock a module to itself");
    require(!edge_at(a), ErrorKind::port_in_use, "port " + a.str() + " is in use");
    require(!edge_at(b), ErrorKind::port_in_use, "port " + b.str() + " is in use");

    DockOutcome out;
    const coupling::CouplingMachine machine(config_.coupling, config_.profile);
    coupling::StepResult r = machine.step({}, coupling::Event::approach(mis), config_.fsm_dt_s);
    if (!r.rejection.empty()) {
      out.rejection = r.rejection;
      return out;
    }
    out.transitions = r.transitions;
    r = machine.step(r.state, coupling::Event::start_lock(), config_.fsm_dt_s);
    append(out.transitions, r.transitions);
    out.duration_s = drive(machine, r.state, coupling::Phase::locked, out.transitions);

    Edge e;
    e.id = next_edge_++;
    e.a = a;
    e.b = b;
    e.state = r.state;
    e.profile_a = config_.profile;
    e.profile_b = config_.profile;
    bus::connect(e.state, 0);
    e.main.connected = true;
    e.aux.connected = true;
    e.aux.actuator_only = config_.aux_actuator_only;
    now_ += out.duration_s;
    out.docked = true;
    out.edge = e.id;
    edges_.emplace(e.id, std::move(e));
    return out;
  }

  /// Unlocks and removes the interface at `p`. Refused when an active power
  /// route crosses it, or (with keep_grounded) when a module would lose its
  /// connection to ground.
  UndockOutcome undock(const PortRef& p, bool keep_grounded = false) {
    const auto id = edge_at(p);
    require(id.has_value(), ErrorKind::parameter, "no interface at port " + p.str());
    UndockOutcome out;
    for (const auto& [rid, route] : routes_) {
      if (std::find(route.edges.begin(), route.edges.end(), *id) != route.edges.end()) {
        out.stranded.push_back(route.sink);
      }
    }
    if (!out.stranded.empty()) {
      out.rejection = "undock would strand powered module(s)";
      return out;
    }
    if (keep_grounded) {
      for (const auto& [mid, m] : modules_) {
        if (connected_to_ground(mid) && !connected_to_ground(mid, *id)) out.stranded.push_back(mid);
      }
      if (!out.stranded.empty()) {
        out.rejection = "undock would disconnect module(s) from ground";
        return out;
      }
    }

    Edge& e = edges_.at(*id);
    if (e.state.phase == coupling::Phase::locked) {
      const coupling::CouplingMachine machine(config_.coupling, config_.profile);
      std::vector<coupling::Transition> transitions;
      auto r = machine.step(e.state, coupling::Event::start_unlock(), config_.fsm_dt_s);
      out.duration_s = drive(machine, r.state, coupling::Phase::idle, transitions);
      now_ += out.duration_s;
    }
    edges_.erase(*id);
    out.undocked = true;
    return out;
  }

  /// Puts one interface into Fault (faults make its links go down).
  void inject_fault(int edge_id, coupling::FaultKind kind) {
    Edge& e = edges_.at(edge(edge_id).id);
    const coupling::CouplingMachine machine(config_.coupling, config_.profile);
    e.state = machine.step(e.state, coupling::Event::inject_fault(kind), config_.fsm_dt_s).state;
  }

  /// Neighbouring (edge id, module id) pairs across Locked interfaces, in
  /// ascending edge order. `skip` excludes one edge.
  std::vector<std::pair<int, std::string>> locked_neighbours(const std::string& m,
                                                             int skip = -1) const {
    std::vector<std::pair<int, std::string>> out;
    for (const auto& [id, e] : edges_) {
      if (id == skip || !e.locked()) continue;
      if (e.a.module == m || e.b.module == m) out.emplace_back(id, e.other(m));
    }
    return out;
  }

  /// Breadth-first path of Locked edges; deterministic by edge id.
  std::optional<std::vector<int>> locked_path(const std::string& src, const std::string& dst,
                                              int skip = -1) const {
    module(src);
    module(dst);
    if (src == dst) return std::vector<int>{};
    std::map<std::string, std::pair<std::string, int>> parent;
    std::deque<std::string> queue{src};
    parent[src] = {"", -1};
    while (!queue.empty()) {
      const std::string cur = queue.front();
      queue.pop_front();
      for (const auto& [eid, next] : locked_neighbours(cur, skip)) {
        if (parent.contains(next)) continue;
        parent[next] = {cur, eid};
        if (next == dst) {
          std::vector<int> path;
          for (std::string at = dst; at != src; at = parent[at].first) path.push_back(parent[at].second);
          std::reverse(path.begin(), path.end());
          return path;
        }
        queue.push_back(next);
      }
    }
    return std::nullopt;
  }

  std::set<std::string> locked_component(const std::string& start, int skip = -1) const {
    std::set<std::string> seen{start};
    std::deque<std::string> queue{start};
    while (!queue.empty()) {
      const std::string cur = queue.front();
      queue.pop_front();
      for (const auto& [eid, next] : locked_neighbours(cur, skip)) {
        if (seen.insert(next).second) queue.push_back(next);
      }
    }
    return seen;
  }

  bool connected_to_ground(const std::string& id, int skip = -1) const {
    for (const auto& m : locked_component(id, skip)) {
      if (modules_.at(m).grounded) return true;
    }
    return false;
  }

  /// All-or-nothing grant of `watts` on the 48 V bus of every edge between
  /// source and sink.
  RouteOutcome route_power(const std::string& source, const std::string& sink, double watts) {
    require(std::isfinite(watts) && watts >= 0.0, ErrorKind::parameter, "watts must be >= 0");
    const auto path = locked_path(source, sink);
    require(path.has_value(), ErrorKind::unreachable,
            "no Locked path from '" + source + "' to '" + sink + "'");
    RouteOutcome out;
    out.path = *path;
    Route route{next_route_, source, sink, watts, *path, {}};
    for (int eid : *path) {
      bus::PowerBus& b = edges_.at(eid).main;
      const bus::PowerGrant g = bus::request_power(b, watts);
      if (!g.granted) {
        for (std::size_t i = 0; i < route.grants.size(); ++i) {
          bus::release(edges_.at(route.edges[i]).main, route.grants[i]);
        }
        out.reason = "edge " + std::to_string(eid) + ": " + g.reason;
        return out;
      }
      route.grants.push_back(g.id);
    }
    for (int eid : *path) record(eid, edges_.at(eid).main);
    ++next_route_;
    out.granted = true;
    out.route = route.id;
    routes_.emplace(route.id, std::move(route));
    return out;
  }

  bool release_route(std::uint64_t id) {
    auto it = routes_.find(id);
    if (it == routes_.end()) return false;
    for (std::size_t i = 0; i < it->second.edges.size(); ++i) {
      bus::PowerBus& b = edges_.at(it->second.edges[i]).main;
      bus::release(b, it->second.grants[i]);
      record(it->second.edges[i], b);
    }
    routes_.erase(it);
    return true;
  }

  /// World poses of every module; each connected component is placed from its
  /// grounded module (or its smallest id) through the docked interfaces.
  std::map<std::string, Pose> world_poses(bool locked_only = false) const {
    std::map<std::string, Pose> pose;
    auto place = [&](const std::string& root) {
      pose[root] = modules_.at(root).world_pose;
      std::deque<std::string> queue{root};
      while (!queue.empty()) {
        const std::string cur = queue.front();
        queue.pop_front();
        for (const auto& [id, e] : edges_) {
          if (locked_only && !e.locked()) continue;
          if (e.a.module != cur && e.b.module != cur) continue;
          const bool cur_is_a = e.a.module == cur;
          const PortRef& mine = cur_is_a ? e.a : e.b;
          const PortRef& theirs = cur_is_a ? e.b : e.a;
          if (pose.contains(theirs.module)) continue;
          pose[theirs.module] = child_pose(pose[cur], mine, theirs);
          queue.push_back(theirs.module);
        }
      }
    };
    for (const auto& [id, m] : modules_) {
      if (m.grounded && !pose.contains(id)) place(id);
    }
    for (const auto& [id, m] : modules_) {
      if (!pose.contains(id)) place(id);
    }
    return pose;
  }

  /// Pose of the module on port `theirs` when docked to port `mine` of a
  /// module posed at `parent`.
  Pose child_pose(const Pose& parent, const PortRef& mine, const PortRef& theirs) const {
    const Pose parent_port = parent * module(mine.module).port(mine.port).pose;
    const Pose mated{parent_port.rotation * facing_flip(), parent_port.translation};
    return mated * module(theirs.module).port(theirs.port).pose.inverse();
  }

 private:
  static void append(std::vector<coupling::Transition>& to,
                     const std::vector<coupling::Transition>& from) {
    to.insert(to.end(), from.begin(), from.end());
  }

  double drive(const coupling::CouplingMachine& machine, coupling::InterfaceState& s,
               coupling::Phase target, std::vector<coupling::Transition>& transitions) const {
    const double dt = config_.fsm_dt_s;
    const auto limit = static_cast<std::size_t>(4.0 * config_.coupling.lock_duration_s / dt) + 16;
    std::size_t k = 0;
    while (s.phase != target) {
      require(k < limit, ErrorKind::protocol, "coupling sequence did not complete");
      auto r = machine.step(s, coupling::Event::tick(), dt);
      append(transitions, r.transitions);
      s = r.state;
      ++k;
    }
    return static_cast<double>(k) * dt;
  }

  void record(int eid, const bus::PowerBus& b) {
    ledger_.push_back({now_, "e" + std::to_string(eid) + "/" + bus::bus_name(b.name), b.allocated_W});
  }

  GraphConfig config_;
  std::map<std::string, Module> modules_;
  std::map<int, Edge> edges_;
  std::map<std::uint64_t, Route> routes_;
  std::vector<LedgerEntry> ledger_;
  int next_edge_ = 1;
  std::uint64_t next_route_ = 1;
  double now_ = 0.0;
};

// ---------------------------------------------------------------------------
// Static wrench propagation

/// Load applied at a module origin, components in the module frame.
struct AppliedLoad {
  std::string module;
  loads::Wrench wrench;
};

struct EdgeLoad {
  int edge = 0;
  std::string inboard;   // module on the ground side
  std::string outboard;  // module on the load side
  loads::Wrench wrench;  // outboard -> inboard, inboard interface frame
  loads::LoadReport report;
  bool dual_locked = false;
};

struct WrenchMap {
  std::string root;
  std::vector<EdgeLoad> edges;  // ascending edge id
  Vec3 reaction_force = Vec3::Zero();   // world frame, on the root
  Vec3 reaction_moment = Vec3::Zero();  // world frame, about the root origin
};

namespace detail {

inline Vec3 force_of(const loads::Wrench& w) { return {w.fx, w.fy, w.fz}; }
inline Vec3 moment_of(const loads::Wrench& w) { return {w.mx, w.my, w.mz}; }
inline loads::Wrench make_wrench(const Vec3& f, const Vec3& m) {
  return {f.x(), f.y(), f.z(), m.x(), m.y(), m.z()};
}

}  // namespace detail

/// Interface wrenches from static equilibrium of each outboard subassembly.
/// `gravity_mps2` acts along world -z on every module of the component.
inline WrenchMap propagate_wrench(const ModuleGraph& g, const AppliedLoad& applied,
                                  std::optional<double> gravity_mps2 = std::nullopt) {
  g.module(applied.module);
  require(loads::is_finite(applied.wrench), ErrorKind::parameter, "applied wrench must be finite");
  const std::set<std::string> comp = g.locked_component(applied.module);

  std::vector<std::string> grounded;
  for (const auto& m : comp) {
    if (g.module(m).grounded) grounded.push_back(m);
  }
  require(!grounded.empty(), ErrorKind::unsupported,
          "module '" + applied.module + "' is not connected to a grounded module");
  std::size_t locked_edges = 0;
  for (const auto& [id, e] : g.edges()) {
    if (e.locked() && comp.contains(e.a.module)) ++locked_edges;
  }
  require(locked_edges + 1 == comp.size(), ErrorKind::statically_indeterminate,
          "closed loop of Locked interfaces");
  require(grounded.size() == 1, ErrorKind::statically_indeterminate,
          "more than one grounded module in the loaded component");

  const std::string& root = grounded.front();
  const auto pose = g.world_poses(true);

  // Tree order from the root.
  std::vector<std::string> order{root};
  std::map<std::string, std::pair<std::string, int>> parent{{root, {"", -1}}};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& [eid, next] : g.locked_neighbours(order[i])) {
      if (parent.contains(next)) continue;
      parent[next] = {order[i], eid};
      order.push_back(next);
    }
  }

  // External load per module as (force, moment about world origin).
  std::map<std::string, std::pair<Vec3, Vec3>> subtotal;
  for (const auto& m : order) {
    const Pose& p = pose.at(m);
    Vec3 f = Vec3::Zero();
    Vec3 mo = Vec3::Zero();
    if (m == applied.module) {
      f += p.rotation * detail::force_of(applied.wrench);
      mo += p.rotation * detail::moment_of(applied.wrench);
    }
    if (gravity_mps2) f += Vec3(0.0, 0.0, -g.module(m).mass_kg * *gravity_mps2);
    subtotal[m] = {f, mo + p.translation.cross(f)};
  }

  WrenchMap out;
  out.root = root;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::string& m = *it;
    if (m == root) continue;
    const auto& [up, eid] = parent.at(m);
    const auto& [f, mo] = subtotal.at(m);
    subtotal[up].first += f;
    subtotal[up].second += mo;

    const Edge& e = g.edge(eid);
    const PortRef& inboard_port = e.a.module == up ? e.a : e.b;
    const Pose frame = pose.at(up) * g.module(up).port(inboard_port.port).pose;
    const Vec3 moment_at_port = mo - frame.translation.cross(f);
    EdgeLoad el;
    el.edge = eid;
    el.inboard = up;
    el.outboard = m;
    el.wrench = detail::make_wrench(frame.rotation.transpose() * f,
                                    frame.rotation.transpose() * moment_at_port);
    el.dual_locked = coupling::dual_locked(e.state);
    el.report = loads::check_load(el.wrench, g.config().envelope, el.dual_locked);
    out.edges.push_back(el);
  }
  std::sort(out.edges.begin(), out.edges.end(),
            [](const EdgeLoad& x, const EdgeLoad& y) { return x.edge < y.edge; });

  const auto& [f_all, m_all] = subtotal.at(root);
  const Vec3 root_origin = pose.at(root).translation;
  out.reaction_force = -f_all;
  out.reaction_moment = -(m_all - root_origin.cross(f_all));
  return out;
}

// ---------------------------------------------------------------------------
// Reconfiguration plans

struct PlanStep {
  enum class Action { dock, undock } action = Action::dock;
  PortRef a;
  PortRef b;  // dock only
  face::Misalignment misalignment{};
};

struct StepOutcome {
  std::size_t index = 0;
  std::string action;
  bool ok = false;
  std::string message;
  std::vector<std::string> stranded;
  std::map<std::string, bool> grounded;  // ground connectivity after the step
};

struct ReconfigureReport {
  bool completed = false;
  std::optional<std::size_t> aborted_at;
  std::vector<StepOutcome> steps;
};

/// Executes the plan in order and stops at the first failing step; the
/// applied prefix stays in place.
inline ReconfigureReport reconfigure(ModuleGraph& g, const std::vector<PlanStep>& plan,
                                     bool keep_grounded = false) {
  ReconfigureReport rep;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const PlanStep& s = plan[i];
    StepOutcome o;
    o.index = i;
    o.action = s.action == PlanStep::Action::dock ? "dock" : "undock";
    try {
      if (s.action == PlanStep::Action::dock) {
        const DockOutcome d = g.dock(s.a, s.b, s.misalignment);
        o.ok = d.docked;
        o.message = d.docked ? "edge " + std::to_string(d.edge) + " Locked" : d.rejection;
      } else {
        const UndockOutcome u = g.undock(s.a, keep_grounded);
        o.ok = u.undocked;
        o.message = u.undocked ? "undocked " + s.a.str() : u.rejection;
        o.stranded = u.stranded;
      }
    } catch (const Error& e) {
      o.ok = false;
      o.message = std::string(kind_name(e.kind())) + ": " + e.what();
    }
    for (const auto& [mid, m] : g.modules()) o.grounded[mid] = g.connected_to_ground(mid);
    rep.steps.push_back(o);
    if (!o.ok) {
      rep.aborted_at = i;
      return rep;
    }
  }
  rep.completed = true;
  return rep;
}

}  // namespace petlock::assembly
