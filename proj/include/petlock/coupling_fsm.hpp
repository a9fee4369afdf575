#pragma once

// Discrete-event coupling sequence of a genderless interface.
//
//   Idle --approach(feasible)--> Aligned --start_lock--> Capturing --> Locking
//   Locking --(lock_duration of ticks)--> Locked --start_unlock--> Unlocking
//   Unlocking --(lock_duration of ticks)--> Idle
//   any --inject_fault--> Fault(kind), absorbing until reset --> Idle
//
// Capture is instantaneous once the faces are mate-feasible; the coupling time
// is spent in the rod stroke (Locking / Unlocking).

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "petlock/error.hpp"
#include "petlock/face_capture.hpp"

namespace petlock::coupling {

enum class Phase { idle, aligned, capturing, locking, locked, unlocking, fault };

inline const char* phase_name(Phase p) {
  switch (p) {
    case Phase::idle: return "Idle";
    case Phase::aligned: return "Aligned";
    case Phase::capturing: return "Capturing";
    case Phase::locking: return "Locking";
    case Phase::locked: return "Locked";
    case Phase::unlocking: return "Unlocking";
    case Phase::fault: return "Fault";
  }
  return "?";
}

enum class FaultKind { none, pin_jam, rod_stall, comms_loss, power_trip };

inline const char* fault_name(FaultKind f) {
  switch (f) {
    case FaultKind::none: return "none";
    case FaultKind::pin_jam: return "pin_jam";
    case FaultKind::rod_stall: return "rod_stall";
    case FaultKind::comms_loss: return "comms_loss";
    case FaultKind::power_trip: return "power_trip";
  }
  return "?";
}

inline FaultKind parse_fault(const std::string& s) {
  for (FaultKind f : {FaultKind::pin_jam, FaultKind::rod_stall, FaultKind::comms_loss,
                      FaultKind::power_trip}) {
    if (s == fault_name(f)) return f;
  }
  throw Error(ErrorKind::parameter, "unknown fault kind '" + s + "'");
}

struct InterfaceState {
  Phase phase = Phase::idle;
  FaultKind fault = FaultKind::none;
  bool side_a_locked = false;
  bool side_b_locked = false;
  double elapsed_in_phase = 0.0;

  bool operator==(const InterfaceState&) const = default;
};

enum class Sides { a, b, both };

inline const char* sides_name(Sides s) {
  switch (s) {
    case Sides::a: return "A";
    case Sides::b: return "B";
    case Sides::both: return "both";
  }
  return "?";
}

struct CouplingConfig {
  double lock_duration_s = 15.0;
  double capture_timeout_s = 60.0;  // Aligned falls back to Idle after this
  Sides which_sides = Sides::a;  // the partner face stays passive unless set to both
  bool allow_out_of_range = false;  // permit lock_duration_s outside [10, 20]
  double dual_lock_factor = 1.5;
};

inline void validate(const CouplingConfig& c) {
  require(std::isfinite(c.lock_duration_s) && c.lock_duration_s > 0.0, ErrorKind::parameter,
          "lock_duration_s must be > 0");
  require(c.allow_out_of_range || (c.lock_duration_s >= 10.0 && c.lock_duration_s <= 20.0),
          ErrorKind::parameter,
          "lock_duration_s must lie in [10, 20] unless allow_out_of_range is set");
  require(c.capture_timeout_s > 0.0, ErrorKind::parameter, "capture_timeout_s must be > 0");
  require(c.dual_lock_factor >= 1.0, ErrorKind::parameter, "dual_lock_factor must be >= 1");
}

enum class EventType { approach, start_lock, start_unlock, tick, inject_fault, reset };

inline const char* event_name(EventType e) {
  switch (e) {
    case EventType::approach: return "approach";
    case EventType::start_lock: return "start_lock";
    case EventType::start_unlock: return "start_unlock";
    case EventType::tick: return "tick";
    case EventType::inject_fault: return "inject_fault";
    case EventType::reset: return "reset";
  }
  return "?";
}

inline EventType parse_event(const std::string& s) {
  for (EventType e : {EventType::approach, EventType::start_lock, EventType::start_unlock,
                      EventType::tick, EventType::inject_fault, EventType::reset}) {
    if (s == event_name(e)) return e;
  }
  throw Error(ErrorKind::parameter, "unknown event '" + s + "'");
}

struct Event {
  EventType type = EventType::tick;
  face::Misalignment misalignment{};  // approach only
  FaultKind fault = FaultKind::none;  // inject_fault only

  static Event approach(const face::Misalignment& m) { return {EventType::approach, m, {}}; }
  static Event start_lock() { return {EventType::start_lock, {}, {}}; }
  static Event start_unlock() { return {EventType::start_unlock, {}, {}}; }
  static Event tick() { return {EventType::tick, {}, {}}; }
  static Event inject_fault(FaultKind f) { return {EventType::inject_fault, {}, f}; }
  static Event reset() { return {EventType::reset, {}, {}}; }
};

struct Transition {
  Phase from;
  Phase to;
  std::string reason;
};

struct StepResult {
  InterfaceState state;
  std::vector<Transition> transitions;
  std::string rejection;  // non-empty when an approach was refused
};

class CouplingMachine {
 public:
  explicit CouplingMachine(CouplingConfig config = {},
                           face::FaceProfile profile = face::reference_profile())
      : config_(config), profile_(profile) {
    validate(config_);
    face::validate(profile_);
  }

  const CouplingConfig& config() const { return config_; }
  const face::FaceProfile& profile() const { return profile_; }

  StepResult step(const InterfaceState& state, const Event& event, double dt) const {
    require(dt > 0.0 && std::isfinite(dt), ErrorKind::parameter, "dt must be > 0");
    StepResult r{state, {}, {}};
    InterfaceState& s = r.state;

    if (event.type == EventType::inject_fault) {
      require(event.fault != FaultKind::none, ErrorKind::parameter, "fault kind required");
      if (s.phase == Phase::fault) return r;
      move(r, Phase::fault, fault_name(event.fault));
      s.fault = event.fault;
      // Engagement is unknown after a fault; no side is reported as holding.
      s.side_a_locked = false;
      s.side_b_locked = false;
      return r;
    }
    if (event.type == EventType::reset) {
      if (s.phase != Phase::idle || s.side_a_locked || s.side_b_locked) move(r, Phase::idle, "reset");
      s = InterfaceState{};
      return r;
    }
    if (s.phase == Phase::fault) return r;

    switch (event.type) {
      case EventType::approach:
        require(s.phase == Phase::idle, ErrorKind::protocol,
                std::string("approach is only valid in Idle, not ") + phase_name(s.phase));
        if (face::mate_feasible(profile_, event.misalignment)) {
          move(r, Phase::aligned, "mate_feasible");
        } else {
          r.rejection = "misalignment outside capture envelope";
        }
        break;
      case EventType::start_lock:
        require(s.phase == Phase::aligned, ErrorKind::protocol,
                std::string("start_lock is only valid in Aligned, not ") + phase_name(s.phase));
        move(r, Phase::capturing, "start_lock");
        move(r, Phase::locking, "captured");
        break;
      case EventType::start_unlock:
        require(s.phase == Phase::locked, ErrorKind::protocol,
                std::string("start_unlock is only valid in Locked, not ") + phase_name(s.phase));
        move(r, Phase::unlocking, "start_unlock");
        break;
      case EventType::tick:
        advance(r, dt);
        break;
      default:
        break;
    }
    return r;
  }

 private:
  static void move(StepResult& r, Phase to, std::string reason) {
    r.transitions.push_back({r.state.phase, to, std::move(reason)});
    r.state.phase = to;
    r.state.elapsed_in_phase = 0.0;
  }

  bool expired(double elapsed) const {
    // Absorbs summation error of repeated dt increments.
    return elapsed >= config_.lock_duration_s - 1e-9;
  }

  void advance(StepResult& r, double dt) const {
    InterfaceState& s = r.state;
    s.elapsed_in_phase += dt;
    switch (s.phase) {
      case Phase::aligned:
        if (s.elapsed_in_phase > config_.capture_timeout_s) move(r, Phase::idle, "capture_timeout");
        break;
      case Phase::locking:
        if (expired(s.elapsed_in_phase)) {
          s.side_a_locked = config_.which_sides != Sides::b;
          s.side_b_locked = config_.which_sides != Sides::a;
          move(r, Phase::locked, "stroke_complete");
        }
        break;
      case Phase::unlocking:
        if (expired(s.elapsed_in_phase)) {
          s.side_a_locked = false;
          s.side_b_locked = false;
          move(r, Phase::idle, "stroke_complete");
        }
        break;
      default:
        break;
    }
  }

  CouplingConfig config_;
  face::FaceProfile profile_;
};

/// Load multiplier of a Locked interface: dual engagement raises it.
inline double lock_capacity_factor(const InterfaceState& state, double dual_lock_factor = 1.5) {
  require(state.phase == Phase::locked, ErrorKind::protocol,
          std::string("capacity factor needs Locked, not ") + phase_name(state.phase));
  return state.side_a_locked && state.side_b_locked ? dual_lock_factor : 1.0;
}

inline bool dual_locked(const InterfaceState& s) {
  return s.phase == Phase::locked && s.side_a_locked && s.side_b_locked;
}

// ---------------------------------------------------------------------------
// Event-script driver

struct TimedEvent {
  double t = 0.0;
  Event event;
};

struct LogRecord {
  double t = 0.0;
  std::string event;  // scripted event name, or "transition"
  Event input{};
  Transition transition{Phase::idle, Phase::idle, {}};
  std::string rejection;
  InterfaceState state;
};

struct RunResult {
  InterfaceState initial;
  InterfaceState final_state;
  std::vector<LogRecord> log;
  std::size_t ticks = 0;
};

/// Replays a timestamped script with ticks of `dt` between events. Tick times
/// are k * dt so that replays do not accumulate clock drift.
inline RunResult run_script(const CouplingMachine& machine, const InterfaceState& initial,
                            const std::vector<TimedEvent>& script, double dt) {
  require(dt > 0.0 && std::isfinite(dt), ErrorKind::parameter, "dt must be > 0");
  RunResult out;
  out.initial = initial;
  InterfaceState s = initial;
  std::size_t k = 0;

  auto record_transitions = [&](double t, const StepResult& r) {
    for (const auto& tr : r.transitions) {
      LogRecord rec;
      rec.t = t;
      rec.event = "transition";
      rec.transition = tr;
      rec.state = r.state;
      out.log.push_back(rec);
    }
  };

  double last = 0.0;
  for (const TimedEvent& te : script) {
    require(std::isfinite(te.t) && te.t >= last, ErrorKind::parameter,
            "script times must be finite and non-decreasing");
    last = te.t;
    while (static_cast<double>(k + 1) * dt <= te.t + 1e-12) {
      ++k;
      StepResult r = machine.step(s, Event::tick(), dt);
      s = r.state;
      record_transitions(static_cast<double>(k) * dt, r);
    }
    // A scripted tick only marks the clock; the generated ticks already
    // advanced the machine up to te.t.
    StepResult r = te.event.type == EventType::tick ? StepResult{s, {}, {}}
                                                    : machine.step(s, te.event, dt);
    LogRecord rec;
    rec.t = te.t;
    rec.event = event_name(te.event.type);
    rec.input = te.event;
    rec.rejection = r.rejection;
    rec.state = r.state;
    out.log.push_back(rec);
    s = r.state;
    record_transitions(te.t, r);
  }
  out.final_state = s;
  out.ticks = k;
  return out;
}

}  // namespace petlock::coupling
