#pragma once

// Quasi-static model of the pyramid wedge driving three radial locking pins.
//
// Per-pin free body (radial = pin travel, axial = rod travel):
//   f1 = mu1 * F1                       friction at the pyramid face
//   f2 = mu2 * F2                       friction at the pin guide
//   F2 = f1 sin(theta) + F1 cos(theta)  axial balance of the pin
//   F1 sin(theta) - f1 cos(theta) - f2 = P   radial balance against load P
// so F1 = P / margin with
//   margin = sin(theta) - (mu1 cos(theta) + mu1 mu2 sin(theta) + mu2 cos(theta)).

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "petlock/error.hpp"
#include "petlock/geometry.hpp"

namespace petlock::lock {

struct MechanismParams {
  double mu1 = 0.3;       // pyramid <-> pin
  double mu2 = 0.3;       // pin <-> guide
  double theta_deg = 45.0;
  double beta_deg = 5.0;  // rail ramp angle for self-locking
  int pin_count = 3;
  double stroke_mm = 10.0;
  double rod_speed_mm_s = 1.0;
  double rod_force_capacity_N = 800.0;
};

inline void validate(const MechanismParams& p) {
  require(std::isfinite(p.mu1) && p.mu1 >= 0.0, ErrorKind::parameter, "mu1 must be >= 0");
  require(std::isfinite(p.mu2) && p.mu2 >= 0.0, ErrorKind::parameter, "mu2 must be >= 0");
  // theta = 0 is a well-defined (flat) wedge; movability rejects it anyway.
  require(p.theta_deg >= 0.0 && p.theta_deg < 90.0, ErrorKind::parameter,
          "theta_deg must lie in [0, 90)");
  require(p.beta_deg >= 0.0 && p.beta_deg < 90.0, ErrorKind::parameter,
          "beta_deg must lie in [0, 90)");
  require(p.pin_count >= 1, ErrorKind::parameter, "pin_count must be >= 1");
  require(p.stroke_mm > 0.0 && std::isfinite(p.stroke_mm), ErrorKind::parameter,
          "stroke_mm must be > 0");
  require(p.rod_speed_mm_s > 0.0 && std::isfinite(p.rod_speed_mm_s), ErrorKind::parameter,
          "rod_speed_mm_s must be > 0");
  require(p.rod_force_capacity_N > 0.0, ErrorKind::parameter,
          "rod_force_capacity_N must be > 0");
}

struct PinForceState {
  double f1 = 0.0;
  double f2 = 0.0;
  double normal_f1 = 0.0;
  double normal_f2 = 0.0;
};

/// Guide normal force F2 produced by a pyramid contact normal force F1.
inline double pin_guide_normal(double normal_f1, const MechanismParams& params) {
  validate(params);
  require(normal_f1 >= 0.0, ErrorKind::parameter, "normal_f1 must be >= 0");
  const double th = deg_to_rad(params.theta_deg);
  return params.mu1 * normal_f1 * std::sin(th) + normal_f1 * std::cos(th);
}

struct Movability {
  double margin = 0.0;          // sin(theta) - friction terms
  double normalized_rhs = 0.0;  // friction terms / sin(theta)
  bool movable = false;
};

inline Movability movability(const MechanismParams& params) {
  validate(params);
  const double th = deg_to_rad(params.theta_deg);
  const double s = std::sin(th);
  const double c = std::cos(th);
  const double rhs = params.mu1 * c + params.mu1 * params.mu2 * s + params.mu2 * c;
  Movability m;
  m.margin = s - rhs;
  // At theta = 45 deg this is mu1 + mu1*mu2 + mu2 (cos/sin == 1).
  m.normalized_rhs = s > 0.0 ? rhs / s : std::numeric_limits<double>::infinity();
  m.movable = m.margin > 0.0;
  return m;
}

inline double movability_margin(const MechanismParams& params) {
  return movability(params).margin;
}

/// Holding check for the rail ramp: strict mu_rail > tan(beta).
inline bool self_locking(const MechanismParams& params, double mu_rail) {
  validate(params);
  require(std::isfinite(mu_rail) && mu_rail >= 0.0, ErrorKind::parameter,
          "mu_rail must be >= 0");
  return mu_rail > std::tan(deg_to_rad(params.beta_deg));
}

/// Full per-pin force state holding a radial resistance P.
inline PinForceState pin_forces(double resisting_force, const MechanismParams& params) {
  require(resisting_force >= 0.0, ErrorKind::parameter, "resisting force must be >= 0");
  const Movability m = movability(params);
  require(m.movable, ErrorKind::jam,
          "mechanism is not movable (margin " + std::to_string(m.margin) + ")");
  PinForceState st;
  st.normal_f1 = resisting_force / m.margin;
  st.f1 = params.mu1 * st.normal_f1;
  st.normal_f2 = pin_guide_normal(st.normal_f1, params);
  st.f2 = params.mu2 * st.normal_f2;
  return st;
}

/// Axial push-rod force holding every pin against `resisting_force` (per pin).
/// The pyramid's axial reaction from one pin equals the guide normal F2;
/// loading is symmetric over pin_count pins.
inline double required_rod_force(double resisting_force, const MechanismParams& params) {
  return params.pin_count * pin_forces(resisting_force, params).normal_f2;
}

enum class StrokeDirection { locking, unlocking };

inline const char* direction_name(StrokeDirection d) {
  return d == StrokeDirection::locking ? "locking" : "unlocking";
}

struct StrokeSample {
  double time_s;
  double rod_position_mm;
  double pin_radial_mm;
  double pin_contact_force_N;
  double rod_force_N;
};

struct StrokeTrace {
  StrokeDirection direction = StrokeDirection::locking;
  std::vector<StrokeSample> samples;
};

using ResistanceProfile = std::function<double(double radial_mm)>;

/// Quasi-static stroke. Samples are uniform in time with step T/n <= dt so
/// that the locking and unlocking traces land on the same positions.
inline StrokeTrace simulate_stroke(const MechanismParams& params,
                                   const ResistanceProfile& resistance,
                                   StrokeDirection direction, double dt = 1e-3) {
  validate(params);
  require(dt > 0.0 && std::isfinite(dt), ErrorKind::parameter, "dt must be > 0");
  const Movability m = movability(params);
  require(m.movable, ErrorKind::jam,
          "mechanism is not movable (margin " + std::to_string(m.margin) + ")");

  const double duration = params.stroke_mm / params.rod_speed_mm_s;
  const auto n = static_cast<std::size_t>(std::ceil(duration / dt - 1e-9));
  const std::size_t intervals = n == 0 ? 1 : n;
  const double tan_theta = std::tan(deg_to_rad(params.theta_deg));

  StrokeTrace trace;
  trace.direction = direction;
  trace.samples.reserve(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) {
    const std::size_t travelled = direction == StrokeDirection::locking ? k : intervals - k;
    const double rod = params.stroke_mm * static_cast<double>(travelled) /
                       static_cast<double>(intervals);
    const double radial = tan_theta * rod;
    const double load = resistance ? resistance(radial) : 0.0;
    require(std::isfinite(load) && load >= 0.0, ErrorKind::parameter,
            "resistance profile must return a finite non-negative force");
    const PinForceState pins = pin_forces(load, params);
    const double rod_force = params.pin_count * pins.normal_f2;
    if (rod_force > params.rod_force_capacity_N) {
      throw Error(ErrorKind::stall, "rod force " + std::to_string(rod_force) +
                                        " N exceeds capacity " +
                                        std::to_string(params.rod_force_capacity_N) + " N");
    }
    const double t = duration * static_cast<double>(k) / static_cast<double>(intervals);
    trace.samples.push_back({t, rod, radial, pins.normal_f1, rod_force});
  }
  return trace;
}

inline ResistanceProfile constant_resistance(double force_N) {
  return [force_N](double) { return force_N; };
}

inline ResistanceProfile spring_resistance(double stiffness_N_per_mm, double preload_N = 0.0) {
  return [=](double radial) { return preload_N + stiffness_N_per_mm * radial; };
}

}  // namespace petlock::lock
