#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "petlock/error.hpp"

namespace petlock::loads {

/// Interface-frame wrench; fz is the traction axis (tension positive),
/// mx/my bending, mz torsion.
struct Wrench {
  double fx = 0.0, fy = 0.0, fz = 0.0;
  double mx = 0.0, my = 0.0, mz = 0.0;

  Wrench operator+(const Wrench& o) const {
    return {fx + o.fx, fy + o.fy, fz + o.fz, mx + o.mx, my + o.my, mz + o.mz};
  }
  Wrench operator*(double s) const { return {fx * s, fy * s, fz * s, mx * s, my * s, mz * s}; }
  Wrench operator-() const { return *this * -1.0; }
};

inline bool is_finite(const Wrench& w) {
  for (double v : {w.fx, w.fy, w.fz, w.mx, w.my, w.mz}) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

enum class InteractionRule { linear, max_component };

struct LoadEnvelope {
  double traction_max_N = 3000.0;
  double bending_max_Nm = 500.0;
  double torsion_max_Nm = 500.0;
  // No published lateral rating; defaults to the traction rating.
  double lateral_max_N = 3000.0;
  bool lateral_assumed = true;
  InteractionRule interaction_rule = InteractionRule::max_component;
  double dual_lock_factor = 1.5;
};

inline void validate(const LoadEnvelope& e) {
  for (double v : {e.traction_max_N, e.bending_max_Nm, e.torsion_max_Nm, e.lateral_max_N}) {
    require(std::isfinite(v) && v > 0.0, ErrorKind::parameter, "load limits must be > 0");
  }
  require(e.dual_lock_factor >= 1.0, ErrorKind::parameter, "dual_lock_factor must be >= 1");
}

struct LoadReport {
  double traction_u = 0.0;
  double lateral_u = 0.0;
  double bending_u = 0.0;
  double torsion_u = 0.0;
  double combined_u = 0.0;  // sum or max, per the interaction rule
  bool pass = true;
  bool dual_locked = false;
};

/// Utilization against the envelope. Lateral force and bending moment are
/// taken as resultants of their two in-plane components.
inline LoadReport check_load(const Wrench& w, const LoadEnvelope& env, bool dual_locked) {
  validate(env);
  require(is_finite(w), ErrorKind::parameter, "wrench must be finite");
  const double k = dual_locked ? env.dual_lock_factor : 1.0;
  LoadReport r;
  r.dual_locked = dual_locked;
  r.traction_u = std::abs(w.fz) / (k * env.traction_max_N);
  r.lateral_u = std::hypot(w.fx, w.fy) / (k * env.lateral_max_N);
  r.bending_u = std::hypot(w.mx, w.my) / (k * env.bending_max_Nm);
  r.torsion_u = std::abs(w.mz) / (k * env.torsion_max_Nm);
  if (env.interaction_rule == InteractionRule::linear) {
    r.combined_u = r.traction_u + r.lateral_u + r.bending_u + r.torsion_u;
  } else {
    r.combined_u = std::max({r.traction_u, r.lateral_u, r.bending_u, r.torsion_u});
  }
  r.pass = r.combined_u <= 1.0;
  return r;
}

struct StressRow {
  std::string condition;
  double max_strain_mm;
  double max_stress_MPa;
};

/// FEA reference table of the locked interface, verbatim.
struct StressReference {
  std::vector<StressRow> rows;
  double tensile_reference_N = 3000.0;
  double rotation_reference_Nm = 500.0;
  double bending_reference_Nm = 500.0;
};

inline StressReference reference_stress_table() {
  return {{{"tensile_3000N", 0.0037, 21.999},
           {"rotation_500Nm", 0.0034, 44.781},
           {"bending_500Nm", 0.0033, 52.237},
           {"combined_3000N_500Nm_500Nm", 0.0057, 39.519}},
          3000.0,
          500.0,
          500.0};
}

inline const StressRow& row(const StressReference& ref, const std::string& condition) {
  for (const auto& r : ref.rows) {
    if (r.condition == condition) return r;
  }
  throw Error(ErrorKind::parameter, "stress reference lacks row '" + condition + "'");
}

inline void validate(const StressReference& ref) {
  require(!ref.rows.empty(), ErrorKind::parameter, "stress reference is empty");
  for (const auto& r : ref.rows) {
    require(r.max_strain_mm > 0.0 && r.max_stress_MPa > 0.0, ErrorKind::parameter,
            "stress reference rows must be positive");
  }
  for (double v : {ref.tensile_reference_N, ref.rotation_reference_Nm, ref.bending_reference_Nm}) {
    require(v > 0.0, ErrorKind::parameter, "reference loads must be > 0");
  }
}

struct StressEstimate {
  double traction_MPa = 0.0;
  double torsion_MPa = 0.0;
  double bending_MPa = 0.0;
  double max_MPa = 0.0;
  // Several components are loaded; their maxima sit at different places so
  // the single-component maximum is not a combined prediction.
  bool multi_component = false;
  // A lateral force is present and has no reference row.
  bool lateral_unmodeled = false;
};

/// Linear per-case scaling of the single-load reference rows. The combined
/// reference row is data only and never used to predict anything.
inline StressEstimate stress_estimate(const Wrench& w, const StressReference& ref) {
  validate(ref);
  require(is_finite(w), ErrorKind::parameter, "wrench must be finite");
  StressEstimate s;
  s.traction_MPa = row(ref, "tensile_3000N").max_stress_MPa * std::abs(w.fz) / ref.tensile_reference_N;
  s.torsion_MPa = row(ref, "rotation_500Nm").max_stress_MPa * std::abs(w.mz) / ref.rotation_reference_Nm;
  s.bending_MPa =
      row(ref, "bending_500Nm").max_stress_MPa * std::hypot(w.mx, w.my) / ref.bending_reference_Nm;
  s.max_MPa = std::max({s.traction_MPa, s.torsion_MPa, s.bending_MPa});
  const int loaded = (w.fz != 0.0) + (w.mz != 0.0) + (w.mx != 0.0 || w.my != 0.0);
  s.multi_component = loaded > 1;
  s.lateral_unmodeled = w.fx != 0.0 || w.fy != 0.0;
  return s;
}

}  // namespace petlock::loads
