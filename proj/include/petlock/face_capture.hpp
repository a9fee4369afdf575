#pragma once

// Parametric 3-fold connection face and misalignment capture envelope.
//
// Face model. Each half carries three petals whose tips sit at the groove
// pitch radius, and three matching conical grooves. Petal tips of the moving
// face (B) ride in the grooves of the fixed face (A). A groove is a rounded
// cone: depth = petal height, flank slope tan(flank angle), with a 45 degree
// chamfer of `chamfer_depth_mm` at the mouth. Outside the mouth the face is
// flat land.
//
// Capture. The approach is a compliant descent in two phases:
//   1. capture: base translation and rotation comply while any deflection is
//      held; the summed tip height above the seats is reduced by compass
//      steps. A tip on flat land sees no slope and the descent stalls there.
//   2. seating: engaged only if every tip is inside its groove below A's face
//      plane at the moment B's tilted rim touches A's land. Then all five DOFs
//      comply and the tips are drawn onto their seats.
// The pose is mated when the residual is below 0.01 mm / 0.01 deg.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "petlock/error.hpp"
#include "petlock/geometry.hpp"

namespace petlock::face {

struct FaceProfile {
  double outer_diameter_mm = 80.0;
  int petal_count = 3;
  double petal_height_mm = 14.0;
  double petal_flank_angle_deg = 50.0;
  double groove_radius_mm = 17.0;  // pitch radius of the groove seats
  std::array<double, 3> groove_positions_deg{0.0, 120.0, 240.0};
  double chamfer_depth_mm = 1.0;  // 45 deg lead-in, clipped to the petal height
};

// Seat rounding radius of the groove cone.
inline constexpr double kSeatRounding_mm = 0.5;
inline constexpr double kResidualTranslation_mm = 0.01;
inline constexpr double kResidualAngle_deg = 0.01;
inline constexpr int kIterationBudget = 10000;

inline void validate(const FaceProfile& p) {
  require(std::isfinite(p.outer_diameter_mm) && p.outer_diameter_mm > 0.0,
          ErrorKind::parameter, "outer_diameter_mm must be > 0");
  require(p.petal_count == 3, ErrorKind::parameter, "petal_count is fixed at 3");
  // Zero petal height is the flat-face limit and stays valid.
  require(std::isfinite(p.petal_height_mm) && p.petal_height_mm >= 0.0,
          ErrorKind::parameter, "petal_height_mm must be >= 0");
  require(p.petal_flank_angle_deg > 0.0 && p.petal_flank_angle_deg < 90.0,
          ErrorKind::parameter, "petal_flank_angle_deg must lie in (0, 90)");
  require(p.groove_radius_mm > 0.0 && p.groove_radius_mm < 0.5 * p.outer_diameter_mm,
          ErrorKind::parameter, "groove_radius_mm must lie inside the face");
  require(std::isfinite(p.chamfer_depth_mm) && p.chamfer_depth_mm >= 0.0,
          ErrorKind::parameter, "chamfer_depth_mm must be >= 0");
  for (int k = 1; k < 3; ++k) {
    const double gap = p.groove_positions_deg[k] - p.groove_positions_deg[0];
    require(std::abs(gap - 120.0 * k) < 1e-9, ErrorKind::parameter,
            "groove positions must be spaced at 120 deg");
  }
}

/// Radial section of one groove.
struct Funnel {
  double depth = 0.0;
  double chamfer = 0.0;
  double slope = 0.0;
  double flank_run = 0.0;  // horizontal extent of the flank
  double mouth = 0.0;      // radius where the groove meets the land

  /// Height above the seat at horizontal distance d from the groove axis.
  double height(double d) const {
    if (d >= mouth) return depth;
    if (d <= flank_run) {
      return slope * (std::sqrt(d * d + kSeatRounding_mm * kSeatRounding_mm) - kSeatRounding_mm);
    }
    return depth - chamfer + (d - flank_run);
  }
};

inline Funnel funnel_of(const FaceProfile& p) {
  Funnel f;
  f.depth = p.petal_height_mm;
  f.chamfer = std::min(p.chamfer_depth_mm, p.petal_height_mm);
  f.slope = std::tan(deg_to_rad(p.petal_flank_angle_deg));
  const double rise = (f.depth - f.chamfer) / f.slope + kSeatRounding_mm;
  f.flank_run = std::sqrt(std::max(0.0, rise * rise - kSeatRounding_mm * kSeatRounding_mm));
  f.mouth = f.flank_run + f.chamfer;
  return f;
}

struct Misalignment {
  double dx_mm = 0.0;
  double dy_mm = 0.0;
  double rot_deg = 0.0;
  double tilt_x_deg = 0.0;
  double tilt_y_deg = 0.0;
};

/// Same misalignment seen after rotating the whole rig by `angle_deg` about
/// the face axis.
inline Misalignment rotated_about_axis(const Misalignment& m, double angle_deg) {
  const double a = deg_to_rad(angle_deg);
  const double c = std::cos(a), s = std::sin(a);
  Misalignment r = m;
  r.dx_mm = c * m.dx_mm - s * m.dy_mm;
  r.dy_mm = s * m.dx_mm + c * m.dy_mm;
  r.tilt_x_deg = c * m.tilt_x_deg - s * m.tilt_y_deg;
  r.tilt_y_deg = s * m.tilt_x_deg + c * m.tilt_y_deg;
  return r;
}

namespace detail {

// q = {dx, dy, rot_deg, tilt_x_deg, tilt_y_deg}
using Dofs = std::array<double, 5>;

inline Mat3 orientation(const Dofs& q) {
  const Vec3 tilt(deg_to_rad(q[3]), deg_to_rad(q[4]), 0.0);
  return rotation_from_vector(tilt) * rot_z(deg_to_rad(q[2]));
}

struct Geometry {
  Funnel funnel;
  double rim_radius = 0.0;
  std::array<Vec3, 3> tips_b;  // petal tips in B's frame
  std::array<Vec3, 3> seats;   // groove seats in A's frame

  explicit Geometry(const FaceProfile& p) : funnel(funnel_of(p)), rim_radius(0.5 * p.outer_diameter_mm) {
    for (int k = 0; k < 3; ++k) {
      const double a = deg_to_rad(p.groove_positions_deg[k]);
      const Vec3 v(p.groove_radius_mm * std::cos(a), p.groove_radius_mm * std::sin(a),
                   -p.petal_height_mm);
      tips_b[k] = v;
      seats[k] = v;
    }
  }

  std::array<Vec3, 3> tips(const Dofs& q) const {
    const Mat3 r = orientation(q);
    const Vec3 t(q[0], q[1], 0.0);
    return {r * tips_b[0] + t, r * tips_b[1] + t, r * tips_b[2] + t};
  }

  // Horizontal distance to the nearest seat and that seat's index.
  std::pair<double, int> nearest_seat(const Vec3& tip) const {
    double best = std::numeric_limits<double>::infinity();
    int index = 0;
    for (int j = 0; j < 3; ++j) {
      const double d = std::hypot(tip.x() - seats[j].x(), tip.y() - seats[j].y());
      if (d < best) {
        best = d;
        index = j;
      }
    }
    return {best, index};
  }

  double capture_potential(const Dofs& q) const {
    double u = 0.0;
    for (const Vec3& tip : tips(q)) u += funnel.height(nearest_seat(tip).first);
    return u;
  }

  double seating_potential(const Dofs& q, const std::array<int, 3>& assignment) const {
    const auto tp = tips(q);
    double u = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double d2 = (tp[k] - seats[assignment[k]]).squaredNorm();
      u += std::sqrt(d2 + kSeatRounding_mm * kSeatRounding_mm) - kSeatRounding_mm;
    }
    return u;
  }
};

// Best-improvement compass search: every free coordinate is probed in both
// directions and only the largest decrease is taken. The accepted coordinate's
// step doubles up to its cap; when nothing improves all steps halve.
template <std::size_t N, class F, class Mask>
std::array<double, N> compass_descent(const F& f, std::array<double, N> x,
                                      std::array<double, N> step,
                                      const std::array<double, N>& max_step, const Mask& free,
                                      double min_step, int budget) {
  double fx = f(x);
  for (int iter = 0; iter < budget; ++iter) {
    bool active = false;
    std::size_t best_i = N;
    double best_f = fx;
    std::array<double, N> best_x = x;
    for (std::size_t i = 0; i < N; ++i) {
      if (!free[i] || step[i] < min_step) continue;
      active = true;
      for (const double sign : {1.0, -1.0}) {
        auto trial = x;
        trial[i] += sign * step[i];
        const double ft = f(trial);
        if (ft < best_f) {
          best_f = ft;
          best_x = trial;
          best_i = i;
        }
      }
    }
    if (!active) break;
    if (best_i < N) {
      x = best_x;
      fx = best_f;
      step[best_i] = std::min(2.0 * step[best_i], max_step[best_i]);
    } else {
      for (std::size_t i = 0; i < N; ++i) {
        if (free[i]) step[i] *= 0.5;
      }
    }
  }
  return x;
}

inline bool within_residual(const Dofs& q) {
  return std::abs(q[0]) < kResidualTranslation_mm && std::abs(q[1]) < kResidualTranslation_mm &&
         std::abs(wrap_symmetric(q[2], 120.0)) < kResidualAngle_deg &&
         std::abs(q[3]) < kResidualAngle_deg && std::abs(q[4]) < kResidualAngle_deg;
}

// Rotates the problem into the sector [-60, 60) of its lateral (or tilt)
// direction so that 120-degree-equivalent inputs follow the same descent.
inline Misalignment canonical(const Misalignment& m) {
  double angle = 0.0;
  if (std::hypot(m.dx_mm, m.dy_mm) > 1e-12) {
    angle = rad_to_deg(std::atan2(m.dy_mm, m.dx_mm));
  } else if (std::hypot(m.tilt_x_deg, m.tilt_y_deg) > 1e-12) {
    angle = rad_to_deg(std::atan2(m.tilt_y_deg, m.tilt_x_deg));
  }
  const double sector = std::round(angle / 120.0);
  if (sector == 0.0) return m;
  return rotated_about_axis(m, -120.0 * sector);
}

}  // namespace detail

/// Diagnostics of one capture attempt.
struct CaptureResult {
  bool mated = false;
  bool engaged = false;
  detail::Dofs after_capture{};
  detail::Dofs final_pose{};
};

inline CaptureResult simulate_capture(const FaceProfile& profile, const Misalignment& mis) {
  validate(profile);
  for (double v : {mis.dx_mm, mis.dy_mm, mis.rot_deg, mis.tilt_x_deg, mis.tilt_y_deg}) {
    require(std::isfinite(v), ErrorKind::parameter, "misalignment must be finite");
  }
  const Misalignment m = detail::canonical(mis);
  detail::Dofs q{m.dx_mm, m.dy_mm, wrap_symmetric(m.rot_deg, 120.0), m.tilt_x_deg, m.tilt_y_deg};

  CaptureResult result;
  result.after_capture = q;
  result.final_pose = q;
  if (detail::within_residual(q)) {
    result.mated = result.engaged = true;
    return result;
  }

  const detail::Geometry geo(profile);
  const detail::Dofs small{0.01, 0.01, 0.01, 0.01, 0.01};
  const detail::Dofs cap{2.0, 2.0, 2.0, 1.0, 1.0};

  // Phase 1: capture with deflection held.
  const std::array<bool, 5> capture_free{true, true, true, false, false};
  q = detail::compass_descent<5>([&](const detail::Dofs& x) { return geo.capture_potential(x); },
                                 q, small, cap, capture_free, 1e-6, kIterationBudget);
  result.after_capture = q;

  // Engagement: press B down until the first contact, then require every tip
  // below A's land and inside its groove mouth.
  const auto tips = geo.tips(q);
  const double tilt = deg_to_rad(std::hypot(q[3], q[4]));
  double contact = geo.rim_radius * std::sin(tilt);
  std::array<int, 3> assignment{};
  std::array<double, 3> dist{};
  for (int k = 0; k < 3; ++k) {
    const auto [d, j] = geo.nearest_seat(tips[k]);
    dist[k] = d;
    assignment[k] = j;
    const double floor = -geo.funnel.depth + geo.funnel.height(d);
    contact = std::max(contact, floor - tips[k].z());
  }
  bool engaged = assignment[0] != assignment[1] && assignment[1] != assignment[2] &&
                 assignment[0] != assignment[2];
  for (int k = 0; k < 3 && engaged; ++k) {
    engaged = dist[k] < geo.funnel.mouth && contact + tips[k].z() < 0.0;
  }
  result.engaged = engaged;
  if (!engaged) return result;

  // Phase 2: seating with every DOF compliant.
  const std::array<bool, 5> all_free{true, true, true, true, true};
  q = detail::compass_descent<5>(
      [&](const detail::Dofs& x) { return geo.seating_potential(x, assignment); }, q, small, cap,
      all_free, 1e-7, kIterationBudget);
  result.final_pose = q;
  result.mated = detail::within_residual(q);
  return result;
}

/// True iff the compliant descent from `mis` reaches the mated pose.
inline bool mate_feasible(const FaceProfile& profile, const Misalignment& mis) {
  return simulate_capture(profile, mis).mated;
}

// ---------------------------------------------------------------------------
// Envelope search

enum class Axis { translation, rotation, deflection };

inline const char* axis_name(Axis a) {
  switch (a) {
    case Axis::translation: return "translation";
    case Axis::rotation: return "rotation";
    case Axis::deflection: return "deflection";
  }
  return "?";
}

/// Direction is the approach azimuth for translation/deflection; for rotation
/// a direction of 180 probes negative rotation.
struct AxisProbe {
  Axis axis = Axis::translation;
  double direction_deg = 0.0;
};

inline Misalignment misalignment_along(const AxisProbe& probe, double magnitude) {
  const double psi = deg_to_rad(probe.direction_deg);
  Misalignment m;
  switch (probe.axis) {
    case Axis::translation:
      m.dx_mm = magnitude * std::cos(psi);
      m.dy_mm = magnitude * std::sin(psi);
      break;
    case Axis::rotation:
      m.rot_deg = std::cos(psi) >= 0.0 ? magnitude : -magnitude;
      break;
    case Axis::deflection:
      m.tilt_x_deg = magnitude * std::cos(psi);
      m.tilt_y_deg = magnitude * std::sin(psi);
      break;
  }
  return m;
}

/// Search ceiling per axis. Rotation is capped by the 3-fold symmetry.
inline double axis_ceiling(const FaceProfile& profile, Axis axis) {
  switch (axis) {
    case Axis::translation: return profile.outer_diameter_mm;
    case Axis::rotation: return 60.0;
    case Axis::deflection: return 45.0;
  }
  return 0.0;
}

struct AxisLimit {
  double limit = 0.0;
  bool linear_fallback = false;
  int evaluations = 0;
};

namespace detail {

struct LatticeProbe {
  const FaceProfile& profile;
  AxisProbe probe;
  double tol;
  int evaluations = 0;

  bool feasible(long k) {
    ++evaluations;
    return mate_feasible(profile, misalignment_along(probe, static_cast<double>(k) * tol));
  }
};

inline long lattice_top(const FaceProfile& profile, Axis axis, double tol) {
  return static_cast<long>(std::floor(axis_ceiling(profile, axis) / tol + 1e-9));
}

}  // namespace detail

/// Brute-force boundary: scans k = 1, 2, ... and stops at the first
/// infeasible lattice point. Used as the fallback and as the test oracle.
inline AxisLimit linear_scan_limit(const FaceProfile& profile, const AxisProbe& probe,
                                   double tol) {
  require(tol > 0.0, ErrorKind::parameter, "tol must be > 0");
  detail::LatticeProbe lp{profile, probe, tol};
  require(lp.feasible(0), ErrorKind::degenerate_profile, "zero misalignment is not feasible");
  const long top = detail::lattice_top(profile, probe.axis, tol);
  long k = 1;
  while (k <= top && lp.feasible(k)) ++k;
  return {static_cast<double>(k - 1) * tol, false, lp.evaluations};
}

/// Largest lattice magnitude m = k * tol with feasibility at m and not at
/// m + tol, via exponential search and integer bisection.
inline AxisLimit envelope_axis_limit(const FaceProfile& profile, const AxisProbe& probe,
                                     double tol = 0.01) {
  require(tol > 0.0 && std::isfinite(tol), ErrorKind::parameter, "tol must be > 0");
  detail::LatticeProbe lp{profile, probe, tol};
  require(lp.feasible(0), ErrorKind::degenerate_profile, "zero misalignment is not feasible");
  const long top = detail::lattice_top(profile, probe.axis, tol);

  long lo = 0;
  long hi = -1;
  for (long k = 1;; k *= 2) {
    if (k >= top) {
      if (lp.feasible(top)) return {static_cast<double>(top) * tol, false, lp.evaluations};
      hi = top;
      break;
    }
    if (!lp.feasible(k)) {
      hi = k;
      break;
    }
    lo = k;
  }
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    if (lp.feasible(mid)) lo = mid;
    else hi = mid;
  }

  // Spot-check the bracket below the boundary; a miss means the ray is not
  // monotone and bisection cannot be trusted.
  constexpr int kChecks = 8;
  for (int i = 1; i < kChecks && lo > 1; ++i) {
    const long k = lo * i / kChecks;
    if (k > 0 && !lp.feasible(k)) {
      AxisLimit scan = linear_scan_limit(profile, probe, tol);
      scan.linear_fallback = true;
      scan.evaluations += lp.evaluations;
      return scan;
    }
  }
  return {static_cast<double>(lo) * tol, false, lp.evaluations};
}

struct DirectionLimit {
  Axis axis;
  double direction_deg;
  double limit;
};

struct Envelope {
  double translation_limit_mm = 0.0;
  double rotation_limit_deg = 0.0;
  double deflection_limit_deg = 0.0;
  std::vector<DirectionLimit> per_direction;
};

inline Envelope full_envelope(const FaceProfile& profile, double angular_resolution_deg = 10.0,
                              double tol = 0.01) {
  validate(profile);
  require(angular_resolution_deg > 0.0 && angular_resolution_deg <= 360.0, ErrorKind::parameter,
          "angular resolution must lie in (0, 360]");
  const long count = std::max<long>(1, std::lround(std::floor(360.0 / angular_resolution_deg + 1e-9)));

  Envelope env;
  env.translation_limit_mm = std::numeric_limits<double>::infinity();
  env.rotation_limit_deg = std::numeric_limits<double>::infinity();
  env.deflection_limit_deg = std::numeric_limits<double>::infinity();
  for (Axis axis : {Axis::translation, Axis::deflection}) {
    for (long i = 0; i < count; ++i) {
      const double psi = angular_resolution_deg * static_cast<double>(i);
      const double lim = envelope_axis_limit(profile, {axis, psi}, tol).limit;
      env.per_direction.push_back({axis, psi, lim});
      double& quoted = axis == Axis::translation ? env.translation_limit_mm : env.deflection_limit_deg;
      quoted = std::min(quoted, lim);
    }
  }
  for (double psi : {0.0, 180.0}) {
    const double lim = envelope_axis_limit(profile, {Axis::rotation, psi}, tol).limit;
    env.per_direction.push_back({Axis::rotation, psi, lim});
    env.rotation_limit_deg = std::min(env.rotation_limit_deg, lim);
  }
  return env;
}

// ---------------------------------------------------------------------------
// Calibration

struct CalibrationResult {
  FaceProfile profile;
  Envelope envelope;
  std::array<double, 3> residuals{};  // relative, per axis
  double max_residual = 0.0;
  int evaluations = 0;
};

struct CalibrationOptions {
  double resolution_deg = 30.0;
  double tol = 0.01;
  double accept = 0.10;  // max relative residual accepted
  double goal = 0.005;   // search stops once below this
  int max_evaluations = 300;
  std::uint64_t seed = 0;
};

namespace detail {

// Search vector: {petal_height, flank_angle, groove_radius, chamfer}
using CalibrationVector = std::array<double, 4>;

inline FaceProfile profile_from(const CalibrationVector& v, const FaceProfile& base) {
  FaceProfile p = base;
  p.petal_height_mm = v[0];
  p.petal_flank_angle_deg = v[1];
  p.groove_radius_mm = v[2];
  p.chamfer_depth_mm = v[3];
  return p;
}

inline CalibrationVector clamp_to_bounds(CalibrationVector v, double rim) {
  v[0] = std::clamp(v[0], 0.1, 38.0);
  v[1] = std::clamp(v[1], 5.0, 85.0);
  v[2] = std::clamp(v[2], 1.0, rim - 1.0);
  v[3] = std::clamp(v[3], 0.0, v[0]);
  return v;
}

// Closed-form start: mouth = translation target, chord of the rotation target
// equals the mouth, and the rim-contact rule sets the petal height.
inline CalibrationVector initial_guess(const Envelope& t, double rim) {
  const double mouth = t.translation_limit_mm;
  const double pitch = mouth / (2.0 * std::sin(deg_to_rad(0.5 * t.rotation_limit_deg)));
  const double height = std::tan(deg_to_rad(t.deflection_limit_deg)) * (rim + pitch);
  const double chamfer = 0.1 * height;
  const double run = std::max(mouth - chamfer, 0.1);
  const double slope = (height - chamfer) /
                       (std::sqrt(run * run + kSeatRounding_mm * kSeatRounding_mm) - kSeatRounding_mm);
  return clamp_to_bounds({height, rad_to_deg(std::atan(slope)), pitch, chamfer}, rim);
}

}  // namespace detail

inline std::array<double, 3> relative_residuals(const Envelope& got, const Envelope& target) {
  return {std::abs(got.translation_limit_mm - target.translation_limit_mm) / target.translation_limit_mm,
          std::abs(got.rotation_limit_deg - target.rotation_limit_deg) / target.rotation_limit_deg,
          std::abs(got.deflection_limit_deg - target.deflection_limit_deg) /
              target.deflection_limit_deg};
}

/// Fits petal height, flank angle, groove pitch radius and chamfer so that
/// the envelope matches `targets`. Coordinate search with step halving;
/// coordinate order per sweep is drawn from `seed`.
inline CalibrationResult calibrate_profile(const Envelope& targets,
                                           const CalibrationOptions& opt = {},
                                           const FaceProfile& base = {}) {
  for (double v : {targets.translation_limit_mm, targets.rotation_limit_deg,
                   targets.deflection_limit_deg}) {
    require(std::isfinite(v) && v > 0.0, ErrorKind::parameter, "calibration targets must be > 0");
  }
  const double rim = 0.5 * base.outer_diameter_mm;

  int evaluations = 0;
  auto evaluate = [&](const detail::CalibrationVector& v) {
    CalibrationResult r;
    r.profile = detail::profile_from(v, base);
    r.envelope = full_envelope(r.profile, opt.resolution_deg, opt.tol);
    r.residuals = relative_residuals(r.envelope, targets);
    r.max_residual = *std::max_element(r.residuals.begin(), r.residuals.end());
    ++evaluations;
    return r;
  };

  detail::CalibrationVector x = detail::initial_guess(targets, rim);
  CalibrationResult best = evaluate(x);

  // No profile can exceed the search ceilings, so searching is pointless.
  const FaceProfile probe = detail::profile_from(x, base);
  if (targets.translation_limit_mm > axis_ceiling(probe, Axis::translation) ||
      targets.rotation_limit_deg > axis_ceiling(probe, Axis::rotation) ||
      targets.deflection_limit_deg > axis_ceiling(probe, Axis::deflection)) {
    throw Error(ErrorKind::calibration_failure,
                "targets exceed the geometric ceilings of the face; best relative residual " +
                    std::to_string(best.max_residual));
  }
  detail::CalibrationVector step{1.0, 4.0, 1.0, 0.5};
  std::mt19937_64 rng(opt.seed);
  std::array<int, 4> order{0, 1, 2, 3};

  auto done = [&] { return best.max_residual <= opt.goal || evaluations >= opt.max_evaluations; };
  while (!done()) {
    std::shuffle(order.begin(), order.end(), rng);
    bool improved = false;
    for (int i : order) {
      for (const double sign : {1.0, -1.0}) {
        auto trial = x;
        trial[i] += sign * step[i];
        trial = detail::clamp_to_bounds(trial, rim);
        if (trial == x) continue;
        CalibrationResult r = evaluate(trial);
        if (r.max_residual < best.max_residual) {
          best = r;
          x = trial;
          improved = true;
          break;
        }
      }
      if (done()) break;
    }
    if (!improved) {
      for (double& s : step) s *= 0.5;
      if (step[0] < 1e-3) break;
    }
  }
  best.evaluations = evaluations;

  if (!(best.max_residual <= opt.accept)) {
    throw Error(ErrorKind::calibration_failure,
                "calibration did not reach targets; best relative residual " +
                    std::to_string(best.max_residual));
  }
  return best;
}

/// Profile fitted to a 12 mm / 41 deg / 14 deg envelope (see calibrate
/// command); kept here so that analyses do not re-run the fit.
inline FaceProfile reference_profile() {
  FaceProfile p;
  p.petal_height_mm = 14.244783411282704;
  p.petal_flank_angle_deg = 51.803451486679407;
  p.groove_radius_mm = 17.132705708320355;
  p.chamfer_depth_mm = 1.4244783411282704;
  return p;
}

}  // namespace petlock::face
