#include <cmath>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "petlock/face_capture.hpp"

using namespace petlock;
using namespace petlock::face;

namespace {

FaceProfile flat_face() {
  FaceProfile p = reference_profile();
  p.petal_height_mm = 0.0;
  p.chamfer_depth_mm = 0.0;
  return p;
}

Misalignment random_misalignment(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> lateral(-16.0, 16.0);
  std::uniform_real_distribution<double> rot(-60.0, 60.0);
  std::uniform_real_distribution<double> tilt(-12.0, 12.0);
  return {lateral(rng), lateral(rng), rot(rng), tilt(rng), tilt(rng)};
}

}  // namespace

TEST(FaceProfile, Validation) {
  EXPECT_NO_THROW(validate(reference_profile()));
  EXPECT_NO_THROW(validate(flat_face()));
  FaceProfile p = reference_profile();
  p.petal_flank_angle_deg = 90.0;
  EXPECT_THROW(validate(p), Error);
  p = reference_profile();
  p.groove_positions_deg = {0.0, 100.0, 240.0};
  EXPECT_THROW(validate(p), Error);
  p = reference_profile();
  p.petal_count = 4;
  EXPECT_THROW(validate(p), Error);
  p = reference_profile();
  p.outer_diameter_mm = -1.0;
  EXPECT_THROW(validate(p), Error);
}

TEST(MateFeasible, Examples) {
  const FaceProfile p = reference_profile();
  EXPECT_TRUE(mate_feasible(p, {}));
  EXPECT_FALSE(mate_feasible(p, {80.0, 0.0, 0.0, 0.0, 0.0}));
  EXPECT_TRUE(mate_feasible(p, {12.0, 0.0, 0.0, 0.0, 0.0}));
  for (double psi = 0.0; psi < 360.0; psi += 15.0) {
    const double a = deg_to_rad(psi);
    EXPECT_TRUE(mate_feasible(p, {12.0 * std::cos(a), 12.0 * std::sin(a), 0.0, 0.0, 0.0})) << psi;
  }
  EXPECT_TRUE(mate_feasible(p, {0.0, 0.0, 40.0, 0.0, 0.0}));
  EXPECT_TRUE(mate_feasible(p, {0.0, 0.0, -40.0, 0.0, 0.0}));
  EXPECT_TRUE(mate_feasible(p, {0.0, 0.0, 0.0, 13.0, 0.0}));
  EXPECT_FALSE(mate_feasible(p, {0.0, 0.0, 0.0, 30.0, 0.0}));
  EXPECT_THROW(mate_feasible(p, {std::nan(""), 0.0, 0.0, 0.0, 0.0}), Error);
}

TEST(MateFeasible, RotationIsModulo120) {
  const FaceProfile p = reference_profile();
  for (double r : {5.0, 30.0, 55.0}) {
    EXPECT_EQ(mate_feasible(p, {0.0, 0.0, r, 0.0, 0.0}), mate_feasible(p, {0.0, 0.0, r + 120.0, 0.0, 0.0}));
    EXPECT_EQ(mate_feasible(p, {2.0, 1.0, r, 0.0, 0.0}), mate_feasible(p, {2.0, 1.0, r - 240.0, 0.0, 0.0}));
  }
}

TEST(MateFeasible, FlatFaceGrid) {
  const FaceProfile p = flat_face();
  for (int i = 1; i <= 200; ++i) {
    const double d = 0.005 * i;
    for (double psi : {0.0, 45.0, 90.0, 200.0}) {
      const double a = deg_to_rad(psi);
      // Only offsets already inside the mating residual count as mated.
      if (mate_feasible(p, {d * std::cos(a), d * std::sin(a), 0.0, 0.0, 0.0})) {
        EXPECT_LE(d, 0.01 + 1e-12) << psi;
      }
    }
  }
  EXPECT_LT(envelope_axis_limit(p, {Axis::translation, 0.0}).limit, 1.0);
}

TEST(MateFeasible, Deterministic) {
  std::mt19937_64 rng(11);
  const FaceProfile p = reference_profile();
  for (int i = 0; i < 10; ++i) {
    const Misalignment m = random_misalignment(rng);
    const CaptureResult a = simulate_capture(p, m);
    const CaptureResult b = simulate_capture(p, m);
    EXPECT_EQ(a.mated, b.mated);
    EXPECT_EQ(a.final_pose, b.final_pose);
  }
}

TEST(MateFeasible, ThreeFoldSymmetry) {
  std::mt19937_64 rng(2024);
  const FaceProfile p = reference_profile();
  int violations = 0;
  int feasible = 0;
  for (int i = 0; i < 50; ++i) {
    const Misalignment m = random_misalignment(rng);
    const bool f = mate_feasible(p, m);
    feasible += f;
    violations += f != mate_feasible(p, rotated_about_axis(m, 120.0));
    violations += f != mate_feasible(p, rotated_about_axis(m, 240.0));
  }
  EXPECT_EQ(violations, 0);
  EXPECT_GT(feasible, 0);
  EXPECT_LT(feasible, 50);
}

TEST(MateFeasible, MonotoneAlongRays) {
  const FaceProfile p = reference_profile();
  for (const AxisProbe probe : {AxisProbe{Axis::translation, 0.0}, AxisProbe{Axis::translation, 37.0},
                                AxisProbe{Axis::rotation, 0.0}, AxisProbe{Axis::rotation, 180.0},
                                AxisProbe{Axis::deflection, 90.0}}) {
    bool failed = false;
    const double top = probe.axis == Axis::rotation ? 60.0 : 25.0;
    for (double m = 0.0; m <= top; m += 0.05) {
      const bool f = mate_feasible(p, misalignment_along(probe, m));
      if (failed) {
        EXPECT_FALSE(f) << axis_name(probe.axis) << " " << probe.direction_deg << " " << m;
      }
      failed = failed || !f;
    }
    EXPECT_TRUE(failed);
  }
}

TEST(EnvelopeAxisLimit, MatchesLinearScan) {
  const FaceProfile p = reference_profile();
  for (const AxisProbe probe : {AxisProbe{Axis::translation, 0.0}, AxisProbe{Axis::rotation, 0.0},
                                AxisProbe{Axis::rotation, 180.0}, AxisProbe{Axis::deflection, 60.0}}) {
    const AxisLimit a = envelope_axis_limit(p, probe, 0.05);
    const AxisLimit b = linear_scan_limit(p, probe, 0.05);
    EXPECT_EQ(a.limit, b.limit) << axis_name(probe.axis);
    EXPECT_FALSE(a.linear_fallback);
    EXPECT_LT(a.evaluations, b.evaluations);
  }
}

TEST(EnvelopeAxisLimit, ReproducibleAndErrors) {
  const FaceProfile p = reference_profile();
  const AxisProbe probe{Axis::translation, 75.0};
  EXPECT_EQ(envelope_axis_limit(p, probe).limit, envelope_axis_limit(p, probe).limit);
  EXPECT_THROW(envelope_axis_limit(p, probe, 0.0), Error);
  EXPECT_NEAR(envelope_axis_limit(p, {Axis::translation, 0.0}).limit, 12.0, 1.2);
  EXPECT_NEAR(envelope_axis_limit(p, {Axis::rotation, 0.0}).limit, 41.0, 4.1);
}

TEST(FullEnvelope, ReferenceProfile) {
  const Envelope env = full_envelope(reference_profile(), 10.0);
  EXPECT_NEAR(env.translation_limit_mm, 12.0, 1.2);
  EXPECT_NEAR(env.rotation_limit_deg, 41.0, 4.1);
  EXPECT_NEAR(env.deflection_limit_deg, 14.0, 1.4);
  EXPECT_LE(env.rotation_limit_deg, 60.0);
  ASSERT_EQ(env.per_direction.size(), 36u + 36u + 2u);
}

TEST(FullEnvelope, DirectionsSpaced120AgreeClosely) {
  FaceProfile p = reference_profile();
  p.petal_flank_angle_deg = 45.0;
  p.groove_radius_mm = 20.0;
  const Envelope env = full_envelope(p, 20.0, 0.02);
  std::map<std::pair<int, long>, double> by_dir;
  for (const auto& d : env.per_direction) by_dir[{static_cast<int>(d.axis), std::lround(d.direction_deg)}] = d.limit;
  for (const auto& [key, limit] : by_dir) {
    if (key.first == static_cast<int>(Axis::rotation)) continue;
    const auto other = by_dir.find({key.first, (key.second + 120) % 360});
    ASSERT_NE(other, by_dir.end());
    EXPECT_NEAR(limit, other->second, 0.02 + 1e-12);
  }
  EXPECT_LE(env.rotation_limit_deg, 60.0);
}

TEST(Calibration, ReferenceTargets) {
  Envelope targets;
  targets.translation_limit_mm = 12.0;
  targets.rotation_limit_deg = 41.0;
  targets.deflection_limit_deg = 14.0;
  const CalibrationResult r = calibrate_profile(targets);
  EXPECT_LE(r.max_residual, 0.10);
  EXPECT_NEAR(r.profile.petal_height_mm, reference_profile().petal_height_mm, 1e-12);
  EXPECT_NEAR(r.profile.groove_radius_mm, reference_profile().groove_radius_mm, 1e-12);
  const auto res = relative_residuals(full_envelope(r.profile, 10.0), targets);
  for (double v : res) EXPECT_LE(v, 0.10);
}

TEST(Calibration, FixedPointOfOwnEnvelope) {
  FaceProfile p = reference_profile();
  p.petal_height_mm = 11.0;
  p.groove_radius_mm = 19.0;
  CalibrationOptions opt;
  const Envelope own = full_envelope(p, opt.resolution_deg, opt.tol);
  const CalibrationResult r = calibrate_profile(own, opt);
  EXPECT_LE(r.max_residual, 0.10);
}

TEST(Calibration, UnreachableTargets) {
  Envelope targets;
  targets.translation_limit_mm = 100.0;
  targets.rotation_limit_deg = 41.0;
  targets.deflection_limit_deg = 14.0;
  try {
    calibrate_profile(targets);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::calibration_failure);
    EXPECT_NE(std::string(e.what()).find("residual"), std::string::npos);
  }
  targets.translation_limit_mm = -1.0;
  EXPECT_THROW(calibrate_profile(targets), Error);
}
