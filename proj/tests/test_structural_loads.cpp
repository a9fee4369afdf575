#include <cmath>

#include <gtest/gtest.h>

#include "petlock/structural_loads.hpp"

using namespace petlock;
using namespace petlock::loads;

TEST(CheckLoad, RatedTraction) {
  const LoadEnvelope env;
  const LoadReport r = check_load({0, 0, 3000, 0, 0, 0}, env, false);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.traction_u, 1.0);
  EXPECT_EQ(r.combined_u, 1.0);
  EXPECT_FALSE(check_load({0, 0, 3001, 0, 0, 0}, env, false).pass);
  EXPECT_TRUE(check_load({0, 0, -3000, 0, 0, 0}, env, false).pass);
}

TEST(CheckLoad, RatedBendingAndTorsion) {
  const LoadEnvelope env;
  EXPECT_TRUE(check_load({0, 0, 0, 500, 0, 0}, env, false).pass);
  EXPECT_EQ(check_load({0, 0, 0, 0, 500, 0}, env, false).bending_u, 1.0);
  EXPECT_FALSE(check_load({0, 0, 0, 501, 0, 0}, env, false).pass);
  EXPECT_FALSE(check_load({0, 0, 0, 300, 401, 0}, env, false).pass);
  EXPECT_TRUE(check_load({0, 0, 0, 0, 0, 500}, env, false).pass);
  EXPECT_FALSE(check_load({0, 0, 0, 0, 0, -501}, env, false).pass);
}

TEST(CheckLoad, ZeroWrench) {
  const LoadReport r = check_load({}, LoadEnvelope{}, false);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.combined_u, 0.0);
}

TEST(CheckLoad, InteractionRules) {
  LoadEnvelope env;
  const Wrench w{0, 0, 1500, 250, 0, 0};
  EXPECT_TRUE(check_load(w, env, false).pass);
  EXPECT_DOUBLE_EQ(check_load(w, env, false).combined_u, 0.5);
  env.interaction_rule = InteractionRule::linear;
  EXPECT_DOUBLE_EQ(check_load(w, env, false).combined_u, 1.0);
  EXPECT_TRUE(check_load(w, env, false).pass);
  EXPECT_FALSE(check_load(w * 1.01, env, false).pass);
}

TEST(CheckLoad, SignFlipInvariance) {
  const LoadEnvelope env;
  for (const Wrench& w : {Wrench{100, -200, 2900, 10, 20, 30}, Wrench{0, 0, 3100, 0, 0, 0},
                          Wrench{2000, 2500, 0, 0, 0, 0}}) {
    EXPECT_EQ(check_load(w, env, false).pass, check_load(-w, env, false).pass);
    EXPECT_EQ(check_load(w, env, false).combined_u, check_load(-w, env, false).combined_u);
  }
}

TEST(CheckLoad, DualLockRaisesLimits) {
  const LoadEnvelope env;
  const Wrench w{0, 0, 4000, 0, 0, 0};
  EXPECT_FALSE(check_load(w, env, false).pass);
  EXPECT_TRUE(check_load(w, env, true).pass);
  const Wrench any{120, 80, 900, 60, 40, 70};
  const LoadReport s = check_load(any, env, false);
  const LoadReport d = check_load(any, env, true);
  EXPECT_LE(d.traction_u, s.traction_u);
  EXPECT_LE(d.lateral_u, s.lateral_u);
  EXPECT_LE(d.bending_u, s.bending_u);
  EXPECT_LE(d.torsion_u, s.torsion_u);
  EXPECT_TRUE(d.dual_locked);
}

TEST(CheckLoad, Validation) {
  LoadEnvelope env;
  env.traction_max_N = 0.0;
  EXPECT_THROW(check_load({}, env, false), Error);
  EXPECT_THROW(check_load({std::nan(""), 0, 0, 0, 0, 0}, LoadEnvelope{}, false), Error);
  EXPECT_TRUE(LoadEnvelope{}.lateral_assumed);
}

TEST(StressReference, Rows) {
  const StressReference ref = reference_stress_table();
  ASSERT_EQ(ref.rows.size(), 4u);
  EXPECT_EQ(row(ref, "tensile_3000N").max_stress_MPa, 21.999);
  EXPECT_EQ(row(ref, "rotation_500Nm").max_stress_MPa, 44.781);
  EXPECT_EQ(row(ref, "bending_500Nm").max_stress_MPa, 52.237);
  EXPECT_EQ(row(ref, "combined_3000N_500Nm_500Nm").max_stress_MPa, 39.519);
  EXPECT_EQ(row(ref, "tensile_3000N").max_strain_mm, 0.0037);
  EXPECT_EQ(row(ref, "combined_3000N_500Nm_500Nm").max_strain_mm, 0.0057);
  EXPECT_THROW(row(ref, "shear"), Error);
}

TEST(StressEstimate, ReferenceRows) {
  const StressReference ref = reference_stress_table();
  EXPECT_EQ(stress_estimate({0, 0, 3000, 0, 0, 0}, ref).max_MPa, 21.999);
  EXPECT_EQ(stress_estimate({0, 0, 0, 0, 0, 500}, ref).max_MPa, 44.781);
  EXPECT_EQ(stress_estimate({0, 0, 0, 500, 0, 0}, ref).max_MPa, 52.237);
  EXPECT_DOUBLE_EQ(stress_estimate({0, 0, 1500, 0, 0, 0}, ref).max_MPa, 10.9995);
  EXPECT_EQ(stress_estimate({}, ref).max_MPa, 0.0);
}

TEST(StressEstimate, Homogeneous) {
  const StressReference ref = reference_stress_table();
  for (const Wrench& unit : {Wrench{0, 0, 1, 0, 0, 0}, Wrench{0, 0, 0, 0, 0, 1}, Wrench{0, 0, 0, 0.6, 0.8, 0}}) {
    const double base = stress_estimate(unit, ref).max_MPa;
    for (double s : {0.25, 37.0, 2900.0}) {
      EXPECT_NEAR(stress_estimate(unit * s, ref).max_MPa / (s * base), 1.0, 1e-12);
    }
  }
}

TEST(StressEstimate, CaveatFlags) {
  const StressReference ref = reference_stress_table();
  const StressEstimate combined = stress_estimate({0, 0, 3000, 500, 0, 500}, ref);
  EXPECT_TRUE(combined.multi_component);
  EXPECT_EQ(combined.max_MPa, 52.237);
  EXPECT_FALSE(stress_estimate({0, 0, 3000, 0, 0, 0}, ref).multi_component);
  EXPECT_TRUE(stress_estimate({10, 0, 0, 0, 0, 0}, ref).lateral_unmodeled);
}
