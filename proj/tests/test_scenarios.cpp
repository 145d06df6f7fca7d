#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "swapcorr/scenarios.hpp"
#include "swapcorr/selftest.hpp"

using namespace swapcorr;

TEST(Depolarize, ShrinksTowardsMaximallyMixed) {
  const DensityMatrix out = depolarize(ket0_state(), 0.4);
  EXPECT_NEAR(out(0, 0).real(), 0.7, 1e-15);
  EXPECT_NEAR(out(1, 1).real(), 0.3, 1e-15);
  EXPECT_NEAR(depolarize(ket0_state(), -1.0)(1, 1).real(), 1.0, 1e-15);
  EXPECT_THROW(depolarize(ket0_state(), 1.5), InvalidInput);
  EXPECT_THROW(example_state({0.0, -1.01}), InvalidInput);
}

TEST(Example, SymmetricUnderExchangingParameters) {
  for (auto [a1, a2] : {std::pair{0.9, -0.4}, std::pair{0.1, 0.6}, std::pair{-1.0, 0.3}}) {
    const SweepRow x = evaluate_point(a1, a2), y = evaluate_point(a2, a1);
    EXPECT_NEAR(x.total_correlation, y.total_correlation, 1e-10);
    EXPECT_NEAR(x.negativity_sum, y.negativity_sum, 1e-12);
    EXPECT_NEAR(x.discord, y.discord, 1e-8);
  }
}

TEST(Example, DiagonalIsClassicalOnlyWithBinaryEntropy) {
  for (double a : {-0.8, -0.3, 0.0, 0.5, 0.95}) {
    const SweepRow r = evaluate_point(a, a);
    const double p_plus = (1.0 + (1.0 + a * a) / 2.0) / 2.0;
    EXPECT_NEAR(r.total_correlation, selftest::oracle::binary_entropy_bits(p_plus), 1e-9);
    EXPECT_LE(r.discord, 1e-5);
    EXPECT_LE(r.negativity_sum, 1e-9);
    EXPECT_EQ(r.classification, Classification::classical_only);
  }
  // Equal pure inputs (corners) carry no correlation at all.
  EXPECT_EQ(evaluate_point(1.0, 1.0).classification, Classification::product);
  EXPECT_EQ(evaluate_point(-1.0, -1.0).classification, Classification::product);
}

TEST(Example, OffDiagonalIsEntangled) {
  const SweepRow r = evaluate_point(1.0, -1.0);
  EXPECT_NEAR(r.total_correlation, 2.0, 1e-9);
  EXPECT_NEAR(r.discord, 1.0, 1e-8);
  EXPECT_NEAR(r.negativity_sum, 0.5, 1e-12);
  EXPECT_EQ(r.classification, Classification::entangled);
}

TEST(Sweep, GridOrderAndShape) {
  const auto rows = sweep(3);
  ASSERT_EQ(rows.size(), 9u);
  EXPECT_EQ(rows[0].a1, -1.0);
  EXPECT_EQ(rows[0].a2, -1.0);
  EXPECT_EQ(rows[1].a1, -1.0);
  EXPECT_EQ(rows[1].a2, 0.0);
  EXPECT_EQ(rows[8].a1, 1.0);
  EXPECT_EQ(rows[8].a2, 1.0);
  EXPECT_THROW(sweep(1), InvalidInput);
}

TEST(Sweep, NegativityProportionalToGap) {
  for (const SweepRow& r : sweep(11)) {
    EXPECT_NEAR(r.negativity_sum, std::abs(r.a1 - r.a2) / 4.0, 1e-12);
    EXPECT_FALSE(r.anomaly);
  }
}

TEST(Csv, SweepFormat) {
  std::ostringstream os;
  write_sweep_csv(os, sweep(2));
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "a1,a2,total_bits,negativity_sum,discord_bits,class");
  std::getline(is, line);
  EXPECT_EQ(line, "-1,-1,0,0,0,product");
  std::getline(is, line);
  EXPECT_EQ(line.rfind("-1,1,2,0.5,", 0), 0u) << line;
  EXPECT_NE(line.find(",entangled"), std::string::npos);
  EXPECT_EQ(detail::fmt12(1.0 / 3.0), "0.333333333333");
}

TEST(Csv, AnomalyLabelOverridesClass) {
  SweepRow r;
  r.classification = Classification::classical_only;
  r.anomaly = true;
  EXPECT_EQ(detail::class_label(r), "ANOMALY");
}

TEST(Trajectory, ParametersArePiecewiseExponential) {
  const TrajectoryConfig c;
  const DepolarizingParams p0 = trajectory_params(c, 0.0);
  EXPECT_DOUBLE_EQ(p0.a1, 1.0);
  EXPECT_DOUBLE_EQ(p0.a2, std::exp(-1.0));
  // Both reach e^-2 at the switch; equal rates afterwards keep them equal.
  const DepolarizingParams ps = trajectory_params(c, 0.2);
  EXPECT_NEAR(ps.a1, std::exp(-2.0), 1e-15);
  EXPECT_NEAR(ps.a2, std::exp(-2.0), 1e-15);
  const DepolarizingParams p4 = trajectory_params(c, 0.4);
  EXPECT_NEAR(p4.a1, p4.a2, 1e-15);
  EXPECT_NEAR(p4.a1, std::exp(-4.0), 1e-15);

  TrajectoryConfig g = c;
  g.late = LateSegment::global;
  const DepolarizingParams q = trajectory_params(g, 0.3);
  EXPECT_NEAR(q.a1, std::exp(-3.0), 1e-15);
  EXPECT_NEAR(q.a2, std::exp(-1.0) * std::exp(-3.0), 1e-15);
}

TEST(Trajectory, DefaultConfigDiesAtSwitchTime) {
  const TrajectoryResult r = trajectory(TrajectoryConfig{});
  ASSERT_EQ(r.points.size(), 101u);
  ASSERT_TRUE(r.death_time && r.discord_death_time && r.negativity_death_time);
  EXPECT_NEAR(*r.death_time, 0.2, 1e-3);
  EXPECT_NEAR(*r.discord_death_time, 0.2, 1e-3);
  EXPECT_NEAR(*r.negativity_death_time, 0.2, 1e-3);
  // The 1e-5-bit threshold is crossed early because discord is quadratic in the gap.
  ASSERT_TRUE(r.discord_threshold_time);
  EXPECT_LT(*r.discord_threshold_time, 0.2);
  for (const auto& p : r.points) {
    EXPECT_FALSE(p.row.anomaly);
    if (p.t > 0.2 + 1e-9) {
      EXPECT_LE(p.row.negativity_sum, 1e-9);
      EXPECT_LE(p.row.discord, 1e-5);
    }
  }
}

TEST(Trajectory, GlobalLateSegmentOnlyTouchesZero) {
  // a1 and a2 cross at the switch and separate again afterwards.
  TrajectoryConfig c;
  c.late = LateSegment::global;
  c.n_steps = 26;
  const TrajectoryResult r = trajectory(c);
  ASSERT_TRUE(r.negativity_death_time);
  EXPECT_NEAR(*r.negativity_death_time, 0.2, 1e-3);
  for (const auto& p : r.points) {
    if (p.t > 0.25) {
      EXPECT_GT(p.row.negativity_sum, 1e-9) << "t = " << p.t;
    }
  }
}

TEST(Trajectory, RejectsBadConfig) {
  TrajectoryConfig c;
  c.t_switch = 0.6;
  EXPECT_THROW(trajectory(c), InvalidInput);
  c = {};
  c.gamma1_early = -1.0;
  EXPECT_THROW(trajectory(c), InvalidInput);
  c = {};
  c.n_steps = 1;
  EXPECT_THROW(trajectory(c), InvalidInput);
}

TEST(Csv, TrajectoryHeader) {
  TrajectoryConfig c;
  c.n_steps = 3;
  std::ostringstream os;
  write_trajectory_csv(os, trajectory(c));
  EXPECT_EQ(os.str().rfind("t,a1,a2,total_bits,negativity_sum,discord_bits,class\n0,1,", 0), 0u);
}
