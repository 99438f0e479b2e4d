#include <set>
#include <gtest/gtest.h>

#include "congestion_lab/metrics/metrics.hpp"
#include "congestion_lab/scenario/builtins.hpp"
#include "congestion_lab/simulation.hpp"
#include "congestion_lab/sweep.hpp"

using namespace congestion_lab;
using namespace congestion_lab::scenario;

namespace {

double goodput_ratio(const RunResult& r) {
  return r.summary.aggregate.goodput_bps / r.summary.aggregate.throughput_bps;
}

}  // namespace

TEST(Builtins, RegistryNamesUniqueAndResolvable) {
  std::set<std::string> seen;
  for (const BuiltinEntry& e : builtins()) {
    EXPECT_TRUE(seen.insert(e.name).second) << e.name;
    EXPECT_TRUE(find_builtin(e.name)) << e.name;
    EXPECT_NO_THROW(validate(e.make())) << e.name;
  }
  EXPECT_FALSE(find_builtin("no-such-scenario"));
}

TEST(MythFastlink, BaselineNearSerializationEstimate) {
  RunResult r = run_scenario(scenario_myth_fastlink(false), {false, false});
  ASSERT_TRUE(r.all_complete);
  const double estimate = 1000.0 * 8000.0 / 19200.0;
  EXPECT_NEAR(*r.summary.aggregate.completion_time_s, estimate, 0.1 * estimate);
}

TEST(MythFastlink, UpgradeIsSlower) {
  RunResult base = run_scenario(scenario_myth_fastlink(false), {false, false});
  RunResult up = run_scenario(scenario_myth_fastlink(true), {false, false});
  ASSERT_TRUE(up.all_complete);
  EXPECT_GT(*up.summary.aggregate.completion_time_s, *base.summary.aggregate.completion_time_s);
}

TEST(MythFastlink, RepairedWithinFactor) {
  RunResult base = run_scenario(scenario_myth_fastlink(false), {false, false});
  RunResult fix = run_scenario(scenario_myth_fastlink(true, true), {false, false});
  ASSERT_TRUE(fix.all_complete);
  EXPECT_LE(*fix.summary.aggregate.completion_time_s, 1.5 * *base.summary.aggregate.completion_time_s);
}

TEST(MythBuffers, BacklogGrowsAndGoodputCollapses) {
  Scenario s = scenario_myth_buffers(false);
  RunResult r = run_scenario(s, {false, true});
  // Offered 2e6 against 1e6 for 60 s of 8000-bit packets.
  const double expected = (2e6 - 1e6) * s.run.duration_s / 8000.0;
  const QueueReport* q = r.queue("R", "D");
  ASSERT_NE(q, nullptr);
  EXPECT_NEAR(static_cast<double>(q->occupancy_end), expected, 0.01 * expected);
  double last = -1;
  for (const TimeSeriesRow& row : r.timeseries) {
    if (row.entity == "q:R->D" && row.metric == "occupancy") {
      EXPECT_GE(row.value, last);
      last = row.value;
    }
  }
  EXPECT_GT(last, 0.0);
  EXPECT_LT(goodput_ratio(r), 0.5);
}

TEST(MythBuffers, FiniteQueueWithCute) {
  RunResult r = run_scenario(scenario_myth_buffers(true), {false, false});
  EXPECT_GE(goodput_ratio(r), 0.9);
}

TEST(MythBalanced, BacklogAfterTenMilliseconds) {
  RunResult r = run_scenario(scenario_myth_balanced(false), {false, false});
  const QueueReport* q = r.queue("R", "C");
  ASSERT_NE(q, nullptr);
  EXPECT_NEAR(static_cast<double>(q->occupancy_end) * 8000.0, 1e7, 8000.0);
  EXPECT_TRUE(metrics::is_congested(std::vector<double>{1e9, 1e9}, 1e9));
}

TEST(MythBalanced, HalvedStaysEmpty) {
  RunResult r = run_scenario(scenario_myth_balanced(true), {false, false});
  EXPECT_EQ(r.queue("R", "C")->occupancy_end, 0u);
  EXPECT_FALSE(metrics::is_congested(std::vector<double>{5e8, 5e8}, 1e9));
}

TEST(KneeCliff, PoissonKneeNearHalf) {
  Scenario s = scenario_knee_cliff(KneeVariant::poisson);
  ASSERT_TRUE(s.sweep);
  SweepResult r = run_sweep(s, s.sweep->param, s.sweep->values);
  ASSERT_TRUE(r.knee_cliff);
  EXPECT_NEAR(r.knee_cliff->knee_load, 0.5, 0.1 + 1e-9);
}

TEST(KneeCliff, DeterministicKneeHigher) {
  Scenario p = scenario_knee_cliff(KneeVariant::poisson);
  Scenario d = scenario_knee_cliff(KneeVariant::deterministic);
  SweepResult rp = run_sweep(p, p.sweep->param, p.sweep->values);
  SweepResult rd = run_sweep(d, d.sweep->param, d.sweep->values);
  EXPECT_GT(rd.knee_cliff->knee_load, rp.knee_cliff->knee_load);
}

TEST(KneeCliff, ClosedLoopCliffAboveOne) {
  Scenario s = scenario_knee_cliff(KneeVariant::closed_loop);
  SweepResult r = run_sweep(s, s.sweep->param, s.sweep->values);
  ASSERT_TRUE(r.knee_cliff);
  ASSERT_TRUE(r.knee_cliff->cliff_load);
  EXPECT_GT(*r.knee_cliff->cliff_load, 1.0);
}

TEST(Fairness, RoundRobinBeatsFifo) {
  RunResult fifo = run_scenario(scenario_fairness(FairnessVariant::fifo), {false, false});
  RunResult rr = run_scenario(scenario_fairness(FairnessVariant::round_robin), {false, false});
  EXPECT_GT(*rr.summary.fairness, *fifo.summary.fairness);
  const auto& flows = fifo.summary.flows;
  double total = 0;
  for (const auto& f : flows) total += f.goodput_bps;
  EXPECT_GT(flows.back().goodput_bps / total, 0.25);
}

TEST(Fairness, EqualRoundRobinNearOne) {
  RunResult r = run_scenario(scenario_fairness(FairnessVariant::round_robin_equal), {false, false});
  EXPECT_GE(*r.summary.fairness, 0.99);
}

TEST(Schemes, OnlyChokeAddsPackets) {
  for (cc::Scheme s : {cc::Scheme::static_window, cc::Scheme::cute, cc::Scheme::linear, cc::Scheme::slow_start,
                       cc::Scheme::binary_feedback, cc::Scheme::delay_based}) {
    RunResult r = run_scenario(scenario_schemes(s, false), {false, false});
    EXPECT_EQ(r.injected_total[net::PacketKind::choke], 0) << cc::to_string(s);
    for (const ControllerReport& c : r.controllers) {
      EXPECT_TRUE(cc::control_frequency_ok(c.audit)) << cc::to_string(s);
      EXPECT_EQ(c.window_violations, 0);
      EXPECT_EQ(c.karn_violations, 0);
    }
  }
  RunResult choke = run_scenario(scenario_schemes(cc::Scheme::cute, true), {false, false});
  EXPECT_GT(choke.injected_total[net::PacketKind::choke], 0);
}
