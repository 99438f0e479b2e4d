#include <random>

#include <gtest/gtest.h>

#include "congestion_lab/cc/controller.hpp"

using namespace congestion_lab::cc;

namespace {

ControllerState at(Scheme s, double w, double max = 1000.0) {
  SchemeParams p;
  p.initial_window = w;
  p.max_window = max;
  return make_controller(s, p);
}

}  // namespace

TEST(Cute, TimeoutDropsToOne) {
  EXPECT_DOUBLE_EQ(cute_on_timeout(at(Scheme::cute, 8)).window, 1.0);
  EXPECT_DOUBLE_EQ(cute_on_timeout(at(Scheme::cute, 1)).window, 1.0);
  ControllerState c = at(Scheme::cute, 8);
  c.ack_counter = 5;
  EXPECT_EQ(cute_on_timeout(c).ack_counter, 0);
}

TEST(Cute, OneAckAtWindowOne) { EXPECT_DOUBLE_EQ(cute_on_ack(at(Scheme::cute, 1), 1).window, 2.0); }

TEST(Cute, OneToFiveTakesTenAcks) {
  ControllerState c = at(Scheme::cute, 1);
  int acks = 0;
  while (c.window < 5.0) {
    c = cute_on_ack(c, 1);
    ++acks;
  }
  EXPECT_EQ(acks, 10);
}

TEST(Cute, ThresholdCrossing) {
  ControllerState c = at(Scheme::cute, 8);
  c = cute_on_ack(c, 7);
  EXPECT_DOUBLE_EQ(c.window, 8.0);
  EXPECT_DOUBLE_EQ(cute_on_ack(c, 1).window, 9.0);
}

TEST(Cute, ExcessAcksCarryOver) {
  ControllerState c = cute_on_ack(at(Scheme::cute, 2), 3);
  EXPECT_DOUBLE_EQ(c.window, 3.0);
  EXPECT_EQ(c.ack_counter, 1);
}

TEST(CuteProperty, ParabolicLawUpTo100) {
  for (int w = 1; w <= 100; ++w) {
    ControllerState c = at(Scheme::cute, 1);
    std::int64_t acks = 0;
    while (c.window < w) {
      c = cute_on_ack(c, 1);
      ++acks;
    }
    ASSERT_EQ(acks, static_cast<std::int64_t>(w) * (w - 1) / 2) << "W=" << w;
  }
}

TEST(Linear, EightAcksPerStep) {
  EXPECT_DOUBLE_EQ(linear_on_ack(at(Scheme::linear, 4), 8).window, 5.0);
  EXPECT_DOUBLE_EQ(linear_on_ack(at(Scheme::linear, 4), 7).window, 4.0);
  EXPECT_DOUBLE_EQ(linear_on_ack(at(Scheme::linear, 4), 24).window, 7.0);
}

TEST(Linear, TimeoutLikeCute) {
  EXPECT_DOUBLE_EQ(handle_timeout(at(Scheme::linear, 9)).window, 1.0);
}

TEST(SlowStart, TimeoutRemembersHalf) {
  ControllerState c = slowstart_on_timeout(at(Scheme::slow_start, 16));
  EXPECT_DOUBLE_EQ(c.ssthresh, 8.0);
  EXPECT_DOUBLE_EQ(c.window, 1.0);
  c = slowstart_on_timeout(at(Scheme::slow_start, 2));
  EXPECT_DOUBLE_EQ(c.ssthresh, 2.0);
  c = slowstart_on_timeout(c);
  EXPECT_DOUBLE_EQ(c.ssthresh, 2.0);
  EXPECT_DOUBLE_EQ(c.window, 1.0);
}

TEST(SlowStart, FastPhaseThenSlowPhase) {
  ControllerState c = at(Scheme::slow_start, 1);
  c.ssthresh = 8;
  c = slowstart_on_ack(c, 7);
  EXPECT_DOUBLE_EQ(c.window, 8.0);
  c = slowstart_on_ack(c, 7);
  EXPECT_DOUBLE_EQ(c.window, 8.0);
  c = slowstart_on_ack(c, 1);
  EXPECT_DOUBLE_EQ(c.window, 9.0);
}

TEST(SlowStart, BoundaryEntersSlowPhase) {
  ControllerState c = at(Scheme::slow_start, 1);
  c.ssthresh = 2;
  c = slowstart_on_ack(c, 1);
  EXPECT_DOUBLE_EQ(c.window, 2.0);
  c = slowstart_on_ack(c, 1);
  EXPECT_DOUBLE_EQ(c.window, 2.0);  // slow phase needs two acks
}

namespace {
ControllerState feed_bits(ControllerState c, int set, int total) {
  for (int i = 0; i < total; ++i) c = binary_feedback_update(c, i < set);
  return c;
}
}  // namespace

TEST(BinaryFeedback, MajoritySetDecreases) {
  EXPECT_DOUBLE_EQ(feed_bits(at(Scheme::binary_feedback, 8), 5, 8).window, 7.0);
}

TEST(BinaryFeedback, MinoritySetIncreases) {
  EXPECT_DOUBLE_EQ(feed_bits(at(Scheme::binary_feedback, 8), 3, 8).window, 9.0);
}

TEST(BinaryFeedback, FloorAtOne) {
  EXPECT_DOUBLE_EQ(feed_bits(at(Scheme::binary_feedback, 1), 1, 1).window, 1.0);
}

TEST(BinaryFeedback, OneDecisionPerWindow) {
  ControllerState c = feed_bits(at(Scheme::binary_feedback, 8), 7, 7);
  EXPECT_DOUBLE_EQ(c.window, 8.0);
  EXPECT_EQ(c.audit.adjustments, 0);
}

namespace {
ControllerState with_min(double rtt_min, double w) {
  ControllerState c = at(Scheme::delay_based, w);
  return handle_rtt_sample(c, rtt_min);
}
}  // namespace

TEST(DelayBased, HighRatioDecreases) {
  EXPECT_DOUBLE_EQ(delay_based_update(with_min(0.10, 8), 0.20).window, 7.0);
}

TEST(DelayBased, LowRatioIncreases) {
  EXPECT_DOUBLE_EQ(delay_based_update(with_min(0.10, 8), 0.12).window, 9.0);
}

TEST(DelayBased, NoSampleNoChange) {
  EXPECT_DOUBLE_EQ(delay_based_update(at(Scheme::delay_based, 8), 5.0).window, 8.0);
}

TEST(DelayBased, RttMinTracksMinimum) {
  ControllerState c = with_min(0.3, 4);
  c = handle_rtt_sample(c, 0.5);
  c = handle_rtt_sample(c, 0.2);
  EXPECT_DOUBLE_EQ(*c.rtt_min, 0.2);
}

TEST(Choke, Halves) {
  EXPECT_DOUBLE_EQ(on_choke(at(Scheme::cute, 8)).window, 4.0);
  EXPECT_DOUBLE_EQ(on_choke(at(Scheme::cute, 1)).window, 1.0);
}

TEST(Choke, SecondInSameCycleIgnored) {
  ControllerState c = on_choke(at(Scheme::static_window, 8));
  c = on_choke(c);
  EXPECT_DOUBLE_EQ(c.window, 4.0);
  EXPECT_EQ(c.audit.chokes_received, 2);
  EXPECT_EQ(c.audit.chokes_applied, 1);
  c = handle_ack(c, 4, false, std::nullopt);  // a window of acks re-arms
  c = on_choke(c);
  EXPECT_DOUBLE_EQ(c.window, 2.0);
}

TEST(Choke, DisabledResponse) {
  SchemeParams p;
  p.initial_window = 8;
  p.choke_response = false;
  EXPECT_DOUBLE_EQ(on_choke(make_controller(Scheme::cute, p)).window, 8.0);
}

TEST(Controller, ConstructionErrors) {
  SchemeParams p;
  p.max_window = 0.5;
  EXPECT_THROW(make_controller(Scheme::cute, p), std::invalid_argument);
  p = {};
  p.linear_acks = 0;
  EXPECT_THROW(make_controller(Scheme::linear, p), std::invalid_argument);
}

TEST(Controller, StaticIgnoresEverything) {
  ControllerState c = at(Scheme::static_window, 8);
  c = handle_ack(c, 100, true, 1.0);
  c = handle_timeout(c);
  EXPECT_DOUBLE_EQ(c.window, 8.0);
  EXPECT_EQ(c.audit.adjustments, 0);
}

TEST(Controller, ParameterSchemaIsDimensionless) {
  for (Scheme s : {Scheme::none, Scheme::static_window, Scheme::cute, Scheme::linear, Scheme::slow_start,
                   Scheme::binary_feedback, Scheme::delay_based}) {
    for (const ParamDescriptor& d : parameter_schema(s)) {
      EXPECT_TRUE(d.unit == ParamUnit::packets || d.unit == ParamUnit::count || d.unit == ParamUnit::ratio ||
                  d.unit == ParamUnit::flag)
          << d.name;
    }
  }
}

TEST(Controller, SchemeNamesRoundTrip) {
  for (Scheme s : {Scheme::none, Scheme::static_window, Scheme::cute, Scheme::linear, Scheme::slow_start,
                   Scheme::binary_feedback, Scheme::delay_based}) {
    EXPECT_EQ(parse_scheme(to_string(s)), s);
  }
  EXPECT_FALSE(parse_scheme("reno"));
}

TEST(ControlFrequency, AuditBound) {
  ControlAudit a;
  a.acked = 80;
  a.min_window = 8;
  a.adjustments = 10;
  EXPECT_TRUE(control_frequency_ok(a));
  a.adjustments = 11;
  EXPECT_FALSE(control_frequency_ok(a));
  a.timeouts = 1;
  EXPECT_TRUE(control_frequency_ok(a));
}

// Random streams of acks, bits, timeouts, chokes and rtt samples against
// every scheme: the window stays in [1, max] and the audit bound holds.
TEST(ControllerProperty, WindowBoundsAndFrequency) {
  const Scheme schemes[] = {Scheme::static_window, Scheme::cute, Scheme::linear, Scheme::slow_start,
                            Scheme::binary_feedback, Scheme::delay_based};
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SchemeParams p;
    p.initial_window = 1.0 + static_cast<double>(gen() % 10);
    p.max_window = p.initial_window + static_cast<double>(gen() % 50);
    ControllerState c = make_controller(schemes[seed % 6], p);
    for (int step = 0; step < 3000; ++step) {
      const double r = u(gen);
      if (r < 0.8) {
        c = handle_ack(c, 1 + static_cast<std::int64_t>(gen() % 3), u(gen) < 0.4, 0.1 + u(gen));
      } else if (r < 0.87) {
        c = handle_timeout(c);
      } else if (r < 0.92) {
        c = on_choke(c);
      } else {
        c = handle_rtt_sample(c, 0.05 + u(gen));
      }
      ASSERT_GE(c.window, 1.0);
      ASSERT_LE(c.window, p.max_window);
    }
    EXPECT_TRUE(control_frequency_ok(c.audit)) << "seed " << seed << " scheme " << to_string(c.scheme);
  }
}
