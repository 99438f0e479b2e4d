#include <string>

#include <gtest/gtest.h>

#include "congestion_lab/scenario/builtins.hpp"
#include "congestion_lab/scenario/format.hpp"
#include "congestion_lab/simulation.hpp"

using namespace congestion_lab::scenario;

namespace {

const char* kMinimal = R"(# two hosts, one link
[topology]
node A B
link A B 1e6 0.01 queue=10

[connections]
conn 1 A B packets=20 scheme=cute window=1 max_window=8

[run]
name tiny
seed 7
stop completion
duration 30
)";

std::string error_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ParseScenario, MinimalFile) {
  Scenario s = parse_scenario(kMinimal);
  EXPECT_EQ(s.name(), "tiny");
  EXPECT_EQ(s.nodes, (std::vector<std::string>{"A", "B"}));
  ASSERT_EQ(s.links.size(), 1u);
  EXPECT_DOUBLE_EQ(s.links[0].bandwidth_bps, 1e6);
  EXPECT_EQ(s.links[0].queue.capacity, std::optional<std::size_t>(10));
  ASSERT_EQ(s.conns.size(), 1u);
  EXPECT_EQ(s.conns[0].packets, std::optional<std::int64_t>(20));
  EXPECT_EQ(s.conns[0].scheme, congestion_lab::cc::Scheme::cute);
  EXPECT_EQ(s.run.seed, 7u);
  EXPECT_TRUE(s.run.stop_on_completion);
}

TEST(ParseScenario, UndeclaredNodeNamesNodeAndLine) {
  const std::string e = error_of("[topology]\nnode A B\nlink A Z 1e6 0.01\n");
  EXPECT_NE(e.find("line 3"), std::string::npos) << e;
  EXPECT_NE(e.find("'Z'"), std::string::npos) << e;
}

TEST(ParseScenario, NegativeBandwidth) {
  const std::string e = error_of("[topology]\nnode A B\nlink A B -5 0.01\n");
  EXPECT_NE(e.find("bandwidth must be positive"), std::string::npos) << e;
  EXPECT_NE(e.find("line 3"), std::string::npos) << e;
}

TEST(ParseScenario, UnknownKeysAreErrors) {
  EXPECT_NE(error_of("[topology]\nnode A B\nlink A B 1e6 0.01 colour=red\n").find("line 3"), std::string::npos);
  EXPECT_NE(error_of("[run]\nspeed 3\n").find("line 2"), std::string::npos);
  EXPECT_NE(error_of("[bogus]\n").find("line 1"), std::string::npos);
}

TEST(ParseScenario, NumbersAreStrict) {
  EXPECT_FALSE(error_of("[topology]\nnode A B\nlink A B 1e6x 0.01\n").empty());
  EXPECT_FALSE(error_of("[run]\nseed -1\n").empty());
}

TEST(ParseScenario, MissingRouteRejected) {
  const std::string e = error_of(
      "[topology]\nnode A B C\nlink A B 1e6 0.01\n[connections]\nconn 1 A C packets=1\n");
  EXPECT_FALSE(e.empty());
}

TEST(ParseScenario, SweepSection) {
  Scenario s = parse_scenario(std::string(kMinimal) + "[sweep]\nparam conn.1.max_window\nvalues 2,4,8\n");
  ASSERT_TRUE(s.sweep);
  EXPECT_EQ(s.sweep->param, "conn.1.max_window");
  EXPECT_EQ(s.sweep->values, (std::vector<double>{2, 4, 8}));
}

TEST(ParseValueList, EmptyEntriesRejected) {
  EXPECT_THROW(detail::parse_value_list("1,,2", 0), ScenarioError);
  EXPECT_TRUE(detail::parse_value_list("", 0).empty());
}

TEST(LoadScenarioFile, MissingFile) {
  EXPECT_THROW(load_scenario_file("/nonexistent/missing.scn"), ScenarioError);
}

TEST(ApplyParam, Paths) {
  Scenario s = parse_scenario(kMinimal);
  apply_param(s, "run.duration", 12.5);
  EXPECT_DOUBLE_EQ(s.run.duration_s, 12.5);
  apply_param(s, "conn.1.max_window", 16);
  EXPECT_DOUBLE_EQ(s.conns[0].params.max_window, 16);
  apply_param(s, "link.B.A.bandwidth", 2e6);
  EXPECT_DOUBLE_EQ(s.links[0].bandwidth_bps, 2e6);
  EXPECT_THROW(apply_param(s, "run.colour", 1), ScenarioError);
  EXPECT_THROW(apply_param(s, "conn.9.window", 1), ScenarioError);
  EXPECT_THROW(apply_param(s, "link.A.B.bandwidth", -1), ScenarioError);
  EXPECT_TRUE(is_known_param(s, "run.load"));
  EXPECT_FALSE(is_known_param(s, "nope"));
}

TEST(ExportScenario, RoundTripIsFixedPoint) {
  for (const BuiltinEntry& e : builtins()) {
    const Scenario s = e.make();
    const std::string text = export_scenario(s);
    Scenario back;
    ASSERT_NO_THROW(back = parse_scenario(text)) << e.name << "\n" << text;
    EXPECT_EQ(export_scenario(back), text) << e.name;
  }
}

TEST(ExportScenario, RoundTripRunsIdentically) {
  for (const char* name : {"myth-fastlink", "myth-balanced", "scheme-cute", "choke-cute"}) {
    const Scenario s = *find_builtin(name);
    const Scenario back = parse_scenario(export_scenario(s));
    congestion_lab::RunOptions opts{true, true};
    const auto a = congestion_lab::run_scenario(s, opts);
    const auto b = congestion_lab::run_scenario(back, opts);
    EXPECT_EQ(a.trace, b.trace) << name;
    EXPECT_EQ(a.summary.aggregate.goodput_bps, b.summary.aggregate.goodput_bps) << name;
  }
}
