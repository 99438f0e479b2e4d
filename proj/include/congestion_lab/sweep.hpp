#ifndef CONGESTION_LAB_SWEEP_HPP
#define CONGESTION_LAB_SWEEP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "congestion_lab/metrics/metrics.hpp"
#include "congestion_lab/scenario/format.hpp"
#include "congestion_lab/simulation.hpp"

namespace congestion_lab {

struct SweepResult {
  std::vector<metrics::SweepPoint> points;
  std::optional<metrics::KneeCliff> knee_cliff;  // only when loads are strictly increasing
  std::vector<RunResult> runs;
};

/// Scenario for sweep point `index`: the parameter applied and the seed
/// offset by the point index.
inline scenario::Scenario sweep_point_scenario(const scenario::Scenario& base, const std::string& param,
                                               double value, std::size_t index) {
  scenario::Scenario s = base;
  s.sweep.reset();
  scenario::apply_param(s, param, value);
  s.run.seed = base.run.seed + index;
  return s;
}

/// Runs one simulation per value, in value order. Throughput is the
/// aggregate goodput, so duplicate deliveries do not count; offered load is
/// normalised by the bottleneck when the scenario names one.
inline SweepResult run_sweep(const scenario::Scenario& base, const std::string& param,
                             const std::vector<double>& values, double cliff_delta = 0.1, bool keep_runs = false) {
  if (values.empty()) throw scenario::ScenarioError(0, "sweep has an empty value list");
  if (!scenario::is_known_param(base, param)) throw scenario::ScenarioError(0, "unknown parameter path '" + param + "'");
  SweepResult out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    scenario::Scenario s = sweep_point_scenario(base, param, values[i], i);
    RunResult r = run_scenario(s, RunOptions{false, false});
    const double load = scenario::offered_rho(s).value_or(values[i]);
    out.points.push_back(metrics::make_sweep_point(values[i], load, r.summary.aggregate.goodput_bps,
                                                   r.summary.aggregate.mean_delay_s));
    if (keep_runs) out.runs.push_back(std::move(r));
  }
  bool increasing = out.points.size() >= 3;
  for (std::size_t i = 1; i < out.points.size(); ++i) {
    increasing = increasing && out.points[i].offered_load > out.points[i - 1].offered_load;
  }
  if (increasing) out.knee_cliff = metrics::knee_cliff(out.points, cliff_delta);
  return out;
}

}  // namespace congestion_lab

#endif  // CONGESTION_LAB_SWEEP_HPP
