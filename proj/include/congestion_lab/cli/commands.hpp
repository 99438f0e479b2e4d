#ifndef CONGESTION_LAB_CLI_COMMANDS_HPP
#define CONGESTION_LAB_CLI_COMMANDS_HPP

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "congestion_lab/scenario/builtins.hpp"
#include "congestion_lab/scenario/format.hpp"
#include "congestion_lab/sim/simulator.hpp"
#include "congestion_lab/simulation.hpp"
#include "congestion_lab/sweep.hpp"

namespace congestion_lab::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kRuntimeError = 3 };

struct RunFlags {
  std::optional<std::uint64_t> seed;  // overrides the scenario's seed when set
  std::string out_dir = ".";
  bool timeseries = false;
  bool trace = false;
};

/// Fixed 9-significant-digit formatting used for every CSV number.
inline std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

inline constexpr const char* kSummaryHeader =
    "scenario,conn,sent,unique_delivered,retransmitted,goodput_bps,throughput_bps,mean_delay_s,completion_s,"
    "fairness_index";

inline std::string summary_row(const std::string& scenario, const metrics::FlowStats& f,
                               const std::optional<double>& fairness) {
  std::string row = scenario + ",";
  row += f.conn ? std::to_string(*f.conn) : std::string("all");
  row += "," + std::to_string(f.packets_sent) + "," + std::to_string(f.unique_delivered) + "," +
         std::to_string(f.retransmission_count) + "," + num(f.goodput_bps) + "," + num(f.throughput_bps) + "," +
         num(f.mean_delay_s) + "," + num(f.completion_time_s) + "," + num(fairness);
  return row;
}

/// One row per connection, then the aggregate row (conn = "all"), which
/// alone carries the fairness index.
inline void write_summary_csv(std::ostream& o, const RunResult& r) {
  o << kSummaryHeader << '\n';
  for (const metrics::FlowStats& f : r.summary.flows) o << summary_row(r.scenario, f, std::nullopt) << '\n';
  o << summary_row(r.scenario, r.summary.aggregate, r.summary.fairness) << '\n';
}

inline void write_timeseries_csv(std::ostream& o, const RunResult& r) {
  o << "t_s,entity,metric,value\n";
  for (const TimeSeriesRow& row : r.timeseries) {
    o << num(row.t_s) << ',' << row.entity << ',' << row.metric << ',' << num(row.value) << '\n';
  }
}

inline void write_sweep_csv(std::ostream& o, const SweepResult& r) {
  o << "param_value,offered_load,throughput_bps,mean_delay_s,power\n";
  for (const metrics::SweepPoint& p : r.points) {
    o << num(p.param_value) << ',' << num(p.offered_load) << ',' << num(p.throughput_bps) << ','
      << num(p.mean_delay_s) << ',' << num(p.power) << '\n';
  }
  if (r.knee_cliff) {
    o << "# knee_load=" << num(r.knee_cliff->knee_load) << '\n';
    o << "# cliff_load=" << (r.knee_cliff->cliff_load ? num(*r.knee_cliff->cliff_load) : std::string("none")) << '\n';
  } else {
    o << "# knee_load=none\n# cliff_load=none\n";
  }
}

/// A built-in name or a path to a scenario file.
inline scenario::Scenario resolve_scenario(const std::string& target) {
  if (auto s = scenario::find_builtin(target)) return *s;
  return scenario::load_scenario_file(target);
}

namespace detail {

inline bool write_file(const std::filesystem::path& path, const std::string& content, std::ostream& err) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << content;
  f.close();
  if (!f) {
    err << "error: cannot write " << path.string() << '\n';
    return false;
  }
  return true;
}

inline bool prepare_dir(const std::string& dir, std::ostream& err) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    err << "error: cannot create output directory " << dir << ": " << ec.message() << '\n';
    return false;
  }
  return true;
}

}  // namespace detail

inline int cmd_run(const std::string& target, const RunFlags& flags, std::ostream& out, std::ostream& err) {
  scenario::Scenario s;
  try {
    s = resolve_scenario(target);
    if (flags.seed) s.run.seed = *flags.seed;
    scenario::validate(s);
  } catch (const scenario::ScenarioError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  RunResult r;
  try {
    r = run_scenario(s, RunOptions{flags.trace, flags.timeseries});
  } catch (const sim::EventBudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  } catch (const std::exception& e) {
    err << "error: simulation failed: " << e.what() << '\n';
    return kRuntimeError;
  }

  if (!detail::prepare_dir(flags.out_dir, err)) return kRuntimeError;
  const std::filesystem::path dir(flags.out_dir);
  std::ostringstream summary;
  write_summary_csv(summary, r);
  if (!detail::write_file(dir / "summary.csv", summary.str(), err)) return kRuntimeError;
  if (flags.timeseries) {
    std::ostringstream ts;
    write_timeseries_csv(ts, r);
    if (!detail::write_file(dir / "timeseries.csv", ts.str(), err)) return kRuntimeError;
  }
  if (flags.trace && !detail::write_file(dir / "trace.log", r.trace, err)) return kRuntimeError;

  out << kSummaryHeader << '\n' << summary_row(r.scenario, r.summary.aggregate, r.summary.fairness) << '\n';
  return kOk;
}

/// `param` and `values` fall back to the scenario's own sweep section when
/// empty.
inline int cmd_sweep(const std::string& target, const std::string& param, const std::optional<std::string>& values,
                     const RunFlags& flags, std::ostream& out, std::ostream& err) {
  scenario::Scenario s;
  std::string path = param;
  std::vector<double> list;
  try {
    s = resolve_scenario(target);
    if (flags.seed) s.run.seed = *flags.seed;
    if (path.empty() && s.sweep) path = s.sweep->param;
    if (values) {
      list = scenario::detail::parse_value_list(*values, 0);
    } else if (s.sweep) {
      list = s.sweep->values;
    }
    if (path.empty()) throw scenario::ScenarioError(0, "no sweep parameter given");
    if (list.empty()) throw scenario::ScenarioError(0, "sweep has an empty value list");
    if (!scenario::is_known_param(s, path)) throw scenario::ScenarioError(0, "unknown parameter path '" + path + "'");
    for (std::size_t i = 0; i < list.size(); ++i) {
      (void)sweep_point_scenario(s, path, list[i], i);
    }
  } catch (const scenario::ScenarioError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  SweepResult r;
  try {
    r = run_sweep(s, path, list);
  } catch (const sim::EventBudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  } catch (const std::exception& e) {
    err << "error: sweep failed: " << e.what() << '\n';
    return kRuntimeError;
  }

  if (!detail::prepare_dir(flags.out_dir, err)) return kRuntimeError;
  std::ostringstream csv;
  write_sweep_csv(csv, r);
  if (!detail::write_file(std::filesystem::path(flags.out_dir) / "sweep.csv", csv.str(), err)) return kRuntimeError;
  out << csv.str();
  return kOk;
}

inline int cmd_list(std::ostream& out) {
  for (const scenario::BuiltinEntry& e : scenario::builtins()) out << e.name << '\t' << e.description << '\n';
  return kOk;
}

inline int cmd_export(const std::string& name, std::ostream& out, std::ostream& err) {
  auto s = scenario::find_builtin(name);
  if (!s) {
    err << "error: no built-in scenario named '" << name << "'\n";
    return kInputError;
  }
  out << scenario::export_scenario(*s);
  return kOk;
}

}  // namespace congestion_lab::cli

#endif  // CONGESTION_LAB_CLI_COMMANDS_HPP
