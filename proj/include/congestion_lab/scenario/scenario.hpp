#ifndef CONGESTION_LAB_SCENARIO_SCENARIO_HPP
#define CONGESTION_LAB_SCENARIO_SCENARIO_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "congestion_lab/cc/controller.hpp"
#include "congestion_lab/net/port_queue.hpp"
#include "congestion_lab/transport/receiver.hpp"
#include "congestion_lab/transport/rtt_estimator.hpp"
#include "congestion_lab/transport/sender.hpp"

namespace congestion_lab::scenario {

/// Validation or parse failure. `line` is 0 when the problem is not tied to
/// a line of a scenario file.
class ScenarioError : public std::runtime_error {
public:
  ScenarioError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/// How a connection produces traffic.
///  - window: closed loop, window flow control, acks, retransmission
///  - rate: closed loop, token-bucket paced, acks, retransmission
///  - open: open loop, deterministic or Poisson generation, no acks
enum class SourceMode : std::uint8_t { window, rate, open };
enum class Arrival : std::uint8_t { deterministic, poisson };
enum class SizeDist : std::uint8_t { fixed, exponential };

inline std::string to_string(SourceMode m) {
  switch (m) {
    case SourceMode::window: return "window";
    case SourceMode::rate: return "rate";
    case SourceMode::open: return "open";
  }
  return "unknown";
}

struct LinkSpec {
  std::string a;
  std::string b;
  double bandwidth_bps = 0.0;
  double delay_s = 0.0;
  net::QueueConfig queue;
  int line = 0;
};

struct ConnectionSpec {
  int id = 0;
  std::string src;
  std::string dst;
  SourceMode mode = SourceMode::window;
  std::optional<std::int64_t> packets;  // file size; nullopt = persistent
  double size_bits = 8000.0;
  SizeDist sizes = SizeDist::fixed;
  double rate_bps = 0.0;
  double burst_bits = 0.0;  // rate mode; 0 means one packet
  Arrival arrival = Arrival::deterministic;
  cc::Scheme scheme = cc::Scheme::static_window;
  cc::SchemeParams params;
  transport::RetxPolicy retx = transport::RetxPolicy::go_back_n;
  transport::RtoMode rto = transport::RtoMode::adaptive;
  double rto_init_s = 1.0;
  double rto_min_s = 0.0;
  transport::CachePolicy cache = transport::CachePolicy::cache;
  int ack_every = 1;
  double start_s = 0.0;
  int line = 0;

  double effective_burst() const { return burst_bits > 0.0 ? burst_bits : size_bits; }
};

struct RunSpec {
  std::string name = "unnamed";
  std::uint64_t seed = 1;
  double duration_s = 10.0;
  bool stop_on_completion = false;
  double warmup_fraction = 0.1;
  std::optional<std::pair<std::string, std::string>> bottleneck;
  double sample_s = 1.0;
  std::uint64_t max_events = 200'000'000;
  double load = 1.0;  // multiplies every rate-mode and open-loop source rate
  double ack_bits = 320.0;
  double choke_bits = 320.0;
};

struct SweepSpec {
  std::string param;
  std::vector<double> values;
};

struct Scenario {
  std::vector<std::string> notes;  // free-form comment lines carried through export
  std::vector<std::string> nodes;
  std::vector<LinkSpec> links;
  std::vector<ConnectionSpec> conns;
  RunSpec run;
  std::optional<SweepSpec> sweep;

  const std::string& name() const { return run.name; }
};

/// Shortest-hop path from src to dst; neighbours are explored in link
/// declaration order so the route is deterministic. Empty if unreachable.
inline std::vector<std::string> route(const Scenario& s, const std::string& src, const std::string& dst) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const LinkSpec& l : s.links) {
    adj[l.a].push_back(l.b);
    adj[l.b].push_back(l.a);
  }
  std::map<std::string, std::string> parent;
  std::deque<std::string> frontier{src};
  std::set<std::string> seen{src};
  while (!frontier.empty()) {
    std::string cur = frontier.front();
    frontier.pop_front();
    if (cur == dst) break;
    for (const std::string& nb : adj[cur]) {
      if (seen.insert(nb).second) {
        parent[nb] = cur;
        frontier.push_back(nb);
      }
    }
  }
  if (seen.count(dst) == 0) return {};
  std::vector<std::string> path{dst};
  while (path.back() != src) path.push_back(parent.at(path.back()));
  return {path.rbegin(), path.rend()};
}

inline double offered_load_bps(const Scenario& s) {
  double total = 0.0;
  for (const ConnectionSpec& c : s.conns) {
    if (c.mode != SourceMode::window) total += c.rate_bps * s.run.load;
  }
  return total;
}

/// Offered load normalised by the named bottleneck, when there is one.
inline std::optional<double> offered_rho(const Scenario& s) {
  if (!s.run.bottleneck) return std::nullopt;
  for (const LinkSpec& l : s.links) {
    if ((l.a == s.run.bottleneck->first && l.b == s.run.bottleneck->second) ||
        (l.b == s.run.bottleneck->first && l.a == s.run.bottleneck->second)) {
      return offered_load_bps(s) / l.bandwidth_bps;
    }
  }
  return std::nullopt;
}

inline void validate(const Scenario& s) {
  std::set<std::string> nodes;
  for (const std::string& n : s.nodes) {
    if (!nodes.insert(n).second) throw ScenarioError(0, "duplicate node '" + n + "'");
  }
  std::set<std::pair<std::string, std::string>> pairs;
  for (const LinkSpec& l : s.links) {
    for (const std::string* end : {&l.a, &l.b}) {
      if (nodes.count(*end) == 0) throw ScenarioError(l.line, "link references undeclared node '" + *end + "'");
    }
    if (l.a == l.b) throw ScenarioError(l.line, "link endpoints must differ");
    if (!(l.bandwidth_bps > 0.0)) throw ScenarioError(l.line, "bandwidth must be positive");
    if (!(l.delay_s >= 0.0)) throw ScenarioError(l.line, "delay must be non-negative");
    auto key = std::minmax(l.a, l.b);
    if (!pairs.insert({key.first, key.second}).second) {
      throw ScenarioError(l.line, "duplicate link between '" + l.a + "' and '" + l.b + "'");
    }
  }
  std::set<int> ids;
  for (const ConnectionSpec& c : s.conns) {
    if (c.id < 0) throw ScenarioError(c.line, "connection id must be non-negative");
    if (!ids.insert(c.id).second) throw ScenarioError(c.line, "duplicate connection id " + std::to_string(c.id));
    for (const std::string* end : {&c.src, &c.dst}) {
      if (nodes.count(*end) == 0) throw ScenarioError(c.line, "connection references undeclared node '" + *end + "'");
    }
    if (c.src == c.dst) throw ScenarioError(c.line, "connection source and destination must differ");
    if (route(s, c.src, c.dst).empty()) {
      throw ScenarioError(c.line, "no route from '" + c.src + "' to '" + c.dst + "'");
    }
    if (!(c.size_bits > 0.0)) throw ScenarioError(c.line, "packet size must be positive");
    if (c.packets && *c.packets < 1) throw ScenarioError(c.line, "packets must be >= 1");
    if (c.mode != SourceMode::window && !(c.rate_bps > 0.0)) {
      throw ScenarioError(c.line, "rate must be positive for " + to_string(c.mode) + " sources");
    }
    if (c.mode == SourceMode::rate) {
      if (c.effective_burst() < c.size_bits) throw ScenarioError(c.line, "burst must be at least one packet");
      if (c.sizes != SizeDist::fixed) throw ScenarioError(c.line, "rate sources need fixed packet sizes");
    }
    if (c.mode == SourceMode::window && c.sizes != SizeDist::fixed) {
      throw ScenarioError(c.line, "window sources need fixed packet sizes");
    }
    if (c.mode == SourceMode::window && c.scheme == cc::Scheme::none) {
      throw ScenarioError(c.line, "window sources need a window scheme");
    }
    if (c.mode != SourceMode::window && c.scheme != cc::Scheme::none && c.scheme != cc::Scheme::static_window) {
      throw ScenarioError(c.line, "scheme " + std::string(cc::to_string(c.scheme)) + " needs a window source");
    }
    if (!(c.params.initial_window >= 1.0)) throw ScenarioError(c.line, "window must be >= 1");
    if (!(c.params.max_window >= c.params.initial_window)) throw ScenarioError(c.line, "max_window must be >= window");
    if (c.params.linear_acks < 1) throw ScenarioError(c.line, "linear_acks must be >= 1");
    if (!(c.params.decrease_factor > 0.0 && c.params.decrease_factor <= 1.0)) {
      throw ScenarioError(c.line, "decrease must be in (0, 1]");
    }
    if (!(c.params.choke_factor > 0.0 && c.params.choke_factor <= 1.0)) {
      throw ScenarioError(c.line, "choke_decrease must be in (0, 1]");
    }
    if (!(c.rto_init_s > 0.0)) throw ScenarioError(c.line, "rto_init must be positive");
    if (!(c.rto_min_s >= 0.0)) throw ScenarioError(c.line, "rto_min must be non-negative");
    if (c.ack_every < 1) throw ScenarioError(c.line, "ack_every must be >= 1");
    if (!(c.start_s >= 0.0)) throw ScenarioError(c.line, "start must be non-negative");
  }
  const RunSpec& r = s.run;
  if (!(r.duration_s > 0.0)) throw ScenarioError(0, "duration must be positive");
  if (!(r.warmup_fraction >= 0.0 && r.warmup_fraction < 1.0)) throw ScenarioError(0, "warmup must be in [0, 1)");
  if (!(r.sample_s > 0.0)) throw ScenarioError(0, "sample interval must be positive");
  if (!(r.load > 0.0)) throw ScenarioError(0, "load must be positive");
  if (!(r.ack_bits > 0.0) || !(r.choke_bits > 0.0)) throw ScenarioError(0, "ack and choke sizes must be positive");
  if (r.bottleneck) {
    bool found = false;
    for (const LinkSpec& l : s.links) {
      found = found || (l.a == r.bottleneck->first && l.b == r.bottleneck->second) ||
              (l.b == r.bottleneck->first && l.a == r.bottleneck->second);
    }
    if (!found) {
      throw ScenarioError(0, "bottleneck names no link: " + r.bottleneck->first + " " + r.bottleneck->second);
    }
  }
  if (r.stop_on_completion) {
    bool any_file = false;
    for (const ConnectionSpec& c : s.conns) any_file = any_file || (c.mode != SourceMode::open && c.packets);
    if (!any_file) throw ScenarioError(0, "stop completion needs at least one closed-loop file transfer");
  }
  if (s.sweep && s.sweep->values.empty()) throw ScenarioError(0, "sweep has an empty value list");
}

}  // namespace congestion_lab::scenario

#endif  // CONGESTION_LAB_SCENARIO_SCENARIO_HPP
