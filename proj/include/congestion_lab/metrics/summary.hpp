#ifndef CONGESTION_LAB_METRICS_SUMMARY_HPP
#define CONGESTION_LAB_METRICS_SUMMARY_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "congestion_lab/metrics/metrics.hpp"
#include "congestion_lab/net/packet.hpp"

namespace congestion_lab::metrics {

/// Raw per-connection accounting collected during a run. Fields suffixed
/// `_window` cover only the measurement window (after warm-up).
struct FlowAccounting {
  net::ConnId conn = 0;
  std::int64_t packets_sent = 0;  // data transmissions, retransmissions included
  std::int64_t retransmissions = 0;
  std::int64_t unique_delivered = 0;
  double unique_bits_window = 0.0;
  std::int64_t unique_window = 0;
  double delay_sum_window = 0.0;
  double forwarded_bits_window = 0.0;  // data bits over the bottleneck (or to the sink)
  std::optional<double> completion_s;
};

struct RunRecord {
  std::string scenario;
  double window_start_s = 0.0;
  double window_end_s = 0.0;
  std::vector<FlowAccounting> flows;
};

struct FlowStats {
  std::optional<net::ConnId> conn;  // nullopt for the aggregate row
  std::int64_t packets_sent = 0;
  std::int64_t unique_delivered = 0;
  std::int64_t retransmission_count = 0;
  double bits_delivered_unique = 0.0;
  double goodput_bps = 0.0;
  double throughput_bps = 0.0;
  double mean_delay_s = 0.0;
  std::optional<double> completion_time_s;
};

struct Summary {
  std::vector<FlowStats> flows;
  FlowStats aggregate;
  std::optional<double> fairness;
  double elapsed_s = 0.0;
};

/// Goodput is unique delivered bits over the measurement window; throughput
/// is every data bit forwarded at the bottleneck over the same window.
/// Fairness is taken over per-connection goodputs.
inline Summary summarize(const RunRecord& run) {
  Summary s;
  s.elapsed_s = run.window_end_s - run.window_start_s;
  const double span = s.elapsed_s > 0.0 ? s.elapsed_s : 1.0;
  double delay_sum = 0.0;
  std::int64_t delay_n = 0;
  std::vector<double> goodputs;
  for (const FlowAccounting& f : run.flows) {
    FlowStats st;
    st.conn = f.conn;
    st.packets_sent = f.packets_sent;
    st.unique_delivered = f.unique_delivered;
    st.retransmission_count = f.retransmissions;
    st.bits_delivered_unique = f.unique_bits_window;
    st.goodput_bps = f.unique_bits_window / span;
    st.throughput_bps = f.forwarded_bits_window / span;
    st.mean_delay_s = f.unique_window > 0 ? f.delay_sum_window / static_cast<double>(f.unique_window) : 0.0;
    st.completion_time_s = f.completion_s;
    goodputs.push_back(st.goodput_bps);
    delay_sum += f.delay_sum_window;
    delay_n += f.unique_window;

    FlowStats& a = s.aggregate;
    a.packets_sent += st.packets_sent;
    a.unique_delivered += st.unique_delivered;
    a.retransmission_count += st.retransmission_count;
    a.bits_delivered_unique += st.bits_delivered_unique;
    a.goodput_bps += st.goodput_bps;
    a.throughput_bps += st.throughput_bps;
    if (st.completion_time_s) {
      a.completion_time_s = std::max(a.completion_time_s.value_or(0.0), *st.completion_time_s);
    }
    s.flows.push_back(st);
  }
  s.aggregate.mean_delay_s = delay_n > 0 ? delay_sum / static_cast<double>(delay_n) : 0.0;
  if (!goodputs.empty() && std::any_of(goodputs.begin(), goodputs.end(), [](double g) { return g > 0.0; })) {
    s.fairness = fairness_index(goodputs);
  }
  return s;
}

}  // namespace congestion_lab::metrics

#endif  // CONGESTION_LAB_METRICS_SUMMARY_HPP
