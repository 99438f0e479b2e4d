#ifndef CONGESTION_LAB_SIMULATION_HPP
#define CONGESTION_LAB_SIMULATION_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "congestion_lab/metrics/summary.hpp"
#include "congestion_lab/net/link.hpp"
#include "congestion_lab/net/packet.hpp"
#include "congestion_lab/net/port_queue.hpp"
#include "congestion_lab/scenario/scenario.hpp"
#include "congestion_lab/sim/rng.hpp"
#include "congestion_lab/sim/simulator.hpp"
#include "congestion_lab/transport/receiver.hpp"
#include "congestion_lab/transport/sender.hpp"

namespace congestion_lab {

struct RunOptions {
  bool trace = false;
  bool timeseries = true;
};

struct TimeSeriesRow {
  double t_s = 0.0;
  std::string entity;
  std::string metric;
  double value = 0.0;
};

/// Per-connection packet accounting by kind (data, ack, choke).
struct KindCounts {
  std::array<std::int64_t, 3> by_kind{};

  std::int64_t& operator[](net::PacketKind k) { return by_kind[static_cast<std::size_t>(k)]; }
  std::int64_t operator[](net::PacketKind k) const { return by_kind[static_cast<std::size_t>(k)]; }
  std::int64_t total() const { return by_kind[0] + by_kind[1] + by_kind[2]; }
};

struct ConservationRow {
  net::ConnId conn = 0;
  KindCounts injected;
  KindCounts delivered;
  KindCounts dropped;
  KindCounts in_flight;

  bool balanced() const {
    for (std::size_t k = 0; k < 3; ++k) {
      if (injected.by_kind[k] != delivered.by_kind[k] + dropped.by_kind[k] + in_flight.by_kind[k]) return false;
    }
    return true;
  }
};

struct ControllerReport {
  net::ConnId conn = 0;
  cc::Scheme scheme = cc::Scheme::none;
  cc::ControlAudit audit;
  double final_window = 0.0;
  std::int64_t window_violations = 0;
  std::int64_t karn_violations = 0;
  std::int64_t rtt_samples = 0;
  std::int64_t duplicate_acks = 0;
};

struct QueueReport {
  std::string name;  // "A->B"
  std::size_t occupancy_end = 0;
  std::size_t max_occupancy = 0;
  std::uint64_t drops = 0;
  std::uint64_t marks = 0;
  bool capacity_respected = true;
};

struct RunResult {
  std::string scenario;
  metrics::RunRecord record;
  metrics::Summary summary;
  std::vector<TimeSeriesRow> timeseries;
  std::string trace;
  std::vector<ConservationRow> conservation;
  KindCounts injected_total;
  std::vector<ControllerReport> controllers;
  std::vector<QueueReport> queues;
  std::uint64_t events = 0;
  double end_s = 0.0;
  bool all_complete = false;
  bool event_order_ok = true;

  const QueueReport* queue(const std::string& from, const std::string& to) const {
    const std::string key = from + "->" + to;
    for (const QueueReport& q : queues) {
      if (q.name == key) return &q;
    }
    return nullptr;
  }
};

/// One instance of a scenario: builds nodes, ports and connections, then
/// drives them from the event loop. Single-threaded; instances share
/// nothing.
///
/// Routers have output queues only. A host's closed-loop senders have no
/// queue of their own: when the host's outgoing link is idle and its queue
/// (acks, open-loop packets) is empty, the port pulls from its senders
/// round-robin, so a data packet's send time is the moment it starts on
/// the wire.
class Simulation {
public:
  explicit Simulation(scenario::Scenario s, RunOptions opts = {}) : sc_(std::move(s)), opts_(opts) {
    scenario::validate(sc_);
    build();
  }

  const scenario::Scenario& scenario() const { return sc_; }
  const std::vector<std::string>& node_names() const { return sc_.nodes; }
  sim::Simulator& simulator() { return sim_; }

  RunResult run() {
    RunResult res;
    res.scenario = sc_.name();
    sim_.set_event_budget(sc_.run.max_events);
    double last_t = -1.0;
    std::uint64_t last_order = 0;
    sim_.set_observer([&](const sim::EventRecord& rec) {
      if (rec.time < last_t || (rec.time == last_t && rec.order <= last_order)) res.event_order_ok = false;
      last_t = rec.time;
      last_order = rec.order;
      if (opts_.trace) res.trace += sim::format_trace_line(rec, sc_.nodes);
    });

    for (std::size_t i = 0; i < conns_.size(); ++i) {
      schedule_wakeup(i, conns_[i].spec.start_s);
    }

    const double duration = sc_.run.duration_s;
    window_start_ = sc_.run.stop_on_completion ? 0.0 : sc_.run.warmup_fraction * duration;
    double next_sample = std::min(sc_.run.sample_s, duration);
    while (true) {
      sim_.run_until(next_sample);
      if (sim_.stopped()) {
        if (opts_.timeseries) sample(sim_.now(), res.timeseries);
        break;
      }
      if (opts_.timeseries) sample(next_sample, res.timeseries);
      if (next_sample >= duration) break;
      next_sample = std::min(next_sample + sc_.run.sample_s, duration);
    }
    sim_.set_observer(nullptr);

    res.end_s = sim_.now();
    res.events = sim_.processed();
    res.all_complete = all_complete();
    finish(res);
    return res;
  }

private:
  struct Port {
    net::Link link;
    net::PortQueue queue;
    std::string name;
    bool busy = false;
    std::optional<net::Packet> in_service;
    std::deque<net::Packet> propagating;
    std::vector<std::size_t> local_senders;
    std::size_t rr = 0;
    std::size_t max_occupancy = 0;
    bool bottleneck = false;
  };

  struct Conn {
    scenario::ConnectionSpec spec;
    net::NodeId src = 0;
    net::NodeId dst = 0;
    std::size_t first_port = 0;  // src -> first hop
    std::size_t ack_port = 0;    // dst -> first hop back
    std::optional<transport::Sender> sender;
    transport::Receiver receiver;
    std::optional<sim::RngStream> rng;
    std::int64_t open_next_seq = 1;
    double rate_bps = 0.0;
    metrics::FlowAccounting acct;
    KindCounts injected, delivered, dropped;
    sim::EventHandle timer;
    std::optional<double> timer_at;
    std::int64_t timer_for = -1;
    sim::EventHandle wakeup;
    std::optional<double> wakeup_at;

    bool closed_loop() const { return spec.mode != scenario::SourceMode::open; }
    bool file() const { return spec.packets.has_value(); }
  };

  static constexpr std::uint64_t kSourceStreams = 1ULL << 32;
  static constexpr std::uint64_t kQueueStreams = 2ULL << 32;

  void build() {
    for (std::size_t i = 0; i < sc_.nodes.size(); ++i) node_ids_[sc_.nodes[i]] = static_cast<net::NodeId>(i);
    for (const scenario::LinkSpec& l : sc_.links) {
      add_port(l, l.a, l.b);
      add_port(l, l.b, l.a);
    }
    if (sc_.run.bottleneck) {
      auto [a, b] = *sc_.run.bottleneck;
      ports_[port_between(node_ids_.at(a), node_ids_.at(b))].bottleneck = true;
      has_bottleneck_ = true;
    }
    adjacency_.assign(sc_.nodes.size(), {});
    for (std::size_t i = 0; i < ports_.size(); ++i) adjacency_[ports_[i].link.from].push_back(i);

    for (const scenario::ConnectionSpec& spec : sc_.conns) {
      Conn c;
      c.spec = spec;
      c.src = node_ids_.at(spec.src);
      c.dst = node_ids_.at(spec.dst);
      c.first_port = next_port(c.src, c.dst);
      c.ack_port = next_port(c.dst, c.src);
      c.acct.conn = spec.id;
      c.rate_bps = spec.rate_bps * sc_.run.load;
      c.receiver = transport::Receiver({spec.cache, spec.ack_every});
      if (spec.mode == scenario::SourceMode::open) {
        c.rng.emplace(sc_.run.seed, kSourceStreams + static_cast<std::uint64_t>(spec.id));
      } else {
        transport::SenderConfig cfg;
        cfg.conn = spec.id;
        cfg.src = c.src;
        cfg.dst = c.dst;
        cfg.packet_bits = spec.size_bits;
        cfg.total_packets = spec.packets;
        cfg.mode = spec.mode == scenario::SourceMode::rate ? transport::FlowMode::rate : transport::FlowMode::window;
        cfg.rate_bps = c.rate_bps;
        cfg.burst_bits = spec.effective_burst();
        cfg.retx = spec.retx;
        cfg.rto.mode = spec.rto;
        cfg.rto.initial_s = spec.rto_init_s;
        cfg.rto.min_s = spec.rto_min_s;
        cfg.scheme = spec.scheme;
        cfg.params = spec.params;
        c.sender.emplace(cfg);
      }
      conns_.push_back(std::move(c));
      conn_index_[spec.id] = conns_.size() - 1;
      if (conns_.back().closed_loop()) ports_[conns_.back().first_port].local_senders.push_back(conns_.size() - 1);
    }
  }

  void add_port(const scenario::LinkSpec& l, const std::string& from, const std::string& to) {
    net::Link link{node_ids_.at(from), node_ids_.at(to), l.bandwidth_bps, l.delay_s};
    std::optional<sim::RngStream> rng;
    if (l.queue.drop == net::DropPolicy::random) rng.emplace(sc_.run.seed, kQueueStreams + ports_.size());
    ports_.push_back(Port{link, net::PortQueue(l.queue, std::move(rng)), from + "->" + to, false, std::nullopt, {}, {}, 0, 0, false});
    port_lookup_[{link.from, link.to}] = ports_.size() - 1;
  }

  std::size_t port_between(net::NodeId a, net::NodeId b) const { return port_lookup_.at({a, b}); }

  // Next hop toward dst: breadth-first tree rooted at dst, neighbours in
  // link declaration order. Cached per destination.
  std::size_t next_port(net::NodeId at, net::NodeId dst) {
    auto it = next_hop_.find(dst);
    if (it == next_hop_.end()) {
      std::vector<std::int64_t> toward(sc_.nodes.size(), -1);
      std::vector<bool> seen(sc_.nodes.size(), false);
      std::deque<net::NodeId> frontier{dst};
      seen[dst] = true;
      while (!frontier.empty()) {
        net::NodeId cur = frontier.front();
        frontier.pop_front();
        for (std::size_t pi : adjacency_[cur]) {
          net::NodeId nb = ports_[pi].link.to;
          if (!seen[nb]) {
            seen[nb] = true;
            toward[nb] = static_cast<std::int64_t>(port_between(nb, cur));
            frontier.push_back(nb);
          }
        }
      }
      it = next_hop_.emplace(dst, std::move(toward)).first;
    }
    const std::int64_t p = it->second[at];
    if (p < 0) throw std::logic_error("no route from " + sc_.nodes[at] + " to " + sc_.nodes[dst]);
    return static_cast<std::size_t>(p);
  }

  // --- events -----------------------------------------------------------------

  void schedule_wakeup(std::size_t ci, double at) {
    Conn& c = conns_[ci];
    if (c.wakeup_at && *c.wakeup_at <= at) return;
    sim_.cancel(c.wakeup);
    c.wakeup_at = at;
    c.wakeup = sim_.schedule(at, sim::EventTag{sim::EventKind::source_wakeup, c.src, c.spec.id, sim::kNone, "wake"},
                             [this, ci] { on_wakeup(ci); });
  }

  void on_wakeup(std::size_t ci) {
    Conn& c = conns_[ci];
    c.wakeup_at.reset();
    if (c.closed_loop()) {
      try_start(c.first_port);
      return;
    }
    if (c.spec.packets && c.open_next_seq > *c.spec.packets) return;
    net::Packet p;
    p.id = next_id_++;
    p.conn = c.spec.id;
    p.seq = c.open_next_seq++;
    p.size_bits = c.spec.sizes == scenario::SizeDist::fixed ? c.spec.size_bits : c.rng->exponential(c.spec.size_bits);
    p.kind = net::PacketKind::data;
    p.src = c.src;
    p.dst = c.dst;
    p.first_sent_at = sim_.now();
    p.sent_at = sim_.now();
    ++c.acct.packets_sent;
    const double mean_gap = c.spec.size_bits / c.rate_bps;
    const double gap = c.spec.arrival == scenario::Arrival::deterministic ? mean_gap : c.rng->exponential(mean_gap);
    schedule_wakeup(ci, sim_.now() + gap);
    inject(c.first_port, std::move(p));
  }

  void inject(std::size_t pi, net::Packet p) {
    conn_of(p.conn).injected[p.kind]++;
    injected_total_[p.kind]++;
    offer(pi, std::move(p));
  }

  void offer(std::size_t pi, net::Packet p) {
    Port& port = ports_[pi];
    net::EnqueueResult r = port.queue.enqueue(std::move(p));
    port.max_occupancy = std::max(port.max_occupancy, port.queue.occupancy());
    if (r.victim) on_drop(pi, *r.victim);
    try_start(pi);
  }

  void on_drop(std::size_t pi, const net::Packet& victim) {
    Port& port = ports_[pi];
    conn_of(victim.conn).dropped[victim.kind]++;
    const net::NodeId here = port.link.from;
    if (auto choke = net::emit_choke(port.queue.config(), victim, here, next_id_, sc_.run.choke_bits, sim_.now())) {
      ++next_id_;
      if (choke->dst == here) {
        conn_of(choke->conn).injected[net::PacketKind::choke]++;
        injected_total_[net::PacketKind::choke]++;
        deliver(*choke);
      } else {
        inject(next_port(here, choke->dst), std::move(*choke));
      }
    }
  }

  void try_start(std::size_t pi) {
    Port& port = ports_[pi];
    if (port.busy) return;
    std::optional<net::Packet> p = port.queue.service_next();
    if (!p) p = pull_local(pi);
    if (!p) return;
    port.busy = true;
    const double tx = net::transmission_time(*p, port.link);
    sim::EventTag tag{sim::EventKind::transmission_complete, port.link.from, p->conn, p->seq,
                      std::string(net::to_string(p->kind))};
    port.in_service = std::move(p);
    sim_.schedule(sim_.now() + tx, std::move(tag), [this, pi] { on_transmitted(pi); });
  }

  std::optional<net::Packet> pull_local(std::size_t pi) {
    Port& port = ports_[pi];
    const std::size_t n = port.local_senders.size();
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t slot = (port.rr + k) % n;
      const std::size_t ci = port.local_senders[slot];
      Conn& c = conns_[ci];
      transport::Pull pull = c.sender->pull(sim_.now(), next_id_);
      if (pull.packet) {
        port.rr = (slot + 1) % n;
        c.injected[net::PacketKind::data]++;
        injected_total_[net::PacketKind::data]++;
        ++c.acct.packets_sent;
        if (pull.packet->retransmission) ++c.acct.retransmissions;
        refresh_timer(ci);
        return pull.packet;
      }
      if (pull.retry_at) schedule_wakeup(ci, *pull.retry_at);
    }
    return std::nullopt;
  }

  void on_transmitted(std::size_t pi) {
    Port& port = ports_[pi];
    net::Packet p = std::move(*port.in_service);
    port.in_service.reset();
    port.busy = false;
    if (port.bottleneck && p.kind == net::PacketKind::data && sim_.now() >= window_start_) {
      conn_of(p.conn).acct.forwarded_bits_window += p.size_bits;
      p.measured = true;
    }
    sim::EventTag tag{sim::EventKind::packet_arrival, port.link.to, p.conn, p.seq,
                      std::string(net::to_string(p.kind))};
    port.propagating.push_back(std::move(p));
    sim_.schedule(sim_.now() + port.link.prop_delay_s, std::move(tag), [this, pi] { on_arrival(pi); });
    try_start(pi);
  }

  void on_arrival(std::size_t pi) {
    Port& port = ports_[pi];
    net::Packet p = std::move(port.propagating.front());
    port.propagating.pop_front();
    const net::NodeId here = port.link.to;
    if (here == p.dst) {
      deliver(std::move(p));
    } else {
      offer(next_port(here, p.dst), std::move(p));
    }
  }

  void deliver(net::Packet p) {
    Conn& c = conn_of(p.conn);
    c.delivered[p.kind]++;
    switch (p.kind) {
      case net::PacketKind::data: deliver_data(c, p); break;
      case net::PacketKind::ack:
        if (c.sender) {
          c.sender->on_ack(p.seq, p.echoed_bit, sim_.now());
          const std::size_t ci = conn_index_.at(c.spec.id);
          refresh_timer(ci);
          try_start(c.first_port);
        }
        break;
      case net::PacketKind::choke:
        if (c.sender) c.sender->on_choke();
        break;
    }
  }

  void deliver_data(Conn& c, const net::Packet& p) {
    const double now = sim_.now();
    // Goodput counts only packets that throughput counted, so a packet that
    // crossed the bottleneck before the window opened counts in neither.
    const bool in_window = has_bottleneck_ ? p.measured : now >= window_start_;
    if (!has_bottleneck_ && in_window) c.acct.forwarded_bits_window += p.size_bits;
    bool unique = true;
    if (c.closed_loop()) {
      transport::DeliverResult r = c.receiver.deliver(p);
      unique = r.unique;
      if (r.ack) {
        net::Packet ack;
        ack.id = next_id_++;
        ack.conn = c.spec.id;
        ack.seq = r.ack->ack_no;
        ack.size_bits = sc_.run.ack_bits;
        ack.kind = net::PacketKind::ack;
        ack.src = c.dst;
        ack.dst = c.src;
        ack.echoed_bit = r.ack->echoed_bit;
        ack.first_sent_at = now;
        ack.sent_at = now;
        inject(c.ack_port, std::move(ack));
      }
    }
    if (unique) {
      ++c.acct.unique_delivered;
      if (in_window) {
        c.acct.unique_bits_window += p.size_bits;
        ++c.acct.unique_window;
        c.acct.delay_sum_window += now - p.first_sent_at;
      }
    }
    if (c.closed_loop() && c.file() && !c.acct.completion_s && c.receiver.cumulative() >= *c.spec.packets) {
      c.acct.completion_s = now;
      if (sc_.run.stop_on_completion && all_complete()) sim_.stop();
    }
  }

  void refresh_timer(std::size_t ci) {
    Conn& c = conns_[ci];
    const std::optional<double> deadline = c.sender->timer_deadline();
    const std::int64_t seq = c.sender->timer_seq().value_or(-1);
    if (deadline == c.timer_at && seq == c.timer_for) return;
    sim_.cancel(c.timer);
    c.timer_at = deadline;
    c.timer_for = seq;
    if (!deadline) return;
    c.timer = sim_.schedule(std::max(sim_.now(), *deadline),
                            sim::EventTag{sim::EventKind::timer_expiry, c.src, c.spec.id, seq, "rto"},
                            [this, ci, seq] { on_timer(ci, seq); });
  }

  void on_timer(std::size_t ci, std::int64_t seq) {
    Conn& c = conns_[ci];
    c.timer_at.reset();
    c.timer_for = -1;
    c.sender->on_timeout(seq);
    refresh_timer(ci);
    try_start(c.first_port);
  }

  // --- bookkeeping ------------------------------------------------------------

  Conn& conn_of(net::ConnId id) { return conns_[conn_index_.at(id)]; }

  bool all_complete() const {
    bool any = false;
    for (const Conn& c : conns_) {
      if (c.closed_loop() && c.file()) {
        any = true;
        if (!c.acct.completion_s) return false;
      }
    }
    return any;
  }

  void sample(double t, std::vector<TimeSeriesRow>& out) const {
    for (const Port& p : ports_) {
      const std::string entity = "q:" + p.name;
      out.push_back({t, entity, "occupancy", static_cast<double>(p.queue.occupancy())});
      out.push_back({t, entity, "drops", static_cast<double>(p.queue.drops())});
      out.push_back({t, entity, "marks", static_cast<double>(p.queue.marks())});
    }
    for (const Conn& c : conns_) {
      if (!c.sender) continue;
      const std::string entity = "conn:" + std::to_string(c.spec.id);
      const transport::Sender& s = *c.sender;
      out.push_back({t, entity, "window", s.window()});
      out.push_back({t, entity, "srtt", s.rto_clock().estimator().srtt});
      out.push_back({t, entity, "rto", s.rto_clock().current()});
      out.push_back({t, entity, "outstanding", static_cast<double>(s.outstanding_count())});
      out.push_back({t, entity, "retransmissions", static_cast<double>(s.retransmissions())});
    }
  }

  void finish(RunResult& res) const {
    res.record.scenario = sc_.name();
    res.record.window_start_s = window_start_;
    res.record.window_end_s = res.end_s;
    for (const Conn& c : conns_) res.record.flows.push_back(c.acct);
    res.summary = metrics::summarize(res.record);
    res.injected_total = injected_total_;

    std::map<net::ConnId, KindCounts> in_flight;
    for (const Port& p : ports_) {
      for (const net::Packet& q : p.queue.contents()) in_flight[q.conn][q.kind]++;
      if (p.in_service) in_flight[p.in_service->conn][p.in_service->kind]++;
      for (const net::Packet& q : p.propagating) in_flight[q.conn][q.kind]++;
    }
    for (const Conn& c : conns_) {
      res.conservation.push_back(ConservationRow{c.spec.id, c.injected, c.delivered, c.dropped, in_flight[c.spec.id]});
      if (c.sender) {
        const transport::Sender& s = *c.sender;
        res.controllers.push_back(ControllerReport{c.spec.id, c.spec.scheme, s.controller().audit, s.window(),
                                                   s.window_violations(), s.karn_violations(), s.rtt_samples(),
                                                   s.duplicate_acks()});
      }
    }
    for (const Port& p : ports_) {
      const auto cap = p.queue.config().capacity;
      res.queues.push_back(QueueReport{p.name, p.queue.occupancy(), p.max_occupancy, p.queue.drops(),
                                       p.queue.marks(), !cap || p.max_occupancy <= *cap});
    }
  }

  scenario::Scenario sc_;
  RunOptions opts_;
  sim::Simulator sim_;
  std::map<std::string, net::NodeId> node_ids_;
  std::vector<Port> ports_;
  std::map<std::pair<net::NodeId, net::NodeId>, std::size_t> port_lookup_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::map<net::NodeId, std::vector<std::int64_t>> next_hop_;
  std::vector<Conn> conns_;
  std::map<net::ConnId, std::size_t> conn_index_;
  KindCounts injected_total_;
  std::uint64_t next_id_ = 1;
  double window_start_ = 0.0;
  bool has_bottleneck_ = false;
};

inline RunResult run_scenario(const scenario::Scenario& s, RunOptions opts = {}) {
  Simulation sim(s, opts);
  return sim.run();
}

}  // namespace congestion_lab

#endif  // CONGESTION_LAB_SIMULATION_HPP
