#ifndef CONGESTION_LAB_SCENARIO_BUILTINS_HPP
#define CONGESTION_LAB_SCENARIO_BUILTINS_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "congestion_lab/scenario/scenario.hpp"

namespace congestion_lab::scenario {

namespace builtin_detail {

inline LinkSpec link(std::string a, std::string b, double bw, double delay, std::optional<std::size_t> cap = {}) {
  LinkSpec l;
  l.a = std::move(a);
  l.b = std::move(b);
  l.bandwidth_bps = bw;
  l.delay_s = delay;
  l.queue.capacity = cap;
  return l;
}

inline ConnectionSpec open_source(int id, std::string src, std::string dst, double rate) {
  ConnectionSpec c;
  c.id = id;
  c.src = std::move(src);
  c.dst = std::move(dst);
  c.mode = SourceMode::open;
  c.rate_bps = rate;
  c.scheme = cc::Scheme::none;
  return c;
}

}  // namespace builtin_detail

// Serial line N1-N2-N3-N4 at 19.2 kbit/s. The workload is a 1000-packet file
// with a static window of 8 and a fixed timer that comfortably covers the
// slow-path round trip. Upgrading N1-N2 lets the source dump its window
// into N2 at once, the queue there stretches the round trip past the timer,
// and go-back-n then feeds duplicate copies into the 10-packet buffers.
constexpr double kFastlinkRate = 19200.0;
constexpr double kFastlinkUpgraded = 1e6;
constexpr double kFastlinkDelay = 0.01;
constexpr std::int64_t kFastlinkFile = 1000;
constexpr double kFastlinkPacket = 8000.0;
constexpr std::size_t kFastlinkBuffer = 10;
constexpr double kFastlinkWindow = 8.0;
constexpr double kFastlinkRto = 2.0;

inline Scenario scenario_myth_fastlink(bool upgraded, bool repaired = false) {
  using builtin_detail::link;
  Scenario s;
  s.notes = {"Serial four-node line; a faster first link slows the transfer down.",
             "File size, window, buffer and timer are reconstructions, not measured values."};
  s.nodes = {"N1", "N2", "N3", "N4"};
  s.links = {link("N1", "N2", upgraded ? kFastlinkUpgraded : kFastlinkRate, kFastlinkDelay, kFastlinkBuffer),
             link("N2", "N3", kFastlinkRate, kFastlinkDelay, kFastlinkBuffer),
             link("N3", "N4", kFastlinkRate, kFastlinkDelay, kFastlinkBuffer)};
  ConnectionSpec c;
  c.id = 1;
  c.src = "N1";
  c.dst = "N4";
  c.mode = SourceMode::window;
  c.packets = kFastlinkFile;
  c.size_bits = kFastlinkPacket;
  c.rto_init_s = kFastlinkRto;
  if (repaired) {
    c.scheme = cc::Scheme::cute;
    c.params.initial_window = 1.0;
    c.params.max_window = kFastlinkWindow;
    c.rto = transport::RtoMode::adaptive;
    c.retx = transport::RetxPolicy::retransmit_first;
    c.cache = transport::CachePolicy::cache;
  } else {
    c.scheme = cc::Scheme::static_window;
    c.params.initial_window = kFastlinkWindow;
    c.params.max_window = kFastlinkWindow;
    c.rto = transport::RtoMode::fixed;
    c.retx = transport::RetxPolicy::go_back_n;
    c.cache = transport::CachePolicy::discard;
  }
  s.conns = {c};
  s.run.name = repaired ? "myth-fastlink-repaired" : (upgraded ? "myth-fastlink" : "myth-fastlink-baseline");
  s.run.stop_on_completion = true;
  s.run.duration_s = 200000.0;
  s.run.sample_s = 10.0;
  s.run.bottleneck = std::make_pair(std::string("N2"), std::string("N3"));
  return s;
}

// One source, one router, one sink. The source is paced at twice the
// bottleneck rate, retransmits go-back-n on a fixed timer of ten base round
// trips, and the router never drops. The finite variant caps the buffer at
// 20 packets and runs CUTE over a window source instead.
constexpr double kBuffersBottleneck = 1e6;
constexpr double kBuffersAccess = 1e7;
constexpr double kBuffersDelay = 0.01;
constexpr double kBuffersPacket = 8000.0;

inline double buffers_base_rtt() {
  return 2.0 * (2.0 * kBuffersDelay) + kBuffersPacket / kBuffersAccess + kBuffersPacket / kBuffersBottleneck +
         320.0 / kBuffersBottleneck + 320.0 / kBuffersAccess;
}

inline Scenario scenario_myth_buffers(bool finite_cute = false) {
  using builtin_detail::link;
  Scenario s;
  s.notes = {"Infinite buffers do not prevent collapse: queueing delay outruns a fixed timer."};
  s.nodes = {"S", "R", "D"};
  s.links = {link("S", "R", kBuffersAccess, kBuffersDelay),
             link("R", "D", kBuffersBottleneck, kBuffersDelay, finite_cute ? std::optional<std::size_t>(20) : std::nullopt)};
  ConnectionSpec c;
  c.id = 1;
  c.src = "S";
  c.dst = "D";
  c.size_bits = kBuffersPacket;
  if (finite_cute) {
    c.mode = SourceMode::window;
    c.scheme = cc::Scheme::cute;
    c.params.initial_window = 1.0;
    c.params.max_window = 64.0;
    c.rto = transport::RtoMode::adaptive;
    c.rto_init_s = 10.0 * buffers_base_rtt();
    c.retx = transport::RetxPolicy::retransmit_first;
    c.cache = transport::CachePolicy::cache;
  } else {
    c.mode = SourceMode::rate;
    c.rate_bps = 2.0 * kBuffersBottleneck;
    c.scheme = cc::Scheme::none;
    c.rto = transport::RtoMode::fixed;
    c.rto_init_s = 10.0 * buffers_base_rtt();
    c.retx = transport::RetxPolicy::go_back_n;
    c.cache = transport::CachePolicy::discard;
  }
  s.conns = {c};
  s.run.name = finite_cute ? "myth-buffers-cute" : "myth-buffers";
  s.run.duration_s = 60.0;
  s.run.sample_s = 1.0;
  s.run.bottleneck = std::make_pair(std::string("R"), std::string("D"));
  return s;
}

// A and B each send 1 Gbit/s of fixed 8000-bit packets through R onto a
// single 1 Gbit/s link to C. Zero propagation delay, infinite buffer. The
// halved variant offsets B by one packet time so the two streams interleave.
constexpr double kBalancedRate = 1e9;
constexpr double kBalancedPacket = 8000.0;

inline Scenario scenario_myth_balanced(bool halved = false) {
  using builtin_detail::link;
  using builtin_detail::open_source;
  Scenario s;
  s.notes = {"Balanced configuration: two 1 Gbit/s inputs share one 1 Gbit/s output."};
  s.nodes = {"A", "B", "R", "C"};
  s.links = {link("A", "R", kBalancedRate, 0.0), link("B", "R", kBalancedRate, 0.0), link("R", "C", kBalancedRate, 0.0)};
  const double rate = halved ? kBalancedRate / 2.0 : kBalancedRate;
  ConnectionSpec a = open_source(1, "A", "C", rate);
  ConnectionSpec b = open_source(2, "B", "C", rate);
  a.size_bits = b.size_bits = kBalancedPacket;
  if (halved) b.start_s = kBalancedPacket / kBalancedRate;
  s.conns = {a, b};
  s.run.name = halved ? "myth-balanced-halved" : "myth-balanced";
  s.run.duration_s = 0.01;
  s.run.sample_s = 0.001;
  s.run.warmup_fraction = 0.0;
  s.run.bottleneck = std::make_pair(std::string("R"), std::string("C"));
  return s;
}

enum class KneeVariant { poisson, deterministic, closed_loop };

// Single bottleneck swept over offered load. Open-loop variants feed one
// source at load x capacity through a much faster access link; the
// closed-loop variant paces a retransmitting source at the same rate into
// a small buffer with a fixed timer and go-back-n, so overload turns into
// duplicate deliveries.
constexpr double kKneeCapacity = 1e6;
constexpr double kKneePacket = 8000.0;

inline Scenario scenario_knee_cliff(KneeVariant v = KneeVariant::poisson) {
  using builtin_detail::link;
  using builtin_detail::open_source;
  Scenario s;
  s.nodes = {"S", "R", "D"};
  if (v == KneeVariant::closed_loop) {
    s.notes = {"Closed-loop overload sweep: goodput falls off past saturation."};
    s.links = {link("S", "R", 10.0 * kKneeCapacity, 0.005), link("R", "D", kKneeCapacity, 0.005, 10)};
    ConnectionSpec c;
    c.id = 1;
    c.src = "S";
    c.dst = "D";
    c.mode = SourceMode::rate;
    c.rate_bps = kKneeCapacity;
    c.size_bits = kKneePacket;
    c.scheme = cc::Scheme::none;
    c.rto = transport::RtoMode::fixed;
    c.rto_init_s = 0.25;
    c.retx = transport::RetxPolicy::go_back_n;
    c.cache = transport::CachePolicy::discard;
    s.conns = {c};
    s.run.name = "cliff";
    s.run.duration_s = 100.0;
    s.run.sample_s = 10.0;
    s.sweep = SweepSpec{"run.load", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0,
                                     1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8}};
  } else {
    const bool det = v == KneeVariant::deterministic;
    s.notes = {det ? "Open-loop load sweep with deterministic arrivals and service."
                   : "Open-loop load sweep with Poisson arrivals and exponential sizes."};
    s.links = {link("S", "R", 1000.0 * kKneeCapacity, 0.0), link("R", "D", kKneeCapacity, 0.0)};
    ConnectionSpec c = open_source(1, "S", "D", kKneeCapacity);
    c.size_bits = kKneePacket;
    c.arrival = det ? Arrival::deterministic : Arrival::poisson;
    c.sizes = det ? SizeDist::fixed : SizeDist::exponential;
    s.conns = {c};
    s.run.name = det ? "knee-deterministic" : "knee";
    s.run.duration_s = 2000.0;
    s.run.sample_s = 100.0;
    s.sweep = SweepSpec{"run.load", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}};
  }
  s.run.bottleneck = std::make_pair(std::string("R"), std::string("D"));
  return s;
}

enum class FairnessVariant { fifo, round_robin, round_robin_equal };

// Four Poisson sources, one 1 Mbit/s bottleneck. Sources offer half the
// capacity each; source 4 offers three halves unless the variant is the
// equal one. The buffer is unbounded: a shared finite buffer admits packets
// in proportion to arrival rate, which would undo any service discipline,
// whereas here every class stays backlogged and the scheduler decides.
constexpr double kFairCapacity = 1e6;

inline Scenario scenario_fairness(FairnessVariant v = FairnessVariant::fifo) {
  using builtin_detail::link;
  using builtin_detail::open_source;
  Scenario s;
  s.notes = {"Four sources share one bottleneck; FIFO rewards the aggressive one, round robin does not."};
  s.nodes = {"S1", "S2", "S3", "S4", "R", "D"};
  for (int i = 1; i <= 4; ++i) s.links.push_back(link("S" + std::to_string(i), "R", 100.0 * kFairCapacity, 0.001));
  LinkSpec out = link("R", "D", kFairCapacity, 0.001);
  out.queue.service = v == FairnessVariant::fifo ? net::ServicePolicy::fifo : net::ServicePolicy::round_robin;
  s.links.push_back(out);
  for (int i = 1; i <= 4; ++i) {
    const double mult = (i == 4 && v != FairnessVariant::round_robin_equal) ? 3.0 : 1.0;
    ConnectionSpec c = open_source(i, "S" + std::to_string(i), "D", mult * kFairCapacity / 2.0);
    c.arrival = Arrival::poisson;
    s.conns.push_back(c);
  }
  s.run.name = v == FairnessVariant::fifo ? "fairness-fifo"
               : v == FairnessVariant::round_robin ? "fairness-rr" : "fairness-rr-equal";
  s.run.duration_s = 200.0;
  s.run.sample_s = 10.0;
  s.run.bottleneck = std::make_pair(std::string("R"), std::string("D"));
  return s;
}

// Dumbbell with two window connections running the same scheme over a
// marking, 25-packet bottleneck. With `choke` the router also sends choke
// packets back to the source of every dropped data packet.
inline Scenario scenario_schemes(cc::Scheme scheme, bool choke = false) {
  using builtin_detail::link;
  Scenario s;
  s.notes = {"Two window connections running one congestion scheme over a shared bottleneck."};
  s.nodes = {"S1", "S2", "R", "D"};
  LinkSpec bottleneck = link("R", "D", 1e6, 0.01, 25);
  bottleneck.queue.mark_threshold = 1;
  bottleneck.queue.choke_on_drop = choke;
  s.links = {link("S1", "R", 1e7, 0.005), link("S2", "R", 1e7, 0.005), bottleneck};
  for (int i = 1; i <= 2; ++i) {
    ConnectionSpec c;
    c.id = i;
    c.src = "S" + std::to_string(i);
    c.dst = "D";
    c.mode = SourceMode::window;
    c.scheme = scheme;
    c.params.initial_window = 1.0;
    c.params.max_window = scheme == cc::Scheme::static_window ? 8.0 : 100.0;
    if (scheme == cc::Scheme::static_window) c.params.initial_window = 8.0;
    c.params.choke_response = choke;
    c.rto = transport::RtoMode::adaptive;
    c.rto_init_s = 1.0;
    c.rto_min_s = 0.2;
    // one hole per timer expiry is hopeless after a slow-start overshoot
    c.retx = scheme == cc::Scheme::slow_start ? transport::RetxPolicy::go_back_n
                                              : transport::RetxPolicy::retransmit_first;
    c.start_s = (i - 1) * 0.5;
    s.conns.push_back(c);
  }
  s.run.name = choke ? "choke-" + std::string(cc::to_string(scheme)) : "scheme-" + std::string(cc::to_string(scheme));
  s.run.duration_s = 60.0;
  s.run.sample_s = 1.0;
  s.run.bottleneck = std::make_pair(std::string("R"), std::string("D"));
  return s;
}

struct BuiltinEntry {
  std::string name;
  std::string description;
  std::function<Scenario()> make;
};

inline const std::vector<BuiltinEntry>& builtins() {
  static const std::vector<BuiltinEntry> list = [] {
    std::vector<BuiltinEntry> v = {
        {"myth-fastlink", "upgraded first link, static window, fixed timer, go-back-n",
         [] { return scenario_myth_fastlink(true); }},
        {"myth-fastlink-baseline", "all links 19.2 kbit/s", [] { return scenario_myth_fastlink(false); }},
        {"myth-fastlink-repaired", "upgraded first link with CUTE and an adaptive timer",
         [] { return scenario_myth_fastlink(true, true); }},
        {"myth-buffers", "infinite buffer, rate source at twice capacity, fixed timer",
         [] { return scenario_myth_buffers(false); }},
        {"myth-buffers-cute", "20-packet buffer with CUTE", [] { return scenario_myth_buffers(true); }},
        {"myth-balanced", "two 1 Gbit/s inputs into one 1 Gbit/s output", [] { return scenario_myth_balanced(false); }},
        {"myth-balanced-halved", "both inputs at half rate", [] { return scenario_myth_balanced(true); }},
        {"knee", "open-loop Poisson load sweep", [] { return scenario_knee_cliff(KneeVariant::poisson); }},
        {"knee-deterministic", "open-loop deterministic load sweep",
         [] { return scenario_knee_cliff(KneeVariant::deterministic); }},
        {"cliff", "closed-loop overload sweep", [] { return scenario_knee_cliff(KneeVariant::closed_loop); }},
        {"fairness-fifo", "one aggressive source, FIFO service", [] { return scenario_fairness(FairnessVariant::fifo); }},
        {"fairness-rr", "one aggressive source, round-robin service",
         [] { return scenario_fairness(FairnessVariant::round_robin); }},
        {"fairness-rr-equal", "equal sources, round-robin service",
         [] { return scenario_fairness(FairnessVariant::round_robin_equal); }},
    };
    for (cc::Scheme sch : {cc::Scheme::static_window, cc::Scheme::cute, cc::Scheme::linear, cc::Scheme::slow_start,
                           cc::Scheme::binary_feedback, cc::Scheme::delay_based}) {
      v.push_back({"scheme-" + std::string(cc::to_string(sch)), "two connections, shared marking bottleneck",
                   [sch] { return scenario_schemes(sch); }});
    }
    v.push_back({"choke-cute", "CUTE with choke packets on every drop",
                 [] { return scenario_schemes(cc::Scheme::cute, true); }});
    return v;
  }();
  return list;
}

inline std::optional<Scenario> find_builtin(const std::string& name) {
  for (const BuiltinEntry& e : builtins()) {
    if (e.name == name) return e.make();
  }
  return std::nullopt;
}

}  // namespace congestion_lab::scenario

#endif  // CONGESTION_LAB_SCENARIO_BUILTINS_HPP
