#ifndef CONGESTION_LAB_NET_PORT_QUEUE_HPP
#define CONGESTION_LAB_NET_PORT_QUEUE_HPP

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <utility>

#include "congestion_lab/net/packet.hpp"
#include "congestion_lab/sim/rng.hpp"

namespace congestion_lab::net {

enum class ServicePolicy : std::uint8_t { fifo, round_robin };
enum class DropPolicy : std::uint8_t { tail, head, random };

inline std::string_view to_string(ServicePolicy p) {
  return p == ServicePolicy::fifo ? "fifo" : "rr";
}

inline std::string_view to_string(DropPolicy p) {
  switch (p) {
    case DropPolicy::tail: return "tail";
    case DropPolicy::head: return "head";
    case DropPolicy::random: return "random";
  }
  return "unknown";
}

struct QueueConfig {
  std::optional<std::size_t> capacity;  // packets; nullopt means unbounded
  ServicePolicy service = ServicePolicy::fifo;
  DropPolicy drop = DropPolicy::tail;
  std::optional<std::size_t> mark_threshold = 1;  // nullopt disables marking
  bool choke_on_drop = false;

  bool operator==(const QueueConfig&) const = default;
};

/// Outcome of offering a packet to a queue. `victim` is set when something
/// was discarded; it may be the arriving packet or one that was queued.
struct EnqueueResult {
  bool arriving_accepted = true;
  std::optional<Packet> victim;

  bool dropped() const { return victim.has_value(); }
};

/// Output queue of a router port: bounded or unbounded, FIFO or
/// round-robin across connections, with a configurable overflow victim.
///
/// Packets are stored in a single arrival-ordered deque. Round-robin picks
/// the next non-empty connection class after the last one served (cyclic
/// over connection ids) and serves that class's oldest packet.
class PortQueue {
public:
  explicit PortQueue(QueueConfig cfg, std::optional<sim::RngStream> rng = std::nullopt)
      : cfg_(cfg), rng_(std::move(rng)) {
    if (cfg_.drop == DropPolicy::random && cfg_.capacity && !rng_) {
      throw std::logic_error("random drop policy needs an rng stream");
    }
  }

  const QueueConfig& config() const { return cfg_; }
  std::size_t occupancy() const { return packets_.size(); }
  std::size_t occupancy(ConnId conn) const {
    auto it = per_conn_.find(conn);
    return it == per_conn_.end() ? 0 : it->second;
  }
  bool empty() const { return packets_.empty(); }
  const std::deque<Packet>& contents() const { return packets_; }

  std::uint64_t drops() const { return drops_; }
  std::uint64_t marks() const { return marks_; }
  std::uint64_t accepted() const { return accepted_; }

  /// Sets the congestion bit when occupancy at arrival reaches the
  /// threshold. Never clears a bit set upstream.
  Packet mark_congestion(Packet p) {
    if (p.kind == PacketKind::data && cfg_.mark_threshold &&
        packets_.size() >= *cfg_.mark_threshold) {
      if (!p.congestion_bit) ++marks_;
      p.congestion_bit = true;
    }
    return p;
  }

  EnqueueResult enqueue(Packet p) {
    p = mark_congestion(std::move(p));
    if (!cfg_.capacity || packets_.size() < *cfg_.capacity) {
      push(std::move(p));
      return EnqueueResult{};
    }
    ++drops_;
    if (packets_.empty() || cfg_.drop == DropPolicy::tail) {
      return EnqueueResult{false, std::move(p)};
    }
    if (cfg_.drop == DropPolicy::head) {
      Packet victim = take_at(0);
      push(std::move(p));
      return EnqueueResult{true, std::move(victim)};
    }
    // Random: uniform over the queued packets plus the arriving one, which
    // takes index occupancy().
    const std::uint64_t n = packets_.size();
    const std::uint64_t idx = rng_->index(n + 1);
    if (idx == n) return EnqueueResult{false, std::move(p)};
    Packet victim = take_at(static_cast<std::size_t>(idx));
    push(std::move(p));
    return EnqueueResult{true, std::move(victim)};
  }

  std::optional<Packet> service_next() {
    if (packets_.empty()) return std::nullopt;
    if (cfg_.service == ServicePolicy::fifo) return take_at(0);

    auto cls = per_conn_.upper_bound(last_served_);
    if (cls == per_conn_.end()) cls = per_conn_.begin();
    const ConnId target = cls->first;
    for (std::size_t i = 0; i < packets_.size(); ++i) {
      if (packets_[i].conn == target) {
        last_served_ = target;
        return take_at(i);
      }
    }
    throw std::logic_error("round-robin class bookkeeping out of sync");
  }

private:
  void push(Packet p) {
    ++per_conn_[p.conn];
    ++accepted_;
    packets_.push_back(std::move(p));
  }

  Packet take_at(std::size_t i) {
    Packet p = std::move(packets_[i]);
    packets_.erase(packets_.begin() + static_cast<std::ptrdiff_t>(i));
    auto it = per_conn_.find(p.conn);
    if (--it->second == 0) per_conn_.erase(it);
    return p;
  }

  QueueConfig cfg_;
  std::optional<sim::RngStream> rng_;
  std::deque<Packet> packets_;
  std::map<ConnId, std::size_t> per_conn_;  // only non-empty classes
  ConnId last_served_ = -1;
  std::uint64_t drops_ = 0;
  std::uint64_t marks_ = 0;
  std::uint64_t accepted_ = 0;
};

/// Builds the choke packet a queue sends back to the source of a dropped
/// data packet, or nothing when the queue does not emit chokes. Chokes are
/// fire-and-forget: a dropped choke is never regenerated.
inline std::optional<Packet> emit_choke(const QueueConfig& cfg, const Packet& victim,
                                        NodeId at_node, std::uint64_t id, double size_bits,
                                        double now) {
  if (!cfg.choke_on_drop || victim.kind != PacketKind::data) return std::nullopt;
  Packet c;
  c.id = id;
  c.conn = victim.conn;
  c.seq = victim.seq;
  c.size_bits = size_bits;
  c.kind = PacketKind::choke;
  c.src = at_node;
  c.dst = victim.src;
  c.first_sent_at = now;
  c.sent_at = now;
  c.congested_node = at_node;
  return c;
}

}  // namespace congestion_lab::net

#endif  // CONGESTION_LAB_NET_PORT_QUEUE_HPP
