#ifndef CONGESTION_LAB_TRANSPORT_RECEIVER_HPP
#define CONGESTION_LAB_TRANSPORT_RECEIVER_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string_view>

#include "congestion_lab/net/packet.hpp"

namespace congestion_lab::transport {

enum class CachePolicy : std::uint8_t { cache, discard };

inline std::string_view to_string(CachePolicy c) { return c == CachePolicy::cache ? "on" : "off"; }

struct ReceiverConfig {
  CachePolicy caching = CachePolicy::cache;
  int delayed_ack_every = 1;
};

struct AckDecision {
  std::int64_t ack_no = 0;
  bool echoed_bit = false;
};

struct DeliverResult {
  std::optional<AckDecision> ack;
  bool unique = false;     // first time this sequence number was accepted
  bool duplicate = false;  // already delivered or already cached
};

/// Receiving half of a connection: cumulative acks, optional out-of-order
/// cache, and an ack every d-th in-order delivery. Out-of-order and
/// duplicate arrivals are acked immediately. Each ack echoes the OR of the
/// congestion bits seen since the previous ack.
class Receiver {
public:
  explicit Receiver(ReceiverConfig cfg = {}) : cfg_(cfg) {
    if (cfg_.delayed_ack_every < 1) throw std::invalid_argument("ack_every must be >= 1");
  }

  std::int64_t cumulative() const { return cumulative_; }
  const std::set<std::int64_t>& buffered() const { return buffered_; }

  DeliverResult deliver(const net::Packet& p) {
    if (p.kind != net::PacketKind::data) throw std::logic_error("receiver got a non-data packet");
    pending_bit_ = pending_bit_ || p.congestion_bit;
    DeliverResult r;

    if (p.seq <= cumulative_ || buffered_.count(p.seq) != 0) {
      r.duplicate = true;
      r.ack = flush();
      return r;
    }
    if (p.seq == cumulative_ + 1) {
      ++cumulative_;
      if (cfg_.caching == CachePolicy::cache) {
        while (!buffered_.empty() && *buffered_.begin() == cumulative_ + 1) {
          buffered_.erase(buffered_.begin());
          ++cumulative_;
        }
      }
      r.unique = true;
      if (++deliverable_since_ack_ >= cfg_.delayed_ack_every) r.ack = flush();
      return r;
    }
    if (cfg_.caching == CachePolicy::cache) {
      buffered_.insert(p.seq);
      r.unique = true;
    }
    r.ack = flush();
    return r;
  }

private:
  AckDecision flush() {
    AckDecision a{cumulative_, pending_bit_};
    pending_bit_ = false;
    deliverable_since_ack_ = 0;
    return a;
  }

  ReceiverConfig cfg_;
  std::int64_t cumulative_ = 0;
  std::set<std::int64_t> buffered_;
  int deliverable_since_ack_ = 0;
  bool pending_bit_ = false;
};

}  // namespace congestion_lab::transport

#endif  // CONGESTION_LAB_TRANSPORT_RECEIVER_HPP
