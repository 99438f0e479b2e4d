#ifndef CONGESTION_LAB_NET_LINK_HPP
#define CONGESTION_LAB_NET_LINK_HPP

#include <stdexcept>

#include "congestion_lab/net/packet.hpp"

namespace congestion_lab::net {

/// One direction of a point-to-point link. Store-and-forward: a packet is
/// serialized at `bandwidth_bps`, then propagates for `prop_delay_s`.
struct Link {
  NodeId from = 0;
  NodeId to = 0;
  double bandwidth_bps = 0.0;
  double prop_delay_s = 0.0;

  void validate() const {
    if (!(bandwidth_bps > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    if (!(prop_delay_s >= 0.0)) throw std::invalid_argument("propagation delay must be non-negative");
  }
};

/// Serialization time only; propagation delay is added at hand-off.
inline double transmission_time(const Packet& p, const Link& l) {
  return p.size_bits / l.bandwidth_bps;
}

}  // namespace congestion_lab::net

#endif  // CONGESTION_LAB_NET_LINK_HPP
