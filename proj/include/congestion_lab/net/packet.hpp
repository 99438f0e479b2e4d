#ifndef CONGESTION_LAB_NET_PACKET_HPP
#define CONGESTION_LAB_NET_PACKET_HPP

#include <cstdint>
#include <string_view>

namespace congestion_lab::net {

using NodeId = std::uint32_t;
using ConnId = std::int32_t;

enum class PacketKind : std::uint8_t { data, ack, choke };

inline std::string_view to_string(PacketKind kind) {
  switch (kind) {
    case PacketKind::data: return "data";
    case PacketKind::ack: return "ack";
    case PacketKind::choke: return "choke";
  }
  return "unknown";
}

/// A simulated packet. Acks reuse `seq` as the cumulative ack number; a
/// choke carries the id of the congested node in `congested_node`.
struct Packet {
  std::uint64_t id = 0;
  ConnId conn = 0;
  std::int64_t seq = 0;
  double size_bits = 0.0;
  PacketKind kind = PacketKind::data;
  NodeId src = 0;
  NodeId dst = 0;
  bool congestion_bit = false;
  bool echoed_bit = false;
  bool retransmission = false;
  double first_sent_at = 0.0;
  double sent_at = 0.0;
  NodeId congested_node = 0;
  bool measured = false;  // crossed the bottleneck inside the measurement window
};

}  // namespace congestion_lab::net

#endif  // CONGESTION_LAB_NET_PACKET_HPP
