#ifndef CONGESTION_LAB_TRANSPORT_SENDER_HPP
#define CONGESTION_LAB_TRANSPORT_SENDER_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "congestion_lab/cc/controller.hpp"
#include "congestion_lab/net/packet.hpp"
#include "congestion_lab/transport/rtt_estimator.hpp"
#include "congestion_lab/transport/token_bucket.hpp"

namespace congestion_lab::transport {

enum class RetxPolicy : std::uint8_t { go_back_n, retransmit_first };
enum class FlowMode : std::uint8_t { window, rate };

inline std::string_view to_string(RetxPolicy p) {
  return p == RetxPolicy::go_back_n ? "gbn" : "first";
}
inline std::string_view to_string(FlowMode m) { return m == FlowMode::window ? "window" : "rate"; }

struct SenderConfig {
  net::ConnId conn = 0;
  net::NodeId src = 0;
  net::NodeId dst = 0;
  double packet_bits = 8000.0;
  std::optional<std::int64_t> total_packets;  // nullopt: never runs out of data
  FlowMode mode = FlowMode::window;
  double rate_bps = 0.0;    // rate mode
  double burst_bits = 0.0;  // rate mode
  RetxPolicy retx = RetxPolicy::go_back_n;
  RtoPolicy rto;
  cc::Scheme scheme = cc::Scheme::static_window;
  cc::SchemeParams params;
};

struct SentRecord {
  double first_sent_at = 0.0;
  double sent_at = 0.0;
  bool retransmitted = false;
};

/// Result of asking a sender for its next packet.
struct Pull {
  std::optional<net::Packet> packet;
  std::optional<double> retry_at;  // rate mode: when tokens will suffice
};

/// Sending half of a connection. Sequence numbers start at 1; the
/// cumulative ack number is the highest in-order sequence delivered.
///
/// New data is released only while fewer than floor(window) packets are
/// outstanding (window mode) or when the token bucket admits it (rate mode).
/// Retransmissions of packets that are already outstanding bypass the
/// window; they are still paced by the bucket in rate mode.
class Sender {
public:
  explicit Sender(SenderConfig cfg)
      : cfg_(cfg), ctrl_(cc::make_controller(cfg.scheme, cfg.params)), rto_(cfg.rto) {
    if (!(cfg_.packet_bits > 0.0)) throw std::invalid_argument("packet size must be positive");
    if (cfg_.total_packets && *cfg_.total_packets < 0) throw std::invalid_argument("file size must be >= 0");
    if (cfg_.mode == FlowMode::rate) {
      bucket_.emplace(cfg_.rate_bps, cfg_.burst_bits);
      if (cfg_.packet_bits > cfg_.burst_bits) {
        throw std::invalid_argument("packet size exceeds the rate burst; it can never be admitted");
      }
    }
  }

  const SenderConfig& config() const { return cfg_; }
  const cc::ControllerState& controller() const { return ctrl_; }
  const RtoClock& rto_clock() const { return rto_; }
  double window() const { return ctrl_.window; }
  std::int64_t limit() const { return ctrl_.limit(); }
  std::int64_t next_seq() const { return next_seq_; }
  std::int64_t highest_acked() const { return highest_acked_; }
  std::size_t outstanding_count() const { return outstanding_.size(); }
  const std::map<std::int64_t, SentRecord>& outstanding() const { return outstanding_; }
  const std::set<std::int64_t>& retransmit_queue() const { return retx_queue_; }
  std::int64_t retransmissions() const { return retransmissions_; }
  std::int64_t transmissions() const { return transmissions_; }
  std::int64_t duplicate_acks() const { return dup_acks_; }
  std::int64_t window_violations() const { return window_violations_; }
  std::int64_t karn_violations() const { return karn_violations_; }
  std::int64_t rtt_samples() const { return rtt_samples_; }

  bool finished() const { return cfg_.total_packets && highest_acked_ >= *cfg_.total_packets; }

  bool has_new_data() const { return !cfg_.total_packets || next_seq_ <= *cfg_.total_packets; }

  /// Returns the next packet to transmit now, if any. `next_id` supplies
  /// globally unique packet ids and is advanced only when a packet is
  /// produced.
  Pull pull(double now, std::uint64_t& next_id) {
    std::optional<std::int64_t> seq;
    bool is_retx = false;
    while (!retx_queue_.empty()) {
      const std::int64_t s = *retx_queue_.begin();
      if (outstanding_.count(s) != 0) {
        seq = s;
        is_retx = true;
        break;
      }
      retx_queue_.erase(retx_queue_.begin());
    }
    if (!seq && has_new_data()) {
      const bool window_open = cfg_.mode == FlowMode::rate ||
                               static_cast<std::int64_t>(outstanding_.size()) < ctrl_.limit();
      if (window_open) seq = next_seq_;
    }
    if (!seq) return {};

    if (bucket_) {
      const AdmitDecision d = bucket_->admit(cfg_.packet_bits, now);
      if (!d.send_now) return Pull{std::nullopt, d.earliest_s};
    }

    net::Packet p;
    p.id = next_id++;
    p.conn = cfg_.conn;
    p.seq = *seq;
    p.size_bits = cfg_.packet_bits;
    p.kind = net::PacketKind::data;
    p.src = cfg_.src;
    p.dst = cfg_.dst;
    p.sent_at = now;
    ++transmissions_;
    if (is_retx) {
      retx_queue_.erase(*seq);
      SentRecord& rec = outstanding_.at(*seq);
      rec.sent_at = now;
      rec.retransmitted = true;
      p.first_sent_at = rec.first_sent_at;
      p.retransmission = true;
      ++retransmissions_;
    } else {
      if (cfg_.mode == FlowMode::window &&
          static_cast<std::int64_t>(outstanding_.size()) >= ctrl_.limit()) {
        ++window_violations_;
      }
      outstanding_.emplace(*seq, SentRecord{now, now, false});
      p.first_sent_at = now;
      ++next_seq_;
    }
    return Pull{p, std::nullopt};
  }

  /// Processes a cumulative ack. Returns how many new packets the window
  /// now permits (0 for duplicates).
  std::int64_t on_ack(std::int64_t ack_no, bool echoed_bit, double now) {
    if (ack_no <= highest_acked_) {
      ++dup_acks_;
      return 0;
    }
    if (ack_no >= next_seq_) throw std::logic_error("ack for data that was never sent");

    const std::int64_t cleared = ack_no - highest_acked_;
    if (auto it = outstanding_.find(ack_no); it != outstanding_.end()) {
      const SentRecord& rec = it->second;
      if (rto_.observe(now - rec.sent_at, rec.retransmitted)) {
        ++rtt_samples_;
        if (rec.retransmitted) ++karn_violations_;
        ctrl_ = cc::handle_rtt_sample(std::move(ctrl_), now - rec.sent_at);
      }
    }
    outstanding_.erase(outstanding_.begin(), outstanding_.upper_bound(ack_no));
    retx_queue_.erase(retx_queue_.begin(), retx_queue_.upper_bound(ack_no));
    highest_acked_ = ack_no;

    std::optional<double> srtt;
    if (rto_.estimator().initialized) srtt = rto_.estimator().srtt;
    ctrl_ = cc::handle_ack(std::move(ctrl_), cleared, echoed_bit, srtt);
    return permits();
  }

  /// Timer expiry for `seq`. Returns the sequence numbers queued for
  /// retransmission; empty for a stale timer.
  std::vector<std::int64_t> on_timeout(std::int64_t seq) {
    if (seq <= highest_acked_ || outstanding_.count(seq) == 0) return {};
    std::vector<std::int64_t> resend;
    if (cfg_.retx == RetxPolicy::go_back_n) {
      for (auto it = outstanding_.lower_bound(seq); it != outstanding_.end(); ++it) {
        resend.push_back(it->first);
      }
    } else {
      resend.push_back(outstanding_.begin()->first);
    }
    retx_queue_.insert(resend.begin(), resend.end());
    ctrl_ = cc::handle_timeout(std::move(ctrl_));
    rto_.on_timeout();
    return resend;
  }

  void on_choke() { ctrl_ = cc::on_choke(std::move(ctrl_)); }

  std::int64_t permits() const {
    if (cfg_.mode == FlowMode::rate) return 0;
    return std::max<std::int64_t>(0, ctrl_.limit() - static_cast<std::int64_t>(outstanding_.size()));
  }

  /// Retransmission timer for the lowest outstanding packet: its last send
  /// time plus the current RTO. No timer while that packet is waiting to be
  /// retransmitted.
  std::optional<std::int64_t> timer_seq() const {
    if (outstanding_.empty()) return std::nullopt;
    const std::int64_t lowest = outstanding_.begin()->first;
    if (retx_queue_.count(lowest) != 0) return std::nullopt;
    return lowest;
  }

  std::optional<double> timer_deadline() const {
    auto seq = timer_seq();
    if (!seq) return std::nullopt;
    return outstanding_.begin()->second.sent_at + rto_.current();
  }

private:
  SenderConfig cfg_;
  cc::ControllerState ctrl_;
  RtoClock rto_;
  std::optional<TokenBucket> bucket_;
  std::int64_t next_seq_ = 1;
  std::int64_t highest_acked_ = 0;
  std::map<std::int64_t, SentRecord> outstanding_;
  std::set<std::int64_t> retx_queue_;
  std::int64_t transmissions_ = 0;
  std::int64_t retransmissions_ = 0;
  std::int64_t dup_acks_ = 0;
  std::int64_t window_violations_ = 0;
  std::int64_t karn_violations_ = 0;
  std::int64_t rtt_samples_ = 0;
};

}  // namespace congestion_lab::transport

#endif  // CONGESTION_LAB_TRANSPORT_SENDER_HPP
