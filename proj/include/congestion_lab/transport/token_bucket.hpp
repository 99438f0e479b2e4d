#ifndef CONGESTION_LAB_TRANSPORT_TOKEN_BUCKET_HPP
#define CONGESTION_LAB_TRANSPORT_TOKEN_BUCKET_HPP

#include <algorithm>
#include <stdexcept>

namespace congestion_lab::transport {

struct AdmitDecision {
  bool send_now = false;
  double earliest_s = 0.0;  // meaningful when !send_now
};

/// Token bucket in bits: fills at `rate_bps` up to `depth_bits`, starts full.
class TokenBucket {
public:
  TokenBucket(double rate_bps, double depth_bits, double now = 0.0)
      : rate_(rate_bps), depth_(depth_bits), tokens_(depth_bits), last_(now) {
    if (!(rate_ > 0.0)) throw std::invalid_argument("rate must be positive");
    if (!(depth_ > 0.0)) throw std::invalid_argument("burst must be positive");
  }

  double rate() const { return rate_; }
  double depth() const { return depth_; }
  double tokens(double now) {
    refill(now);
    return tokens_;
  }

  AdmitDecision admit(double size_bits, double now) {
    if (size_bits > depth_) throw std::invalid_argument("packet larger than the bucket depth can never be admitted");
    refill(now);
    // Tolerance keeps a wake-up at exactly the computed time from missing by
    // one rounding step.
    if (tokens_ + 1e-9 * size_bits >= size_bits) {
      tokens_ = std::max(0.0, tokens_ - size_bits);
      return AdmitDecision{true, now};
    }
    return AdmitDecision{false, now + (size_bits - tokens_) / rate_};
  }

private:
  void refill(double now) {
    if (now > last_) {
      tokens_ = std::min(depth_, tokens_ + (now - last_) * rate_);
      last_ = now;
    }
  }

  double rate_;
  double depth_;
  double tokens_;
  double last_;
};

}  // namespace congestion_lab::transport

#endif  // CONGESTION_LAB_TRANSPORT_TOKEN_BUCKET_HPP
