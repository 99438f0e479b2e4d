#ifndef CONGESTION_LAB_TRANSPORT_RTT_ESTIMATOR_HPP
#define CONGESTION_LAB_TRANSPORT_RTT_ESTIMATOR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace congestion_lab::transport {

/// Smoothed round-trip mean and mean deviation.
struct RttEstimator {
  double alpha = 0.125;
  double beta = 0.25;
  double k = 4.0;
  double srtt = 0.0;
  double rttvar = 0.0;
  bool initialized = false;

  double rto() const { return srtt + k * rttvar; }
};

/// First sample: srtt = s, rttvar = s / 2. Afterwards the deviation is
/// updated against the old mean, then the mean itself.
inline RttEstimator rtt_update(RttEstimator est, double sample) {
  if (!(sample > 0.0)) throw std::invalid_argument("rtt sample must be positive");
  if (!est.initialized) {
    est.srtt = sample;
    est.rttvar = sample / 2.0;
    est.initialized = true;
    return est;
  }
  est.rttvar = (1.0 - est.beta) * est.rttvar + est.beta * std::abs(est.srtt - sample);
  est.srtt = (1.0 - est.alpha) * est.srtt + est.alpha * sample;
  return est;
}

enum class RtoMode : std::uint8_t { fixed, adaptive };

inline std::string_view to_string(RtoMode m) { return m == RtoMode::fixed ? "fixed" : "adaptive"; }

struct RtoPolicy {
  RtoMode mode = RtoMode::adaptive;
  double initial_s = 1.0;
  double backoff_factor = 2.0;
  double cap_multiple = 64.0;  // backed-off RTO never exceeds this times initial_s
  double min_s = 0.0;          // floor under the adaptive estimate; 0 = none
};

/// Retransmission timeout source. Fixed mode always returns the initial
/// value and never backs off. Adaptive mode follows the estimator and
/// doubles on each timeout until the next valid sample.
class RtoClock {
public:
  explicit RtoClock(RtoPolicy policy = {}) : policy_(policy) {
    if (!(policy_.initial_s > 0.0)) throw std::invalid_argument("initial rto must be positive");
  }

  const RtoPolicy& policy() const { return policy_; }
  const RttEstimator& estimator() const { return est_; }
  double backoff() const { return backoff_; }

  double current() const {
    if (policy_.mode == RtoMode::fixed) return policy_.initial_s;
    const double base = est_.initialized ? std::max(est_.rto(), policy_.min_s) : policy_.initial_s;
    const double cap = std::max(base, policy_.cap_multiple * policy_.initial_s);
    return std::min(base * backoff_, cap);
  }

  /// Karn gate: samples from retransmitted packets are ignored. Returns
  /// whether the sample was applied.
  bool observe(double sample, bool from_retransmission) {
    if (from_retransmission) return false;
    est_ = rtt_update(est_, sample);
    backoff_ = 1.0;
    return true;
  }

  void on_timeout() {
    if (policy_.mode == RtoMode::fixed) return;
    const double limit = policy_.cap_multiple;
    backoff_ = std::min(backoff_ * policy_.backoff_factor, std::max(1.0, limit));
  }

private:
  RtoPolicy policy_;
  RttEstimator est_;
  double backoff_ = 1.0;
};

}  // namespace congestion_lab::transport

#endif  // CONGESTION_LAB_TRANSPORT_RTT_ESTIMATOR_HPP
