#ifndef CONGESTION_LAB_CC_CONTROLLER_HPP
#define CONGESTION_LAB_CC_CONTROLLER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace congestion_lab::cc {

enum class Scheme : std::uint8_t {
  none,  // rate-based sources; the window is not used
  static_window,
  cute,
  linear,
  slow_start,
  binary_feedback,
  delay_based,
};

inline std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::none: return "none";
    case Scheme::static_window: return "static";
    case Scheme::cute: return "cute";
    case Scheme::linear: return "linear";
    case Scheme::slow_start: return "slow-start";
    case Scheme::binary_feedback: return "binary-feedback";
    case Scheme::delay_based: return "delay-based";
  }
  return "unknown";
}

inline std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::none, Scheme::static_window, Scheme::cute, Scheme::linear,
                   Scheme::slow_start, Scheme::binary_feedback, Scheme::delay_based}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

/// Scheme constants. Every field is a packet count or a pure ratio; none is
/// denominated in time.
struct SchemeParams {
  double initial_window = 1.0;
  double max_window = 10000.0;
  std::int64_t linear_acks = 8;       // acked packets per +1 (linear scheme)
  double feedback_threshold = 0.5;    // set-bit fraction that triggers a decrease
  double decrease_factor = 0.875;     // multiplicative decrease (feedback, delay)
  double increase = 1.0;              // additive increase (feedback, delay)
  double delay_ratio = 1.5;           // srtt / rtt_min above which delay-based decreases
  double choke_factor = 0.5;
  bool choke_response = true;

  bool operator==(const SchemeParams&) const = default;
};

enum class ParamUnit : std::uint8_t { packets, count, ratio, flag };

struct ParamDescriptor {
  std::string_view name;
  ParamUnit unit;
};

/// Parameter schema per scheme, used to check that no scheme carries a
/// time-denominated constant.
inline std::vector<ParamDescriptor> parameter_schema(Scheme s) {
  std::vector<ParamDescriptor> out{{"initial_window", ParamUnit::packets},
                                   {"max_window", ParamUnit::packets},
                                   {"choke_factor", ParamUnit::ratio},
                                   {"choke_response", ParamUnit::flag}};
  switch (s) {
    case Scheme::linear: out.push_back({"linear_acks", ParamUnit::count}); break;
    case Scheme::binary_feedback:
      out.push_back({"feedback_threshold", ParamUnit::ratio});
      out.push_back({"decrease_factor", ParamUnit::ratio});
      out.push_back({"increase", ParamUnit::packets});
      break;
    case Scheme::delay_based:
      out.push_back({"delay_ratio", ParamUnit::ratio});
      out.push_back({"decrease_factor", ParamUnit::ratio});
      out.push_back({"increase", ParamUnit::packets});
      break;
    default: break;
  }
  return out;
}

/// Counters for the control-frequency audit.
struct ControlAudit {
  std::int64_t adjustments = 0;  // every window adjustment, whatever the trigger
  std::int64_t acked = 0;
  std::int64_t timeouts = 0;
  std::int64_t chokes_received = 0;
  std::int64_t chokes_applied = 0;
  double min_window = 0.0;
  double max_window = 0.0;
};

struct ControllerState {
  Scheme scheme = Scheme::static_window;
  SchemeParams params;
  double window = 1.0;
  std::int64_t ack_counter = 0;
  double ssthresh = 0.0;
  std::int64_t bits_seen = 0;
  std::int64_t bits_set = 0;
  std::optional<double> rtt_min;
  std::int64_t choke_ack_counter = 0;
  bool choke_armed = true;
  ControlAudit audit;

  /// Effective outstanding limit.
  std::int64_t limit() const { return static_cast<std::int64_t>(std::floor(window)); }
};

namespace detail {

inline void set_window(ControllerState& c, double w) {
  c.window = std::clamp(w, 1.0, std::max(1.0, c.params.max_window));
  c.audit.min_window = std::min(c.audit.min_window, c.window);
  c.audit.max_window = std::max(c.audit.max_window, c.window);
}

// +1 per floor(window) acked packets, excess acks carried over.
inline void parabolic_increase(ControllerState& c, std::int64_t acked) {
  c.ack_counter += acked;
  while (c.ack_counter >= c.limit() && c.window < c.params.max_window) {
    c.ack_counter -= c.limit();
    set_window(c, c.window + 1.0);
    ++c.audit.adjustments;
  }
}

}  // namespace detail

inline ControllerState make_controller(Scheme scheme, const SchemeParams& params = {}) {
  if (!(params.max_window >= 1.0)) throw std::invalid_argument("max_window must be >= 1");
  if (!(params.initial_window >= 1.0)) throw std::invalid_argument("initial window must be >= 1");
  if (params.linear_acks < 1) throw std::invalid_argument("linear_acks must be >= 1");
  ControllerState c;
  c.scheme = scheme;
  c.params = params;
  c.window = std::min(params.initial_window, params.max_window);
  c.ssthresh = params.max_window;
  c.audit.min_window = c.window;
  c.audit.max_window = c.window;
  return c;
}

// --- CUTE: window to one on timeout, +1 per window of acks -----------------

inline ControllerState cute_on_timeout(ControllerState c) {
  detail::set_window(c, 1.0);
  c.ack_counter = 0;
  ++c.audit.adjustments;
  return c;
}

inline ControllerState cute_on_ack(ControllerState c, std::int64_t acked = 1) {
  detail::parabolic_increase(c, acked);
  return c;
}

// --- Linear: +1 per `linear_acks` acked packets -----------------------------

inline ControllerState linear_on_ack(ControllerState c, std::int64_t acked = 1) {
  c.ack_counter += acked;
  while (c.ack_counter >= c.params.linear_acks && c.window < c.params.max_window) {
    c.ack_counter -= c.params.linear_acks;
    detail::set_window(c, c.window + 1.0);
    ++c.audit.adjustments;
  }
  return c;
}

// --- Slow-start: remember half the window, +1 per ack below it --------------

inline ControllerState slowstart_on_timeout(ControllerState c) {
  c.ssthresh = std::max(2.0, c.window / 2.0);
  detail::set_window(c, 1.0);
  c.ack_counter = 0;
  ++c.audit.adjustments;
  return c;
}

inline ControllerState slowstart_on_ack(ControllerState c, std::int64_t acked = 1) {
  for (std::int64_t i = 0; i < acked; ++i) {
    if (c.window < c.ssthresh) {
      if (c.window >= c.params.max_window) break;
      detail::set_window(c, c.window + 1.0);
      c.ack_counter = 0;
      ++c.audit.adjustments;
    } else {
      detail::parabolic_increase(c, 1);
    }
  }
  return c;
}

// --- Binary feedback: one decision per window of echoed bits ----------------

inline ControllerState binary_feedback_update(ControllerState c, bool echoed_bit) {
  ++c.bits_seen;
  if (echoed_bit) ++c.bits_set;
  if (c.bits_seen < c.limit()) return c;
  const double fraction = static_cast<double>(c.bits_set) / static_cast<double>(c.bits_seen);
  const double before = c.window;
  if (fraction >= c.params.feedback_threshold) {
    detail::set_window(c, c.window * c.params.decrease_factor);
  } else {
    detail::set_window(c, c.window + c.params.increase);
  }
  if (c.window != before) ++c.audit.adjustments;
  c.bits_seen = 0;
  c.bits_set = 0;
  return c;
}

// --- Delay-based: implicit feedback from srtt relative to the minimum -------

inline ControllerState delay_based_update(ControllerState c, double srtt) {
  if (!c.rtt_min || !(*c.rtt_min > 0.0)) return c;
  const double before = c.window;
  if (srtt / *c.rtt_min > c.params.delay_ratio) {
    detail::set_window(c, c.window * c.params.decrease_factor);
  } else {
    detail::set_window(c, c.window + c.params.increase);
  }
  if (c.window != before) ++c.audit.adjustments;
  return c;
}

// --- Choke response, stackable on any scheme ---------------------------------

inline ControllerState on_choke(ControllerState c) {
  ++c.audit.chokes_received;
  if (!c.params.choke_response || !c.choke_armed) return c;
  detail::set_window(c, c.window * c.params.choke_factor);
  c.choke_armed = false;
  c.choke_ack_counter = 0;
  ++c.audit.chokes_applied;
  ++c.audit.adjustments;
  return c;
}

// --- Dispatch ----------------------------------------------------------------

/// Feeds `acked` newly acknowledged packets (all carrying the same echoed
/// bit) to the controller. `srtt` is the sender's current smoothed RTT, if
/// any.
inline ControllerState handle_ack(ControllerState c, std::int64_t acked, bool echoed_bit,
                                  std::optional<double> srtt) {
  if (acked <= 0) return c;
  c.audit.acked += acked;
  switch (c.scheme) {
    case Scheme::none:
    case Scheme::static_window: break;
    case Scheme::cute: c = cute_on_ack(std::move(c), acked); break;
    case Scheme::linear: c = linear_on_ack(std::move(c), acked); break;
    case Scheme::slow_start: c = slowstart_on_ack(std::move(c), acked); break;
    case Scheme::binary_feedback:
      for (std::int64_t i = 0; i < acked; ++i) c = binary_feedback_update(std::move(c), echoed_bit);
      break;
    case Scheme::delay_based:
      c.ack_counter += acked;
      if (c.ack_counter >= c.limit()) {
        c.ack_counter = 0;
        if (srtt) c = delay_based_update(std::move(c), *srtt);
      }
      break;
  }
  if (!c.choke_armed) {
    c.choke_ack_counter += acked;
    if (c.choke_ack_counter >= c.limit()) c.choke_armed = true;
  }
  return c;
}

inline ControllerState handle_timeout(ControllerState c) {
  ++c.audit.timeouts;
  switch (c.scheme) {
    case Scheme::cute:
    case Scheme::linear: return cute_on_timeout(std::move(c));
    case Scheme::slow_start: return slowstart_on_timeout(std::move(c));
    default: return c;
  }
}

inline ControllerState handle_rtt_sample(ControllerState c, double sample) {
  if (sample > 0.0 && (!c.rtt_min || sample < *c.rtt_min)) c.rtt_min = sample;
  return c;
}

/// Control-frequency audit: total adjustments may not exceed
/// acked / floor(min window) plus one per timeout or applied choke.
inline bool control_frequency_ok(const ControlAudit& a) {
  const double floor_min = std::max(1.0, std::floor(a.min_window));
  const double bound = static_cast<double>(a.acked) / floor_min +
                       static_cast<double>(a.timeouts + a.chokes_applied);
  return static_cast<double>(a.adjustments) <= bound + 1e-9;
}

}  // namespace congestion_lab::cc

#endif  // CONGESTION_LAB_CC_CONTROLLER_HPP
