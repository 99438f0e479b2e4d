#ifndef CONGESTION_LAB_SIM_SIMULATOR_HPP
#define CONGESTION_LAB_SIM_SIMULATOR_HPP

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace congestion_lab::sim {

enum class EventKind : std::uint8_t {
  packet_arrival,
  transmission_complete,
  timer_expiry,
  source_wakeup,
};

inline std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::packet_arrival: return "packet-arrival";
    case EventKind::transmission_complete: return "transmission-complete";
    case EventKind::timer_expiry: return "timer-expiry";
    case EventKind::source_wakeup: return "source-wakeup";
  }
  return "unknown";
}

inline constexpr std::uint32_t kNoNode = std::numeric_limits<std::uint32_t>::max();
inline constexpr std::int64_t kNone = -1;

/// Descriptive part of an event. Only used for tracing and audits; the
/// simulator never interprets it.
struct EventTag {
  EventKind kind = EventKind::source_wakeup;
  std::uint32_t node = kNoNode;
  std::int64_t conn = kNone;
  std::int64_t seq = kNone;
  std::string detail;
};

/// What the trace observer receives for every processed event.
struct EventRecord {
  double time = 0.0;
  std::uint64_t order = 0;  // insertion counter, the tie-break key
  const EventTag* tag = nullptr;
};

struct EventHandle {
  std::uint64_t id = 0;
  bool valid() const { return id != 0; }
};

class SchedulingError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

class EventBudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Single-threaded discrete-event core. Events fire in (time, insertion
/// counter) order; the clock never decreases.
class Simulator {
public:
  using Action = std::function<void()>;
  using Observer = std::function<void(const EventRecord&)>;

  double now() const { return now_; }
  std::uint64_t processed() const { return processed_; }
  std::size_t pending() const { return live_.size(); }

  void set_observer(Observer obs) { observer_ = std::move(obs); }
  void set_event_budget(std::uint64_t max_events) { budget_ = max_events; }

  EventHandle schedule(double at, EventTag tag, Action action) {
    if (!(at >= now_)) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "event scheduled in the past: at=%.9f now=%.9f", at, now_);
      throw SchedulingError(buf);
    }
    const std::uint64_t id = ++counter_;
    heap_.push_back(Entry{at, id, std::move(tag), std::move(action)});
    live_.insert(id);
    std::push_heap(heap_.begin(), heap_.end(), Later{});
    return EventHandle{id};
  }

  EventHandle schedule_in(double delay, EventTag tag, Action action) {
    return schedule(now_ + delay, std::move(tag), std::move(action));
  }

  /// Cancelling an already-fired or already-cancelled handle is a no-op.
  void cancel(EventHandle h) {
    if (h.valid() && live_.erase(h.id) != 0) cancelled_.insert(h.id);
  }

  /// Halts the current run_until() after the event being processed.
  void stop() { stop_requested_ = true; }
  bool stopped() const { return stopped_; }

  /// Processes every event with fire_time <= t_end. Afterwards the clock is
  /// t_end, or the time of the event that called stop().
  std::uint64_t run_until(double t_end) {
    if (t_end < now_) throw SchedulingError("run_until target precedes the clock");
    std::uint64_t count = 0;
    stop_requested_ = false;
    stopped_ = false;
    while (!heap_.empty() && heap_.front().time <= t_end) {
      std::pop_heap(heap_.begin(), heap_.end(), Later{});
      Entry e = std::move(heap_.back());
      heap_.pop_back();
      if (auto it = cancelled_.find(e.id); it != cancelled_.end()) {
        cancelled_.erase(it);
        continue;
      }
      live_.erase(e.id);
      now_ = e.time;
      if (budget_ != 0 && processed_ >= budget_) {
        throw EventBudgetExceeded("simulation exceeded its event budget of " +
                                  std::to_string(budget_) + " events");
      }
      ++processed_;
      ++count;
      if (observer_) observer_(EventRecord{e.time, e.id, &e.tag});
      e.action();
      if (stop_requested_) {
        stopped_ = true;
        return count;
      }
    }
    now_ = t_end;
    return count;
  }

private:
  struct Entry {
    double time;
    std::uint64_t id;
    EventTag tag;
    Action action;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.id > b.id;
    }
  };

  double now_ = 0.0;
  std::uint64_t counter_ = 0;
  std::uint64_t processed_ = 0;
  std::uint64_t budget_ = 0;
  bool stop_requested_ = false;
  bool stopped_ = false;
  std::vector<Entry> heap_;
  std::unordered_set<std::uint64_t> live_;
  std::unordered_set<std::uint64_t> cancelled_;
  Observer observer_;
};

/// Formats one trace line: time<TAB>kind<TAB>node<TAB>conn<TAB>seq<TAB>detail.
/// Time uses nine fixed decimals; absent fields print as "-".
inline std::string format_trace_line(const EventRecord& rec,
                                     const std::vector<std::string>& node_names) {
  const EventTag& tag = *rec.tag;
  char head[48];
  std::snprintf(head, sizeof head, "%.9f\t", rec.time);
  std::string line = head;
  line += to_string(tag.kind);
  line += '\t';
  line += tag.node < node_names.size() ? node_names[tag.node] : std::string("-");
  line += '\t';
  line += tag.conn == kNone ? std::string("-") : std::to_string(tag.conn);
  line += '\t';
  line += tag.seq == kNone ? std::string("-") : std::to_string(tag.seq);
  line += '\t';
  line += tag.detail.empty() ? std::string("-") : tag.detail;
  line += '\n';
  return line;
}

}  // namespace congestion_lab::sim

#endif  // CONGESTION_LAB_SIM_SIMULATOR_HPP
