#ifndef CONGESTION_LAB_METRICS_METRICS_HPP
#define CONGESTION_LAB_METRICS_METRICS_HPP

#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace congestion_lab::metrics {

/// A resource is congested when summed demand strictly exceeds capacity.
inline bool is_congested(std::span<const double> demands_bps, double capacity_bps) {
  if (!(capacity_bps > 0.0)) throw std::invalid_argument("capacity must be positive");
  double total = 0.0;
  for (double d : demands_bps) {
    if (d < 0.0) throw std::invalid_argument("demand must be non-negative");
    total += d;
  }
  return total > capacity_bps;
}

/// (sum x)^2 / (n * sum x^2). 1 for equal shares, 1/n when one party gets
/// everything.
inline double fairness_index(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("fairness index of an empty allocation");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : xs) {
    if (x < 0.0) throw std::invalid_argument("allocations must be non-negative");
    sum += x;
    sum_sq += x * x;
  }
  if (sum_sq == 0.0) throw std::invalid_argument("fairness index of an all-zero allocation");
  return (sum * sum) / (static_cast<double>(xs.size()) * sum_sq);
}

/// throughput^exponent / delay.
inline double power(double throughput_bps, double delay_s, double exponent = 1.0) {
  if (!(delay_s > 0.0)) throw std::invalid_argument("delay must be positive");
  if (throughput_bps <= 0.0) return 0.0;
  return std::pow(throughput_bps, exponent) / delay_s;
}

struct SweepPoint {
  double param_value = 0.0;
  double offered_load = 0.0;
  double throughput_bps = 0.0;
  double mean_delay_s = 0.0;
  double power = 0.0;
};

inline SweepPoint make_sweep_point(double param_value, double offered_load, double throughput_bps,
                                   double mean_delay_s) {
  SweepPoint p{param_value, offered_load, throughput_bps, mean_delay_s, 0.0};
  if (throughput_bps > 0.0 && mean_delay_s > 0.0) p.power = power(throughput_bps, mean_delay_s);
  return p;
}

struct KneeCliff {
  double knee_load = 0.0;
  std::optional<double> cliff_load;
  std::size_t knee_index = 0;
  std::size_t peak_index = 0;
};

/// Knee: load of the maximum-power point. Cliff: the smallest load past the
/// throughput peak whose throughput is below (1 - delta) of the peak.
inline KneeCliff knee_cliff(std::span<const SweepPoint> curve, double delta = 0.1) {
  if (curve.size() < 3) throw std::invalid_argument("knee/cliff needs at least three points");
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (!(curve[i].offered_load > curve[i - 1].offered_load)) {
      throw std::invalid_argument("sweep curve must be sorted by offered load");
    }
  }
  KneeCliff out;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (curve[i].power > curve[out.knee_index].power) out.knee_index = i;
    if (curve[i].throughput_bps > curve[out.peak_index].throughput_bps) out.peak_index = i;
  }
  out.knee_load = curve[out.knee_index].offered_load;
  const double floor = (1.0 - delta) * curve[out.peak_index].throughput_bps;
  for (std::size_t i = out.peak_index + 1; i < curve.size(); ++i) {
    if (curve[i].throughput_bps < floor) {
      out.cliff_load = curve[i].offered_load;
      break;
    }
  }
  return out;
}

}  // namespace congestion_lab::metrics

#endif  // CONGESTION_LAB_METRICS_METRICS_HPP
