#ifndef CONGESTION_LAB_SIM_RNG_HPP
#define CONGESTION_LAB_SIM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace congestion_lab::sim {

/// Deterministic pseudo-random stream.
///
/// Every stochastic entity (a Poisson source, a random-drop queue) owns its
/// own stream keyed by (seed, stream_id). The generator is std::mt19937_64,
/// seeded through std::seed_seq with the four 32-bit halves of seed and
/// stream id. Both algorithms are fully specified by the standard, so the
/// output is identical on every conforming implementation. Uniform reals
/// are built from the top 53 bits of each draw rather than through
/// std::uniform_real_distribution, whose algorithm is implementation-defined.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform real in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Exponential variate with the given mean: -mean * ln(1 - u).
  double exponential(double mean) { return -mean * std::log1p(-uniform()); }

  /// Uniform integer in [0, n). Uses floor(u * n); n must be > 0.
  std::uint64_t index(std::uint64_t n) {
    auto i = static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

private:
  static std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    return std::mt19937_64(seq);
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace congestion_lab::sim

#endif  // CONGESTION_LAB_SIM_RNG_HPP
