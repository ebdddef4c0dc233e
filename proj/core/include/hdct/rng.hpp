#pragma once

#include <cstdint>

namespace hdct {

/// Splittable counter-derived random stream: the state is seeded by hashing
/// (master_seed, a, b) through a SplitMix64 avalanche chain, then advanced
/// with xoshiro256++. Streams for distinct (a, b) pairs are statistically
/// independent and reproducible regardless of thread scheduling.
///
/// Stream id conventions used by the simulation engine:
///   a = replication index, b = group index (0 or 1) for data streams;
///   b = kCovarianceStream for covariance parameter draws.
class RngStream {
 public:
  static constexpr std::uint64_t kCovarianceStream = 0xC0FFEEULL;

  RngStream(std::uint64_t master_seed, std::uint64_t a, std::uint64_t b);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1), 53 usable bits.
  double uniform();

  /// Standard normal via Marsaglia's polar method; one draw is cached, so a
  /// stream consumes uniforms in a fixed, schedule-independent order.
  double normal();

  /// Human-readable id for error provenance.
  std::uint64_t stream_a() const { return a_; }
  std::uint64_t stream_b() const { return b_; }

 private:
  std::uint64_t state_[4];
  std::uint64_t a_;
  std::uint64_t b_;
  double spare_ = 0;
  bool has_spare_ = false;
};

/// SplitMix64 avalanche chain over (master_seed, a, b); also usable directly
/// when a derived 64-bit seed is all that is needed (covariance builders).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t a,
                          std::uint64_t b);

}  // namespace hdct
