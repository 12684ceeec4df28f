#pragma once

#include <cstdint>
#include <random>

namespace dcpgen {

/// Seed used when none is given. README examples rely on it.
inline constexpr std::uint64_t kDefaultSeed = 0x5eed2012ULL;

/// Deterministic pseudo-random stream.
///
/// A stream is identified by (seed, stream id); the two are mixed before
/// seeding the engine, so streams 0, 1, 2, ... of one seed are unrelated
/// sequences. Worker threads and per-sample draws each get their own id.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe to take the logarithm of.
  double uniform_positive() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). Rejection from the enclosing power of
  /// two, so there is no modulo bias. bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace dcpgen
