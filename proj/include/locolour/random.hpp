#pragma once

#include <cstdint>
#include <random>

namespace locolour {

/// Seedable generator with a pinned, platform-independent output sequence:
/// std::mt19937_64 (whose sequence the C++ standard fixes) seeded with the
/// 64-bit seed, with bounded draws by rejection sampling. std::*_distribution
/// is avoided because its output differs between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform in [lo, hi], inclusive.
  std::int64_t between(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace locolour
