#pragma once

#include <cstdint>
#include <random>

namespace kronstab {

/// splitmix64 step; used to derive independent per-sample seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Seeded generator with a portable bounded-integer draw (the standard
/// distributions are implementation-defined, which would break replay).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound) by rejection sampling; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % bound;
  }

  /// Uniform in [lo, hi].
  long uniform(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace kronstab
