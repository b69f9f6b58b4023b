#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

#include "multinet/errors.hpp"

namespace multinet {

/// Deterministic random source.
///
/// The standard <random> distributions are implementation-defined, so every
/// distribution used by the generators is implemented here on top of
/// mt19937_64; seeded output is identical across platforms and library
/// versions. stream() derives child generators from (seed, tag, sub) alone,
/// never from how much the parent has been consumed, so e.g. the edge stream
/// of layer l does not depend on how many layers were generated before it.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Independent child stream identified by (tag, sub).
  Rng stream(std::uint64_t tag, std::uint64_t sub = 0) const {
    return Rng(mix(mix(seed_ ^ 0x6d756c74696e6574ull, tag), sub));
  }

  std::uint64_t nextU64() { return engine_(); }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(nextU64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; the second value of each pair is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // in (0, 1], keeps the log finite
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    spare_ = radius * std::sin(kTwoPi * u2);
    has_spare_ = true;
    return radius * std::cos(kTwoPi * u2);
  }

  /// Uniform integer in [0, n); rejection sampling keeps it unbiased.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw ArgumentError("Rng::below requires n >= 1");
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    std::uint64_t draw = nextU64();
    while (draw < threshold) draw = nextU64();
    return draw % n;
  }

  /// Fisher-Yates shuffle.
  template <typename Seq>
  void shuffle(Seq& items) {
    using std::swap;
    for (std::size_t i = items.size(); i > 1; --i) {
      swap(items[i - 1], items[static_cast<std::size_t>(below(i))]);
    }
  }

 private:
  static constexpr double kTwoPi = 6.28318530717958647692;

  // splitmix64 finalizer; decorrelates nearby tags.
  static std::uint64_t mix(std::uint64_t value, std::uint64_t tag) {
    std::uint64_t z = value + 0x9e3779b97f4a7c15ull * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace multinet
