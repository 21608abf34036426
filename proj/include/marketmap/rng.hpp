#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>

namespace marketmap::rng {

/// SplitMix64 generator (Steele, Lea, Flood 2014). Chosen over the standard
/// library engines because its output is fully specified, so seeded results
/// are identical on every platform, and because cheap re-seeding makes it
/// easy to derive one independent stream per (seed, replicate, asset).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in (0, 1].
  double next_unit() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller. One draw consumes two uniforms; the
  /// sine branch is discarded so the stream layout stays position-independent.
  double next_gaussian() {
    const double u1 = next_unit();
    const double u2 = next_unit();
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  /// Unbiased uniform integer in [0, n). Rejection keeps the distribution
  /// exact, which matters for reproducing permutations bit for bit.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t reject_below = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t x = next();
      if (x >= reject_below) return x % n;
    }
  }

 private:
  std::uint64_t state_;
};

namespace detail {
inline std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Derives an independent stream from a base seed and a list of keys such as
/// {replicate, asset}. Each key passes through a SplitMix64 finalizer before
/// combination so that neighbouring indices land in unrelated states.
inline SplitMix64 derive_stream(std::uint64_t seed,
                                std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = detail::mix(seed);
  for (std::uint64_t k : keys) h = detail::mix(h ^ detail::mix(k));
  return SplitMix64(h);
}

/// Fisher-Yates shuffle driven by the given stream.
template <typename T>
void shuffle(std::span<T> xs, SplitMix64& g) {
  for (std::size_t i = xs.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(g.next_below(i));
    std::swap(xs[i - 1], xs[j]);
  }
}

}  // namespace marketmap::rng
