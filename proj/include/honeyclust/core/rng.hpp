// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_CORE_RNG_HPP
#define HONEYCLUST_CORE_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace honeyclust {

// std::uniform_*_distribution output is not pinned by the standard, so the
// helpers below derive values from raw mt19937_64 output directly. Same seed,
// same stream, on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n), unbiased via rejection. n must be > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do { v = engine_(); } while (v >= limit);
    return v % n;
  }

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * (1.0 / 9007199254740992.0);
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool chance(double p) { return uniform() < p; }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

  /// Fisher-Yates shuffle with this engine (std::shuffle ordering is not
  /// portable either).
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  /// Derives an independent child stream; used to keep per-entity randomness
  /// stable when other entities are added or removed.
  Rng fork(std::uint64_t salt) {
    return Rng(next_u64() ^ (salt * 0x9E3779B97F4A7C15ull));
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace honeyclust

#endif  // HONEYCLUST_CORE_RNG_HPP
