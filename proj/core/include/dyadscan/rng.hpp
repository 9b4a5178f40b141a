#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace dyadscan {

// Mixes words into a well-distributed 64-bit value (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

// Seeded random source with hand-rolled draw routines. std::mt19937_64 output
// is pinned by the standard, while the std distribution objects are not; doing
// the uniform/gaussian/int derivations ourselves keeps every seeded run
// bit-reproducible across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer on [lo, hi] inclusive, by masked rejection.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

  // Standard normal via Box-Muller; second deviate is cached.
  double gaussian();

  template <typename T>
  void shuffle(std::vector<T>& v) {
    if (v.size() < 2) return;
    for (std::size_t i = v.size() - 1; i > 0; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_int(0, i));
      std::swap(v[i], v[j]);
    }
  }

  // Derived independent stream for a sub-task (e.g. one dyad, one CV fold).
  Rng fork(std::uint64_t stream_a, std::uint64_t stream_b = 0) const {
    return Rng(mix_seed(seed_, stream_a + 1, stream_b + 1));
  }

  std::uint64_t seed_value() const { return seed_; }

private:
  std::mt19937_64 engine_;
  std::uint64_t seed_ = 0;
  bool have_cached_gaussian_ = false;
  double cached_gaussian_ = 0.0;
};

} // namespace dyadscan
