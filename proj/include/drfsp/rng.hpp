#pragma once

#include <cstdint>
#include <random>

namespace drfsp {

// Seedable random source with platform-independent draws. std::mt19937_64
// produces a bit-exact sequence on every conforming implementation, but the
// standard <random> distributions do not, so the mapping from raw words to
// bounded integers and unit reals is done by hand here.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Unbiased integer in [0, n) via rejection sampling.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform real in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

private:
  std::mt19937_64 gen_;
};

} // namespace drfsp
