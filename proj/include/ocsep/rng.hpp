#pragma once

#include <cstdint>

namespace ocsep {

// SplitMix64. Chosen over std::mt19937 + distributions because the whole
// sequence, including bounded draws, is pinned down here: identical seeds
// give identical results on every platform and toolchain.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, bound) by rejection; bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

 private:
  std::uint64_t state_;
};

// Derives an independent stream for (seed, tag). Used so that parallel or
// reordered consumers (e.g. null-cone trials) stay reproducible.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  SplitMix64 g(seed);
  std::uint64_t a = g.next();
  SplitMix64 h(a ^ (tag * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull));
  return h.next();
}

}  // namespace ocsep
