#pragma once

#include <cstdint>

#include "qgids/site.hpp"

namespace qgids {

/// Counter-based random field: every variate is a pure function of
/// (master seed, site coordinates, field index, draw index), so sampling is
/// reproducible regardless of evaluation order or threading.
///
/// The mapping is frozen: the inputs are absorbed one 64-bit word at a time
/// with h = mix(h ^ (word + 0x9e3779b97f4a7c15 + (h << 6) + (h >> 2))),
/// where mix is the splitmix64 finalizer. Uniform doubles take the top 53
/// bits of the final state.
class CounterRng {
 public:
  explicit CounterRng(uint64_t master_seed) : seed_(master_seed) {}

  uint64_t bits(const Site& x, uint32_t field, uint32_t draw = 0) const {
    uint64_t h = mix(seed_ ^ 0x6a09e667f3bcc908ull);
    for (int j = 0; j < x.dim(); ++j) h = absorb(h, static_cast<uint64_t>(static_cast<int64_t>(x[j])));
    h = absorb(h, (static_cast<uint64_t>(field) << 32) | draw);
    h = absorb(h, static_cast<uint64_t>(x.dim()));
    return h;
  }

  /// Uniform in [0,1).
  double uniform(const Site& x, uint32_t field, uint32_t draw = 0) const {
    return static_cast<double>(bits(x, field, draw) >> 11) * 0x1.0p-53;
  }

  uint64_t seed() const { return seed_; }

 private:
  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }
  static uint64_t absorb(uint64_t h, uint64_t v) {
    return mix(h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)));
  }

  uint64_t seed_;
};

}  // namespace qgids
