#pragma once

// Counter-mode deterministic randomness (splitmix64 finalizer).  Every draw
// is a pure function of (key, counter), so audits can be sharded over any
// number of threads and still produce byte-identical reports.

#include <cstdint>

namespace holderlab {

struct CounterRng {
  std::uint64_t key;

  explicit CounterRng(std::uint64_t seed) : key(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t at(std::uint64_t counter) const { return mix(key ^ mix(counter)); }

  // derived independent stream, e.g. one per trial index
  CounterRng stream(std::uint64_t id) const {
    CounterRng r(0);
    r.key = mix(key + 0x632be59bd9b4e019ull * (id + 1));
    return r;
  }

  double uniform01(std::uint64_t counter) const {  // [0, 1)
    return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
  }
  double uniformSym(std::uint64_t counter) const {  // [-1, 1)
    return 2.0 * uniform01(counter) - 1.0;
  }
};

}  // namespace holderlab
