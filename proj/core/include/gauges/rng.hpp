#pragma once

#include <cstdint>
#include <vector>

namespace gauges {

/// Deterministic splitmix64 stream. Used everywhere a seeded sample corpus is
/// drawn so that reports are byte-identical across platforms and runs.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi], inclusive.
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  template <typename T>
  const T& pick(const std::vector<T>& pool) {
    return pool[next() % pool.size()];
  }

private:
  std::uint64_t state_;
};

}  // namespace gauges
