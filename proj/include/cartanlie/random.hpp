#pragma once

#include <cstdint>
#include <random>

#include "cartanlie/field.hpp"

namespace cartanlie {

/// splitmix64 step; used to derive independent per-sample seeds by counter.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic across platforms: only raw mt19937_64 output is used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
  Scalar scalar(const Field& F) { return Scalar{below(F.order())}; }
  Scalar nonzero_scalar(const Field& F) { return Scalar{1 + below(F.order() - 1)}; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cartanlie
