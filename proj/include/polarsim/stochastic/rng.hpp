#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace polarsim {

// Seeded random stream. The engine is std::mt19937_64, whose output sequence
// is fixed by the C++ standard. Derived variates are computed here rather
// than through <random> distributions, which are implementation-defined.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution. One draw.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Gaussian via Box-Muller. Two draws, no cached spare.
  double normal(double mean, double sigma);

  /// Uniform integer in [0, n). Rejection-sampled, so unbiased.
  std::size_t index(std::size_t n);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// True with probability p. Consumes exactly one draw.
bool bernoulli(double p, Rng& rng);

}  // namespace polarsim
