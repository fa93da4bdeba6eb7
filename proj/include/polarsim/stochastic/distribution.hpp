#pragma once

#include <variant>

#include "polarsim/core/types.hpp"
#include "polarsim/stochastic/rng.hpp"

namespace polarsim {

struct NormalShape {
  double mu = 0.0;
  double sigma = 0.1;
  friend bool operator==(const NormalShape&, const NormalShape&) = default;
};

/// Equal-weight mixture of two Gaussians sharing one sigma.
struct BimodalShape {
  double mu1 = -0.8;
  double mu2 = 0.8;
  double sigma = 0.1;
  friend bool operator==(const BimodalShape&, const BimodalShape&) = default;
};

struct OpinionDistribution {
  std::variant<NormalShape, BimodalShape> shape = BimodalShape{};

  static OpinionDistribution polarized() { return {BimodalShape{-0.8, 0.8, 0.1}}; }
  static OpinionDistribution moderate() { return {NormalShape{0.0, 0.1}}; }

  void validate() const;
  friend bool operator==(const OpinionDistribution&, const OpinionDistribution&) = default;
};

inline constexpr int kMaxSamplerRejections = 1000;

/// Draws from the distribution restricted to [-1, 1] by rejection.
/// Throws Error{SamplerStuck} after kMaxSamplerRejections consecutive misses.
Opinion sample_opinion(const OpinionDistribution& dist, Rng& rng);

}  // namespace polarsim
