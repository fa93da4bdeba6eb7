#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "polarsim/core/error.hpp"
#include "polarsim/stochastic/distribution.hpp"
#include "polarsim/stochastic/kernels.hpp"
#include "polarsim/stochastic/rng.hpp"

namespace polarsim {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidConfig, what);
}

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

double Rng::normal(double mean, double sigma) {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  return mean + sigma * radius * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t Rng::index(std::size_t n) {
  if (n <= 1) return 0;
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return static_cast<std::size_t>(x % bound);
}

bool bernoulli(double p, Rng& rng) { return rng.uniform() < p; }

void SigmoidParams::validate() const {
  require(beta > 0.0, "sigmoid beta must be > 0");
  require(theta >= 0.0 && theta <= 2.0, "sigmoid theta must lie in [0, 2]");
}

void ReactionParams::validate() const {
  require(in_unit(base_prob), "reaction base_prob must lie in [0, 1]");
  require(in_unit(strength_weight), "reaction strength_weight must lie in [0, 1]");
  require(in_unit(cross_ideology), "reaction cross_ideology must lie in [0, 1]");
  require(gamma > 0.0, "reaction gamma must be > 0");
  sigmoid.validate();
}

void PostingParams::validate() const {
  require(in_unit(p_reg) && in_unit(p_inf), "posting probabilities must lie in [0, 1]");
  require(p_inf > p_reg, "influencer posting probability must exceed the regular one");
}

double phi(double x, const SigmoidParams& p) {
  return 1.0 / (1.0 + std::exp(-p.beta * (x - p.theta)));
}

double phi_complement(double x, const SigmoidParams& p) {
  return 1.0 / (1.0 + std::exp(p.beta * (x - p.theta)));
}

double psi(Opinion o, const SigmoidParams& p) { return phi(o.magnitude(), p); }

double rho_similar(double diff, const ReactionParams& p) {
  return std::pow(phi_complement(diff, p.sigmoid), p.gamma);
}

double rho_opposed(double diff, const ReactionParams& p) {
  return std::pow(phi(diff, p.sigmoid), p.gamma);
}

double rho(Opinion agent, Opinion message, const ReactionParams& p) {
  const double diff = std::abs(agent.value - message.value);
  return rho_similar(diff, p) + p.cross_ideology * rho_opposed(diff, p);
}

double reaction_probability(Opinion agent, Opinion assessed, const ReactionParams& p) {
  const double strength = (1.0 - p.strength_weight) + p.strength_weight * psi(agent, p.sigmoid);
  const double raw = p.base_prob * strength * rho(agent, assessed, p);
  return std::clamp(raw, 0.0, 1.0);
}

double posting_probability(const Agent& agent, const PostingParams& p) {
  return agent.is_influencer() ? p.p_inf : p.p_reg;
}

void OpinionDistribution::validate() const {
  auto in_range = [](double mu) { return mu >= -1.0 && mu <= 1.0; };
  if (const auto* n = std::get_if<NormalShape>(&shape)) {
    require(n->sigma > 0.0, "normal sigma must be > 0");
    require(in_range(n->mu), "normal mu must lie in [-1, 1]");
  } else {
    const auto& b = std::get<BimodalShape>(shape);
    require(b.sigma > 0.0, "bimodal sigma must be > 0");
    require(in_range(b.mu1) && in_range(b.mu2), "bimodal modes must lie in [-1, 1]");
  }
}

Opinion sample_opinion(const OpinionDistribution& dist, Rng& rng) {
  for (int attempt = 0; attempt < kMaxSamplerRejections; ++attempt) {
    double draw = 0.0;
    if (const auto* n = std::get_if<NormalShape>(&dist.shape)) {
      draw = rng.normal(n->mu, n->sigma);
    } else {
      const auto& b = std::get<BimodalShape>(dist.shape);
      const double mu = rng.uniform() < 0.5 ? b.mu1 : b.mu2;
      draw = rng.normal(mu, b.sigma);
    }
    if (draw >= -1.0 && draw <= 1.0) return Opinion{draw};
  }
  throw Error(ErrorCode::SamplerStuck, "opinion sampler rejected " +
                                           std::to_string(kMaxSamplerRejections) +
                                           " consecutive draws");
}

}  // namespace polarsim
