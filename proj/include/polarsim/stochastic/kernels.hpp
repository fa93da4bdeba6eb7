#pragma once

// Closed-form probability kernels for agent reactions and posting.
//
//   phi(x)         = 1 / (1 + exp(-beta (x - theta)))
//   psi(o)         = phi(|o|)
//   rho_similar    = (1 - phi(d))^gamma,   d = |o_i - o_m|
//   rho_opposed    = phi(d)^gamma
//   rho            = rho_similar + c * rho_opposed
//   P_react        = p_b * ((1 - w) + w * psi(o_i)) * rho, clamped to [0, 1]

#include "polarsim/core/types.hpp"

namespace polarsim {

struct SigmoidParams {
  double beta = 10.0;
  double theta = 0.5;

  void validate() const;
  friend bool operator==(const SigmoidParams&, const SigmoidParams&) = default;
};

struct ReactionParams {
  double base_prob = 0.7;
  double strength_weight = 0.8;
  double cross_ideology = 0.0;
  double gamma = 10.0;
  SigmoidParams sigmoid;

  void validate() const;
  friend bool operator==(const ReactionParams&, const ReactionParams&) = default;

  static ReactionParams like() { return {0.7, 0.8, 0.0, 10.0, {}}; }
  static ReactionParams repost() { return {0.3, 0.8, 0.1, 10.0, {}}; }
  static ReactionParams comment() { return {0.3, 0.8, 0.5, 10.0, {}}; }
  static ReactionParams follow() { return {0.5, 0.0, 0.0, 10.0, {}}; }
};

struct PostingParams {
  double p_reg = 0.2;
  double p_inf = 0.6;

  void validate() const;
  friend bool operator==(const PostingParams&, const PostingParams&) = default;
};

double phi(double x, const SigmoidParams& p);
/// 1 - phi(x), evaluated without cancellation for large x.
double phi_complement(double x, const SigmoidParams& p);
double psi(Opinion o, const SigmoidParams& p);

double rho_similar(double diff, const ReactionParams& p);
double rho_opposed(double diff, const ReactionParams& p);
/// Alignment term. Lies in [0, 1 + c].
double rho(Opinion agent, Opinion message, const ReactionParams& p);

double reaction_probability(Opinion agent, Opinion assessed, const ReactionParams& p);

double posting_probability(const Agent& agent, const PostingParams& p);

}  // namespace polarsim
