#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "polarsim/llm/gateway.hpp"
#include "polarsim/sim/config.hpp"
#include "polarsim/sim/state.hpp"
#include "polarsim/stochastic/rng.hpp"

namespace polarsim {

// Random draw order, which the replay guarantee depends on:
//
// initialize: per agent in id order, opinion draws (re-drawn until an
//   influencer lands on its designated side), then persona draws; then one
//   Bernoulli per ordered pair for the initial network.
// step, phase 1: per agent in id order, one posting Bernoulli, then message
//   generation draws on success.
// step, phase 2: per agent in id order, per recommendation in rank order:
//   assessment draws, then like, repost, comment Bernoullis, then generation
//   draws for a repost and then a comment. After the recommendations, the
//   agent's follow draws and then its unfollow draws.

/// Creates the population and the initial follow graph. Agents are laid out
/// regular first, then pro influencers, then contra influencers. Usernames
/// that collide get a numeric suffix.
SimulationState initialize(const SimulationConfig& config, Gateway& gateway, Rng& rng);

/// Up to n messages for `agent`, excluding messages it has seen or authored,
/// ranked by the author's influence score (descending) with newer messages
/// first among ties. Only ids <= `cutoff` are eligible when given.
std::vector<MessageId> recommend_for_agent(const SimulationState& state, AgentId agent,
                                           std::size_t n,
                                           std::optional<MessageId> cutoff = std::nullopt);

struct ReactionDecision {
  Opinion assessed;
  bool like = false;
  bool repost = false;
  bool comment = false;
};

/// One exposure: the gateway assesses the message, then the like, repost and
/// comment Bernoullis are drawn in that order.
ReactionDecision decide_reactions(const Agent& agent, const Message& message,
                                  const SimulationConfig& config, Gateway& gateway,
                                  const Corpus& corpus, Rng& rng);

/// One iteration: posting, then per-agent recommendation, interactions and
/// network update. Messages created during phase 2 become recommendable from
/// the next iteration on.
void step(SimulationState& state, const SimulationConfig& config, Gateway& gateway, Rng& rng);

/// initialize followed by config.n_iterations steps.
SimulationState run(const SimulationConfig& config, Gateway& gateway, Rng& rng);

}  // namespace polarsim
