#pragma once

#include <cstddef>
#include <cstdint>

#include "polarsim/core/json.hpp"
#include "polarsim/core/types.hpp"
#include "polarsim/graph/social_graph.hpp"
#include "polarsim/stochastic/distribution.hpp"
#include "polarsim/stochastic/kernels.hpp"

namespace polarsim {

/// Every knob of an agent-only run. Defaults reproduce the published setup:
/// 30 agents (24 regular, 3 influencers per side), 10 iterations, 8
/// recommendations per agent per iteration.
struct SimulationConfig {
  std::size_t n_agents = 30;
  std::size_t n_regular = 24;
  std::size_t n_influencers_pro = 3;
  std::size_t n_influencers_contra = 3;
  std::size_t n_iterations = 10;
  std::size_t n_recs = 8;
  std::size_t memory_capacity = Memory::kDefaultCapacity;
  PostingParams posting;
  OpinionDistribution distribution = OpinionDistribution::polarized();
  ReactionParams reaction_like = ReactionParams::like();
  ReactionParams reaction_repost = ReactionParams::repost();
  ReactionParams reaction_comment = ReactionParams::comment();
  NetworkInitParams network_init;
  ConnectionDynamicsParams connection;
  Topic topic = Topic::universal_basic_income();
  std::uint64_t seed = 42;

  void validate() const;
  friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

void to_json(Json& j, const SigmoidParams& p);
void from_json(const Json& j, SigmoidParams& p);
void to_json(Json& j, const ReactionParams& p);
void from_json(const Json& j, ReactionParams& p);
void to_json(Json& j, const PostingParams& p);
void from_json(const Json& j, PostingParams& p);
void to_json(Json& j, const OpinionDistribution& d);
void from_json(const Json& j, OpinionDistribution& d);
void to_json(Json& j, const NetworkInitParams& p);
void from_json(const Json& j, NetworkInitParams& p);
void to_json(Json& j, const ConnectionDynamicsParams& p);
void from_json(const Json& j, ConnectionDynamicsParams& p);
/// Missing keys keep their defaults.
void to_json(Json& j, const SimulationConfig& c);
void from_json(const Json& j, SimulationConfig& c);

}  // namespace polarsim
