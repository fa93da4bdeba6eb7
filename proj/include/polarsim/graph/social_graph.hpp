#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "polarsim/core/types.hpp"
#include "polarsim/stochastic/kernels.hpp"
#include "polarsim/stochastic/rng.hpp"

namespace polarsim {

/// Directed follow graph. An edge (a, b) means a follows b. Self-loops and
/// duplicate edges cannot be represented.
class SocialGraph {
 public:
  using Edge = std::pair<AgentId, AgentId>;

  void add_node(AgentId id);
  bool has_node(AgentId id) const { return out_.contains(id); }

  /// Returns false when the edge already exists. Throws on self-loops or
  /// unknown endpoints.
  bool follow(AgentId follower, AgentId followee);
  bool unfollow(AgentId follower, AgentId followee);
  bool follows(AgentId follower, AgentId followee) const;

  std::size_t node_count() const noexcept { return out_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  std::size_t follower_count(AgentId id) const;
  std::size_t followee_count(AgentId id) const;

  const std::set<AgentId>& followers(AgentId id) const;
  const std::set<AgentId>& followees(AgentId id) const;
  std::vector<AgentId> nodes() const;
  /// All edges in ascending (follower, followee) order.
  std::vector<Edge> edges() const;

  friend bool operator==(const SocialGraph& a, const SocialGraph& b) { return a.out_ == b.out_; }

 private:
  std::map<AgentId, std::set<AgentId>> out_;
  std::map<AgentId, std::set<AgentId>> in_;
  std::size_t edge_count_ = 0;
};

struct NetworkInitParams {
  double p_influencer = 0.4;  // same side, followee is an influencer
  double p_same = 0.2;        // same side, followee is regular
  double p_different = 0.05;  // opposite sides

  void validate() const;
  friend bool operator==(const NetworkInitParams&, const NetworkInitParams&) = default;
};

struct ConnectionDynamicsParams {
  ReactionParams follow_reaction = ReactionParams::follow();
  double p_unfollow = 0.05;

  void validate() const;
  friend bool operator==(const ConnectionDynamicsParams&, const ConnectionDynamicsParams&) = default;
};

/// Homophilous initial wiring. Visits ordered pairs (i, j), i != j, in
/// ascending id order with one Bernoulli draw each.
SocialGraph init_network(std::span<const Agent> agents, const NetworkInitParams& params, Rng& rng);

double follow_probability(Opinion follower, Opinion followee, const ConnectionDynamicsParams& params);

struct EdgeChange {
  AgentId follower{};
  AgentId followee{};
  bool added = false;
  friend bool operator==(const EdgeChange&, const EdgeChange&) = default;
};

/// Per-agent follow candidates; agents present as keys are the ones whose
/// connections are updated this round.
using CandidateMap = std::map<AgentId, std::vector<AgentId>>;

/// Draws follow/unfollow decisions without touching the graph.
///
/// For each key agent in ascending order, each distinct candidate it does not
/// already follow (self excluded) is followed with follow_probability. Then
/// each edge that existed before the call and whose follower is a key agent
/// is dropped with p_unfollow, in ascending edge order. Edges created in the
/// same round are not eligible for removal.
std::vector<EdgeChange> plan_connection_changes(const SocialGraph& graph,
                                                std::span<const Agent> agents,
                                                const CandidateMap& candidates,
                                                const ConnectionDynamicsParams& params, Rng& rng);

void apply_changes(SocialGraph& graph, std::span<const EdgeChange> changes);

/// plan_connection_changes followed by apply_changes on a copy.
SocialGraph evolve_connections(const SocialGraph& graph, std::span<const Agent> agents,
                               const CandidateMap& candidates,
                               const ConnectionDynamicsParams& params, Rng& rng);

/// Follower count over |V| - 1. Throws Error{UnknownAgent}.
double influence_score(const SocialGraph& graph, AgentId id);

}  // namespace polarsim
