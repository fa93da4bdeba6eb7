#include "polarsim/graph/social_graph.hpp"

#include <algorithm>
#include <string>

#include "polarsim/core/error.hpp"

namespace polarsim {
namespace {

const std::set<AgentId>& lookup(const std::map<AgentId, std::set<AgentId>>& m, AgentId id) {
  auto it = m.find(id);
  if (it == m.end()) {
    throw Error(ErrorCode::UnknownAgent, "agent " + std::to_string(id.value) + " not in graph");
  }
  return it->second;
}

}  // namespace

void SocialGraph::add_node(AgentId id) {
  out_.try_emplace(id);
  in_.try_emplace(id);
}

bool SocialGraph::follow(AgentId follower, AgentId followee) {
  if (follower == followee) {
    throw Error(ErrorCode::BadRequest, "agent cannot follow itself");
  }
  if (!has_node(follower) || !has_node(followee)) {
    throw Error(ErrorCode::UnknownAgent, "follow between unknown agents");
  }
  if (!out_[follower].insert(followee).second) return false;
  in_[followee].insert(follower);
  ++edge_count_;
  return true;
}

bool SocialGraph::unfollow(AgentId follower, AgentId followee) {
  auto it = out_.find(follower);
  if (it == out_.end() || it->second.erase(followee) == 0) return false;
  in_[followee].erase(follower);
  --edge_count_;
  return true;
}

bool SocialGraph::follows(AgentId follower, AgentId followee) const {
  auto it = out_.find(follower);
  return it != out_.end() && it->second.contains(followee);
}

std::size_t SocialGraph::follower_count(AgentId id) const { return lookup(in_, id).size(); }
std::size_t SocialGraph::followee_count(AgentId id) const { return lookup(out_, id).size(); }
const std::set<AgentId>& SocialGraph::followers(AgentId id) const { return lookup(in_, id); }
const std::set<AgentId>& SocialGraph::followees(AgentId id) const { return lookup(out_, id); }

std::vector<AgentId> SocialGraph::nodes() const {
  std::vector<AgentId> ids;
  ids.reserve(out_.size());
  for (const auto& [id, _] : out_) ids.push_back(id);
  return ids;
}

std::vector<SocialGraph::Edge> SocialGraph::edges() const {
  std::vector<Edge> result;
  result.reserve(edge_count_);
  for (const auto& [from, targets] : out_) {
    for (AgentId to : targets) result.emplace_back(from, to);
  }
  return result;
}

void NetworkInitParams::validate() const {
  const bool ordered = 0.0 <= p_different && p_different < p_same && p_same < p_influencer &&
                       p_influencer <= 1.0;
  if (!ordered) {
    throw Error(ErrorCode::InvalidConfig,
                "network init probabilities must satisfy 0 <= p_d < p_s < p_i <= 1");
  }
}

void ConnectionDynamicsParams::validate() const {
  follow_reaction.validate();
  if (!(p_unfollow >= 0.0 && p_unfollow <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "p_unfollow must lie in [0, 1]");
  }
}

SocialGraph init_network(std::span<const Agent> agents, const NetworkInitParams& params, Rng& rng) {
  SocialGraph graph;
  for (const Agent& a : agents) graph.add_node(a.id);
  for (const Agent& from : agents) {
    for (const Agent& to : agents) {
      if (from.id == to.id) continue;
      const bool same_side = from.opinion.value_or(Opinion{}).side() ==
                             to.opinion.value_or(Opinion{}).side();
      double p = params.p_different;
      if (same_side) p = to.is_influencer() ? params.p_influencer : params.p_same;
      if (bernoulli(p, rng)) graph.follow(from.id, to.id);
    }
  }
  return graph;
}

double follow_probability(Opinion follower, Opinion followee, const ConnectionDynamicsParams& params) {
  return reaction_probability(follower, followee, params.follow_reaction);
}

std::vector<EdgeChange> plan_connection_changes(const SocialGraph& graph,
                                                std::span<const Agent> agents,
                                                const CandidateMap& candidates,
                                                const ConnectionDynamicsParams& params, Rng& rng) {
  auto opinion_of = [&](AgentId id) {
    if (id.value >= agents.size() || agents[id.value].id != id) {
      throw Error(ErrorCode::UnknownAgent, "agent " + std::to_string(id.value) + " not in population");
    }
    return agents[id.value].opinion.value_or(Opinion{});
  };

  std::vector<EdgeChange> changes;
  for (const auto& [agent, pool] : candidates) {
    std::vector<AgentId> sorted(pool.begin(), pool.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (AgentId candidate : sorted) {
      if (candidate == agent || graph.follows(agent, candidate)) continue;
      if (!graph.has_node(candidate)) {
        throw Error(ErrorCode::UnknownAgent, "candidate " + std::to_string(candidate.value) +
                                                 " not in graph");
      }
      const double p = follow_probability(opinion_of(agent), opinion_of(candidate), params);
      if (bernoulli(p, rng)) changes.push_back({agent, candidate, true});
    }
  }
  for (const auto& [agent, _] : candidates) {
    if (!graph.has_node(agent)) continue;
    for (AgentId followee : graph.followees(agent)) {
      if (bernoulli(params.p_unfollow, rng)) changes.push_back({agent, followee, false});
    }
  }
  return changes;
}

void apply_changes(SocialGraph& graph, std::span<const EdgeChange> changes) {
  for (const EdgeChange& c : changes) {
    if (c.added) {
      graph.follow(c.follower, c.followee);
    } else {
      graph.unfollow(c.follower, c.followee);
    }
  }
}

SocialGraph evolve_connections(const SocialGraph& graph, std::span<const Agent> agents,
                               const CandidateMap& candidates,
                               const ConnectionDynamicsParams& params, Rng& rng) {
  SocialGraph next = graph;
  apply_changes(next, plan_connection_changes(graph, agents, candidates, params, rng));
  return next;
}

double influence_score(const SocialGraph& graph, AgentId id) {
  const std::size_t followers = graph.follower_count(id);
  const std::size_t n = graph.node_count();
  if (n < 2) return 0.0;
  return static_cast<double>(followers) / static_cast<double>(n - 1);
}

}  // namespace polarsim
