#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "polarsim/core/json.hpp"
#include "polarsim/core/types.hpp"
#include "polarsim/graph/social_graph.hpp"

namespace polarsim {

/// Full platform state. Ids are dense (see Corpus). All mutation after
/// initialization goes through record_event, so event_log replays to
/// exactly this state.
struct SimulationState {
  std::vector<Agent> agents;
  SocialGraph graph;
  SocialGraph initial_graph;
  std::vector<Message> messages;
  std::vector<std::set<MessageId>> seen;  // indexed by agent id
  std::vector<SessionEvent> event_log;
  std::int64_t iteration = 0;

  Corpus corpus() const noexcept { return Corpus{agents, messages}; }
  const Agent& agent(AgentId id) const;
  const Message& message(MessageId id) const;
  bool has_message(MessageId id) const noexcept {
    return id.value >= 1 && id.value <= messages.size();
  }
  MessageId next_message_id() const noexcept { return MessageId{messages.size() + 1}; }

  /// Appends a new agent with the next dense id and registers it as a node.
  AgentId add_agent(Agent agent);

  friend bool operator==(const SimulationState&, const SimulationState&) = default;
};

/// Assigns the next sequence number, applies the event and appends it to the
/// log. Create* events must carry `created == next_message_id()`.
///
/// Effects:
///   CreatePost     new Post; author memory AuthoredPost
///   CreateComment  new Comment; parent comments+1; memory Commented(parent), AuthoredComment
///   CreateRepost   new Repost; parent reposts+1; memory Reposted(parent), AuthoredRepost
///   Like           likes+1; memory Liked
///   Follow         edge added
///   Unfollow       edge removed
///   FeedServed     with a message target: marked seen, memory SawMessage;
///                  without a target: log only
const SessionEvent& record_event(SimulationState& state, SessionEvent event);

/// The state before any event: same agents with empty memories, the initial
/// graph, no messages.
SimulationState initial_view(const SimulationState& state);

/// Folds `events` over `base` through record_event.
SimulationState replay(SimulationState base, std::span<const SessionEvent> events);

void to_json(Json& j, const SocialGraph& g);
void from_json(const Json& j, SocialGraph& g);
void to_json(Json& j, const SimulationState& s);
void from_json(const Json& j, SimulationState& s);

}  // namespace polarsim
