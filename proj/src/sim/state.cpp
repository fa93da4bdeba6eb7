#include "polarsim/sim/state.hpp"

#include <string>

#include "polarsim/core/error.hpp"

namespace polarsim {
namespace {

std::int64_t memory_time(const SessionEvent& e) {
  // Memory entries are stamped with the iteration; human-phase activity uses 0.
  return e.iteration.value_or(0);
}

MessageId target_message(const SimulationState& s, const SessionEvent& e) {
  const auto* mid = std::get_if<MessageId>(&e.target);
  if (mid == nullptr || !s.has_message(*mid)) {
    throw Error(ErrorCode::UnknownTarget,
                std::string(to_string(e.action)) + " event without a valid message target");
  }
  return *mid;
}

AgentId target_agent(const SimulationState& s, const SessionEvent& e) {
  const auto* aid = std::get_if<AgentId>(&e.target);
  if (aid == nullptr || aid->value >= s.agents.size()) {
    throw Error(ErrorCode::UnknownTarget,
                std::string(to_string(e.action)) + " event without a valid agent target");
  }
  return *aid;
}

void create_message(SimulationState& s, const SessionEvent& e, MessageKind kind,
                    std::optional<MessageId> parent) {
  if (!e.created || *e.created != s.next_message_id()) {
    throw Error(ErrorCode::BadRequest, "create event must carry the next message id");
  }
  Message m;
  m.id = *e.created;
  m.author = e.actor;
  m.kind = kind;
  m.parent = parent;
  m.text = e.payload.value_or("");
  m.created_iteration = e.iteration;
  m.created_at_ms = e.wallclock_ms;
  if (e.stance) m.stance_meta = Opinion{*e.stance};
  s.messages.push_back(std::move(m));
}

}  // namespace

const Agent& SimulationState::agent(AgentId id) const {
  if (id.value >= agents.size()) {
    throw Error(ErrorCode::UnknownAgent, "unknown agent " + std::to_string(id.value));
  }
  return agents[id.value];
}

const Message& SimulationState::message(MessageId id) const {
  if (!has_message(id)) {
    throw Error(ErrorCode::UnknownTarget, "unknown message " + std::to_string(id.value));
  }
  return messages[id.value - 1];
}

AgentId SimulationState::add_agent(Agent a) {
  a.id = AgentId{static_cast<std::uint32_t>(agents.size())};
  graph.add_node(a.id);
  initial_graph.add_node(a.id);
  agents.push_back(std::move(a));
  seen.resize(agents.size());
  return agents.back().id;
}

const SessionEvent& record_event(SimulationState& s, SessionEvent e) {
  if (e.actor.value >= s.agents.size()) {
    throw Error(ErrorCode::UnknownAgent, "event actor " + std::to_string(e.actor.value));
  }
  Agent& actor = s.agents[e.actor.value];
  const std::int64_t t = memory_time(e);

  switch (e.action) {
    case Action::CreatePost: {
      create_message(s, e, MessageKind::Post, std::nullopt);
      actor.memory.push({MemoryKind::AuthoredPost, *e.created, t});
      break;
    }
    case Action::CreateComment: {
      const MessageId parent = target_message(s, e);
      create_message(s, e, MessageKind::Comment, parent);
      ++s.messages[parent.value - 1].comments;
      actor.memory.push({MemoryKind::Commented, parent, t});
      actor.memory.push({MemoryKind::AuthoredComment, *e.created, t});
      break;
    }
    case Action::CreateRepost: {
      const MessageId parent = target_message(s, e);
      create_message(s, e, MessageKind::Repost, parent);
      ++s.messages[parent.value - 1].reposts;
      actor.memory.push({MemoryKind::Reposted, parent, t});
      actor.memory.push({MemoryKind::AuthoredRepost, *e.created, t});
      break;
    }
    case Action::Like: {
      const MessageId target = target_message(s, e);
      ++s.messages[target.value - 1].likes;
      actor.memory.push({MemoryKind::Liked, target, t});
      break;
    }
    case Action::Follow:
      s.graph.follow(e.actor, target_agent(s, e));
      break;
    case Action::Unfollow:
      s.graph.unfollow(e.actor, target_agent(s, e));
      break;
    case Action::FeedServed:
      if (std::holds_alternative<MessageId>(e.target)) {
        const MessageId target = target_message(s, e);
        s.seen[e.actor.value].insert(target);
        actor.memory.push({MemoryKind::SawMessage, target, t});
      }
      break;
  }

  e.seq = s.event_log.empty() ? 1 : s.event_log.back().seq + 1;
  if (e.iteration && *e.iteration > s.iteration) s.iteration = *e.iteration;
  s.event_log.push_back(std::move(e));
  return s.event_log.back();
}

SimulationState initial_view(const SimulationState& state) {
  SimulationState base;
  base.agents = state.agents;
  for (Agent& a : base.agents) a.memory.clear();
  base.graph = state.initial_graph;
  base.initial_graph = state.initial_graph;
  base.seen.assign(state.agents.size(), {});
  return base;
}

SimulationState replay(SimulationState base, std::span<const SessionEvent> events) {
  for (const SessionEvent& e : events) record_event(base, e);
  return base;
}

void to_json(Json& j, const SocialGraph& g) {
  j = Json::object();
  for (AgentId id : g.nodes()) {
    Json followees = Json::array();
    for (AgentId f : g.followees(id)) followees.push_back(f.value);
    j[std::to_string(id.value)] = std::move(followees);
  }
}

void from_json(const Json& j, SocialGraph& g) {
  g = SocialGraph{};
  for (const auto& [key, _] : j.items()) g.add_node(AgentId{static_cast<std::uint32_t>(std::stoul(key))});
  for (const auto& [key, followees] : j.items()) {
    const AgentId from{static_cast<std::uint32_t>(std::stoul(key))};
    for (const auto& f : followees) g.follow(from, f.get<AgentId>());
  }
}

void to_json(Json& j, const SimulationState& s) {
  Json seen = Json::array();
  for (const auto& ids : s.seen) {
    Json row = Json::array();
    for (MessageId id : ids) row.push_back(id.value);
    seen.push_back(std::move(row));
  }
  j = Json{{"iteration", s.iteration},
           {"agents", s.agents},
           {"graph", s.graph},
           {"initial_graph", s.initial_graph},
           {"messages", s.messages},
           {"seen", std::move(seen)},
           {"event_log", s.event_log}};
}

void from_json(const Json& j, SimulationState& s) {
  s = SimulationState{};
  j.at("iteration").get_to(s.iteration);
  j.at("agents").get_to(s.agents);
  j.at("graph").get_to(s.graph);
  j.at("initial_graph").get_to(s.initial_graph);
  j.at("messages").get_to(s.messages);
  for (const auto& row : j.at("seen")) {
    std::set<MessageId> ids;
    for (const auto& id : row) ids.insert(id.get<MessageId>());
    s.seen.push_back(std::move(ids));
  }
  j.at("event_log").get_to(s.event_log);
  for (std::size_t i = 0; i < s.agents.size(); ++i) {
    if (s.agents[i].id.value != i) throw Error(ErrorCode::BadRequest, "agent ids must be dense");
  }
  for (std::size_t i = 0; i < s.messages.size(); ++i) {
    if (s.messages[i].id.value != i + 1) {
      throw Error(ErrorCode::BadRequest, "message ids must be dense");
    }
  }
  if (s.seen.size() != s.agents.size()) throw Error(ErrorCode::BadRequest, "seen/agents mismatch");
}

}  // namespace polarsim
