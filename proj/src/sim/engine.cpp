#include "polarsim/sim/engine.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "polarsim/core/error.hpp"
#include "polarsim/stochastic/kernels.hpp"

namespace polarsim {
namespace {

Opinion draw_opinion(const OpinionDistribution& dist, std::optional<int> required_side, Rng& rng) {
  for (int attempt = 0; attempt < kMaxSamplerRejections; ++attempt) {
    const Opinion o = sample_opinion(dist, rng);
    if (!required_side || o.side() == *required_side) return o;
  }
  throw Error(ErrorCode::SamplerStuck, "could not draw an influencer opinion on the required side");
}

std::string unique_username(std::string base, std::unordered_set<std::string>& taken) {
  if (base.empty()) base = "user";
  std::string name = base;
  for (int suffix = 2; taken.contains(name); ++suffix) name = base + std::to_string(suffix);
  taken.insert(name);
  return name;
}

SessionEvent make_event(AgentId actor, Action action, EventTarget target, std::int64_t iteration) {
  SessionEvent e;
  e.actor = actor;
  e.action = action;
  e.target = target;
  e.iteration = iteration;
  return e;
}

void record_creation(SimulationState& state, AgentId author, Action action, EventTarget target,
                     MessageDraft draft, std::int64_t iteration) {
  SessionEvent e = make_event(author, action, target, iteration);
  e.payload = std::move(draft.text);
  e.created = state.next_message_id();
  e.stance = draft.stance_meta.value;
  record_event(state, std::move(e));
}

}  // namespace

SimulationState initialize(const SimulationConfig& config, Gateway& gateway, Rng& rng) {
  config.validate();
  SimulationState state;
  std::unordered_set<std::string> taken;
  for (std::size_t i = 0; i < config.n_agents; ++i) {
    Agent agent;
    std::optional<int> side;
    if (i >= config.n_regular) {
      agent.role = Role::Influencer;
      side = i < config.n_regular + config.n_influencers_pro ? 1 : -1;
    }
    agent.opinion = draw_opinion(config.distribution, side, rng);
    Persona persona = gateway.generate_persona(*agent.opinion, config.topic, rng);
    agent.username = unique_username(std::move(persona.username), taken);
    agent.personality = std::move(persona.personality);
    agent.biography = std::move(persona.biography);
    agent.memory = Memory(config.memory_capacity);
    state.add_agent(std::move(agent));
  }
  validate_population(state.agents, config.memory_capacity);
  state.graph = init_network(state.agents, config.network_init, rng);
  state.initial_graph = state.graph;
  return state;
}

std::vector<MessageId> recommend_for_agent(const SimulationState& state, AgentId agent,
                                           std::size_t n, std::optional<MessageId> cutoff) {
  if (n == 0) return {};
  const auto& seen = state.seen.at(agent.value);
  std::vector<double> eta(state.agents.size(), 0.0);
  for (const Agent& a : state.agents) {
    if (state.graph.has_node(a.id)) eta[a.id.value] = influence_score(state.graph, a.id);
  }

  std::vector<MessageId> eligible;
  for (const Message& m : state.messages) {
    if (cutoff && m.id > *cutoff) break;
    if (m.author == agent || seen.contains(m.id)) continue;
    eligible.push_back(m.id);
  }
  auto ranks_before = [&](MessageId a, MessageId b) {
    const double ea = eta[state.message(a).author.value];
    const double eb = eta[state.message(b).author.value];
    if (ea != eb) return ea > eb;
    return a > b;
  };
  const std::size_t keep = std::min(n, eligible.size());
  std::partial_sort(eligible.begin(), eligible.begin() + static_cast<std::ptrdiff_t>(keep),
                    eligible.end(), ranks_before);
  eligible.resize(keep);
  return eligible;
}

ReactionDecision decide_reactions(const Agent& agent, const Message& message,
                                  const SimulationConfig& config, Gateway& gateway,
                                  const Corpus& corpus, Rng& rng) {
  if (!agent.opinion) throw Error(ErrorCode::BadRequest, "agent has no opinion");
  const Opinion own = *agent.opinion;
  ReactionDecision d;
  d.assessed = gateway.assess_opinion(agent, message, config.topic, corpus, rng);
  d.like = bernoulli(reaction_probability(own, d.assessed, config.reaction_like), rng);
  d.repost = bernoulli(reaction_probability(own, d.assessed, config.reaction_repost), rng);
  d.comment = bernoulli(reaction_probability(own, d.assessed, config.reaction_comment), rng);
  return d;
}

void step(SimulationState& state, const SimulationConfig& config, Gateway& gateway, Rng& rng) {
  const std::int64_t t = state.iteration + 1;
  state.iteration = t;

  const std::size_t population = state.agents.size();
  for (std::size_t i = 0; i < population; ++i) {
    const Agent& agent = state.agents[i];
    if (!agent.opinion) continue;
    if (!bernoulli(posting_probability(agent, config.posting), rng)) continue;
    MessageDraft draft =
        gateway.generate_message(agent, config.topic, MessageKind::Post, nullptr, state.corpus(), rng);
    record_creation(state, agent.id, Action::CreatePost, std::monostate{}, std::move(draft), t);
  }

  const std::optional<MessageId> cutoff =
      state.messages.empty() ? std::optional<MessageId>(MessageId{0})
                             : std::optional<MessageId>(state.messages.back().id);

  for (std::size_t i = 0; i < population; ++i) {
    const AgentId self{static_cast<std::uint32_t>(i)};
    if (!state.agents[i].opinion) continue;
    const std::vector<MessageId> recs = recommend_for_agent(state, self, config.n_recs, cutoff);

    std::vector<AgentId> authors;
    for (MessageId rec : recs) {
      record_event(state, make_event(self, Action::FeedServed, rec, t));
      // Copies: record_event may reallocate the message vector.
      const Message message = state.message(rec);
      authors.push_back(message.author);
      const auto [assessed, like, repost, comment] =
          decide_reactions(state.agents[i], message, config, gateway, state.corpus(), rng);

      if (like) record_event(state, make_event(self, Action::Like, rec, t));
      if (repost) {
        MessageDraft draft = gateway.generate_message(state.agents[i], config.topic,
                                                      MessageKind::Repost, &message,
                                                      state.corpus(), rng);
        record_creation(state, self, Action::CreateRepost, rec, std::move(draft), t);
      }
      if (comment) {
        MessageDraft draft = gateway.generate_message(state.agents[i], config.topic,
                                                      MessageKind::Comment, &message,
                                                      state.corpus(), rng);
        record_creation(state, self, Action::CreateComment, rec, std::move(draft), t);
      }
    }

    const CandidateMap candidates{{self, authors}};
    for (const EdgeChange& change :
         plan_connection_changes(state.graph, state.agents, candidates, config.connection, rng)) {
      record_event(state, make_event(self, change.added ? Action::Follow : Action::Unfollow,
                                     change.followee, t));
    }
  }
}

SimulationState run(const SimulationConfig& config, Gateway& gateway, Rng& rng) {
  SimulationState state = initialize(config, gateway, rng);
  for (std::size_t t = 0; t < config.n_iterations; ++t) {
    try {
      step(state, config, gateway, rng);
    } catch (const Error& e) {
      throw Error(e.code(), "iteration " + std::to_string(t + 1) + ": " + e.what());
    }
  }
  return state;
}

}  // namespace polarsim
