#pragma once

#include <string>

#include "polarsim/core/types.hpp"
#include "polarsim/sim/config.hpp"

namespace polarsim::testing {

inline Agent make_agent(std::uint32_t id, std::optional<double> opinion,
                        Role role = Role::Regular) {
  Agent a;
  a.id = AgentId{id};
  a.username = "agent" + std::to_string(id);
  if (opinion) a.opinion = Opinion{*opinion};
  a.role = role;
  return a;
}

inline Message make_post(std::uint64_t id, std::uint32_t author, std::optional<double> stance,
                         std::string text = "a post") {
  Message m;
  m.id = MessageId{id};
  m.author = AgentId{author};
  m.text = std::move(text);
  if (stance) m.stance_meta = Opinion{*stance};
  return m;
}

/// The published defaults, shrunk for fast tests.
inline SimulationConfig small_config(std::uint64_t seed = 1) {
  SimulationConfig c;
  c.n_agents = 10;
  c.n_regular = 6;
  c.n_influencers_pro = 2;
  c.n_influencers_contra = 2;
  c.n_iterations = 4;
  c.n_recs = 4;
  c.seed = seed;
  return c;
}

}  // namespace polarsim::testing
