#pragma once

#include <memory>

#include "polarsim/sim/snapshot.hpp"
#include "support.hpp"

namespace polarsim::testing {

/// Four agents (0, 1 pro; 2, 3 contra) and `per_side` posts per side, with
/// popularity rising with the id. Pro posts come first.
inline std::shared_ptr<const Snapshot> feed_snapshot(std::size_t per_side = 30) {
  auto snap = std::make_shared<Snapshot>();
  SimulationState& s = snap->state;
  const double opinions[] = {0.8, 0.4, -0.5, -0.9};
  for (std::uint32_t i = 0; i < 4; ++i) s.add_agent(make_agent(i, opinions[i]));
  s.graph.follow(AgentId{1}, AgentId{0});
  s.graph.follow(AgentId{2}, AgentId{0});
  s.graph.follow(AgentId{3}, AgentId{2});
  s.initial_graph = s.graph;
  for (std::size_t k = 0; k < 2 * per_side; ++k) {
    const std::uint32_t author = k < per_side ? static_cast<std::uint32_t>(k % 2)
                                              : static_cast<std::uint32_t>(2 + k % 2);
    SessionEvent e;
    e.actor = AgentId{author};
    e.action = Action::CreatePost;
    e.payload = "post " + std::to_string(k + 1);
    e.created = s.next_message_id();
    e.stance = opinions[author];
    e.iteration = 1;
    record_event(s, e);
  }
  snap->config.n_agents = 4;
  snap->config.n_regular = 4;
  snap->config.n_influencers_pro = 0;
  snap->config.n_influencers_contra = 0;
  return snap;
}

/// A clock the test advances by hand.
struct ManualClock {
  std::shared_ptr<std::int64_t> now = std::make_shared<std::int64_t>(1'000'000);
  std::int64_t operator()() const { return *now; }
  void advance_s(std::int64_t s) const { *now += s * 1000; }
};

}  // namespace polarsim::testing
