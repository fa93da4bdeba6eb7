#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "polarsim/core/error.hpp"
#include "polarsim/llm/stub_gateway.hpp"
#include "polarsim/sim/engine.hpp"
#include "polarsim/sim/snapshot.hpp"
#include "polarsim/sim/stats.hpp"
#include "support.hpp"

using namespace polarsim;
using polarsim::testing::small_config;

namespace {

SimulationState run_stub(const SimulationConfig& config) {
  StubGateway gateway;
  Rng rng(config.seed);
  return run(config, gateway, rng);
}

}  // namespace

TEST_SUITE("engine") {
  TEST_CASE("population layout") {
    const SimulationConfig config = small_config();
    StubGateway gateway;
    Rng rng(config.seed);
    const SimulationState s = initialize(config, gateway, rng);
    REQUIRE(s.agents.size() == 10);
    for (std::size_t i = 0; i < s.agents.size(); ++i) {
      const Agent& a = s.agents[i];
      CHECK(a.id.value == i);
      REQUIRE(a.opinion);
      CHECK(a.opinion->valid());
      CHECK(a.memory.capacity() == config.memory_capacity);
      if (i < 6) CHECK(a.role == Role::Regular);
      if (i >= 6 && i < 8) CHECK((a.is_influencer() && a.opinion->side() == 1));
      if (i >= 8) CHECK((a.is_influencer() && a.opinion->side() == -1));
    }
    CHECK_NOTHROW(validate_population(s.agents));
    CHECK(s.graph == s.initial_graph);
    CHECK(s.messages.empty());
    CHECK(s.event_log.empty());
  }

  TEST_CASE("invalid configs are rejected") {
    SimulationConfig c = small_config();
    c.n_agents = 11;
    CHECK_THROWS_AS(c.validate(), Error);
    StubGateway gateway;
    Rng rng(1);
    CHECK_THROWS_AS(initialize(c, gateway, rng), Error);
  }

  TEST_CASE("recommendations rank by influence and skip seen or own messages") {
    SimulationState s;
    for (std::uint32_t i = 0; i < 4; ++i) {
      Agent a = testing::make_agent(i, 0.5);
      s.add_agent(a);
    }
    // Agent 2 has two followers, agent 1 has one.
    s.graph.follow(AgentId{0}, AgentId{2});
    s.graph.follow(AgentId{3}, AgentId{2});
    s.graph.follow(AgentId{0}, AgentId{1});
    auto post = [&](std::uint32_t author) {
      SessionEvent e;
      e.actor = AgentId{author};
      e.action = Action::CreatePost;
      e.payload = "p";
      e.created = s.next_message_id();
      e.iteration = 1;
      record_event(s, e);
    };
    post(1);  // id 1
    post(2);  // id 2
    post(3);  // id 3
    post(2);  // id 4
    const auto recs = recommend_for_agent(s, AgentId{3}, 3);
    CHECK(recs == std::vector<MessageId>{MessageId{4}, MessageId{2}, MessageId{1}});
    SessionEvent seen;
    seen.actor = AgentId{3};
    seen.action = Action::FeedServed;
    seen.target = MessageId{4};
    record_event(s, seen);
    CHECK(recommend_for_agent(s, AgentId{3}, 1) == std::vector<MessageId>{MessageId{2}});
    CHECK(recommend_for_agent(s, AgentId{3}, 5, MessageId{1}) == std::vector<MessageId>{MessageId{1}});
    CHECK(recommend_for_agent(s, AgentId{3}, 0).empty());
  }

  TEST_CASE("run is deterministic and replayable") {
    const SimulationConfig config = small_config(17);
    const SimulationState a = run_stub(config);
    const SimulationState b = run_stub(config);
    CHECK(Json(a.event_log).dump() == Json(b.event_log).dump());
    CHECK(a.iteration == static_cast<std::int64_t>(config.n_iterations));

    const SimulationState replayed = replay(initial_view(a), a.event_log);
    CHECK(replayed == a);

    const SimulationState other = run_stub(small_config(18));
    CHECK(Json(other.event_log).dump() != Json(a.event_log).dump());
  }

  TEST_CASE("counters match events") {
    const SimulationState s = run_stub(small_config(5));
    std::vector<std::uint32_t> likes(s.messages.size() + 1), comments(s.messages.size() + 1),
        reposts(s.messages.size() + 1);
    for (const SessionEvent& e : s.event_log) {
      if (const auto* m = std::get_if<MessageId>(&e.target)) {
        if (e.action == Action::Like) ++likes[m->value];
        if (e.action == Action::CreateComment) ++comments[m->value];
        if (e.action == Action::CreateRepost) ++reposts[m->value];
      }
    }
    for (const Message& m : s.messages) {
      CHECK(m.likes == likes[m.id.value]);
      CHECK(m.comments == comments[m.id.value]);
      CHECK(m.reposts == reposts[m.id.value]);
      if (m.kind != MessageKind::Post) REQUIRE(m.parent);
      CHECK(m.stance_meta);
    }
    for (std::size_t i = 1; i < s.event_log.size(); ++i) {
      CHECK(s.event_log[i].seq == s.event_log[i - 1].seq + 1);
    }
  }

  TEST_CASE("reaction decisions use the assessed stance") {
    SimulationConfig config = small_config();
    config.reaction_like.base_prob = 1.0;
    config.reaction_like.strength_weight = 0.0;
    std::vector<Agent> agents{testing::make_agent(0, 0.5)};
    std::vector<Message> messages{testing::make_post(1, 0, 0.5)};
    StubGateway gateway;
    Rng rng(1);
    int likes = 0;
    for (int i = 0; i < 1000; ++i) {
      likes += decide_reactions(agents[0], messages[0], config, gateway, Corpus{agents, messages}, rng).like;
    }
    CHECK(likes == doctest::Approx(935).epsilon(0.05));
  }

  TEST_CASE("snapshot round trip") {
    Snapshot snap;
    snap.config = small_config(3);
    snap.seed = 3;
    snap.condition = ConditionTag{Polarization::Moderate, Bias::Contra};
    snap.state = run_stub(snap.config);
    const auto path = std::filesystem::temp_directory_path() / "polarsim_snapshot_test.json";
    save_snapshot(path, snap);
    const Snapshot back = load_snapshot(path);
    CHECK(back.config == snap.config);
    CHECK(back.condition == snap.condition);
    CHECK(back.state == snap.state);
    CHECK(back.condition->key() == "moderate_contra");
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_snapshot(path), Error);
  }

  TEST_CASE("platform statistics") {
    const SimulationState s = run_stub(small_config(8));
    const PlatformStats stats = compute_stats(s);
    CHECK(stats.overall.agents == 10);
    CHECK(stats.influencers.agents == 4);
    CHECK(stats.regular.agents == 6);
    double posts = 0;
    for (const Message& m : s.messages) posts += m.kind == MessageKind::Post;
    CHECK(stats.overall.posts == doctest::Approx(posts / 10));
    CHECK(stats.overall.followers == doctest::Approx(static_cast<double>(s.graph.edge_count()) / 10));
    std::ostringstream csv;
    write_stats_csv(csv, {{"polarized", stats}});
    const std::string text = csv.str();
    CHECK(text.rfind("condition,user_type,avg_followers,avg_followees,avg_posts,avg_likes,"
                     "avg_comments,avg_reposts\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
  }
}
