#include <doctest.h>

#include <thread>

#include <httplib.h>

#include "feed_fixture.hpp"
#include "polarsim/feed/http_api.hpp"

using namespace polarsim;
using polarsim::testing::feed_snapshot;
using polarsim::testing::ManualClock;

namespace {

/// In-process server on a free port, stopped on destruction.
struct TestServer {
  ManualClock clock;
  std::unique_ptr<SessionManager> manager;
  httplib::Server server;
  std::thread thread;
  int port = 0;

  TestServer() {
    std::map<std::string, std::shared_ptr<const Snapshot>> snaps;
    snaps["polarized_pro"] = feed_snapshot();
    snaps["polarized_contra"] = feed_snapshot();
    ServiceOptions options;
    options.seed_base = 1;
    options.clock = clock;
    manager = std::make_unique<SessionManager>(snaps, options);
    mount_routes(server, *manager);
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~TestServer() {
    server.stop();
    thread.join();
  }
};

Json body_of(const httplib::Result& r) {
  REQUIRE(r);
  return Json::parse(r->body);
}

bool mentions_opinion(const Json& j) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (k == "stance_meta" || k == "opinion" || k == "stance" || k == "personality" ||
          k == "role" || mentions_opinion(v)) {
        return true;
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (mentions_opinion(v)) return true;
    }
  }
  return false;
}

}  // namespace

TEST_SUITE("http") {
  TEST_CASE("session lifecycle") {
    TestServer ts;
    httplib::Client cli("127.0.0.1", ts.port);

    auto created = cli.Post("/sessions", R"({"condition":{"polarization":"polarized","bias":"contra"}})",
                            "application/json");
    REQUIRE(created);
    CHECK(created->status == 200);
    const Json session = Json::parse(created->body);
    const std::string id = session.at("session_id");
    CHECK(session.at("duration_s") == 600);
    const std::string base = "/sessions/" + id;

    auto feed = cli.Get(base + "/feed?page=1");
    REQUIRE(feed);
    CHECK(feed->status == 200);
    const Json page = Json::parse(feed->body);
    CHECK(page.at("posts").size() == 10);
    CHECK(page.at("has_more") == true);
    CHECK_FALSE(mentions_opinion(page));

    auto post = cli.Post(base + "/posts", R"({"text":"my first post"})", "application/json");
    REQUIRE(post);
    CHECK(post->status == 200);
    const Json own = Json::parse(post->body).at("message");
    CHECK(own.at("text") == "my first post");
    const Json first = body_of(cli.Get(base + "/feed?page=1")).at("posts").at(0);
    CHECK(first.at("id") == own.at("id"));
    CHECK(first.at("own") == true);

    auto like = cli.Post(base + "/messages/5/likes", "", "application/json");
    REQUIRE(like);
    CHECK(like->status == 200);
    CHECK(Json::parse(like->body).at("target").at("likes") == 1);
    auto again = cli.Post(base + "/messages/5/likes", "", "application/json");
    REQUIRE(again);
    CHECK(again->status == 409);
    CHECK(Json::parse(again->body).at("code") == "DuplicateLike");

    auto comment = cli.Post(base + "/messages/5/comments", R"({"text":"hmm"})", "application/json");
    REQUIRE(comment);
    CHECK(comment->status == 200);
    CHECK(Json::parse(comment->body).at("message").at("parent") == 5);
    auto repost = cli.Post(base + "/messages/5/reposts", "", "application/json");
    REQUIRE(repost);
    CHECK(repost->status == 200);
    CHECK(Json::parse(repost->body).at("message").at("kind") == "repost");

    auto follow = cli.Post(base + "/follows", R"({"agent_id":2})", "application/json");
    REQUIRE(follow);
    CHECK(follow->status == 200);
    CHECK(Json::parse(follow->body).at("changed") == true);
    CHECK(body_of(cli.Post(base + "/follows", R"({"agent_id":2})", "application/json")).at("changed") ==
          false);

    const Json profile = body_of(cli.Get("/users/agent2?session=" + id));
    CHECK(profile.at("username") == "agent2");
    CHECK(profile.at("followers") == 2);
    CHECK(profile.at("followed_by_you") == true);
    CHECK_FALSE(mentions_opinion(profile));
    auto missing_user = cli.Get("/users/nobody?session=" + id);
    REQUIRE(missing_user);
    CHECK(missing_user->status == 404);

    auto unfollow = cli.Delete(base + "/follows/2");
    REQUIRE(unfollow);
    CHECK(unfollow->status == 200);

    const Json suggested = body_of(cli.Get(base + "/suggested-users"));
    CHECK(suggested.at("users").at(0).at("username") == "agent0");
    CHECK_FALSE(mentions_opinion(suggested));

    const Json events = body_of(cli.Get(base + "/events"));
    std::vector<std::string> actions;
    for (const Json& e : events.at("events")) actions.push_back(e.at("action"));
    CHECK(actions == std::vector<std::string>{"feed_served", "create_post", "feed_served", "like",
                                              "create_comment", "create_repost", "follow",
                                              "unfollow"});

    ts.clock.advance_s(601);
    auto expired = cli.Get(base + "/feed?page=1");
    REQUIRE(expired);
    CHECK(expired->status == 409);
    CHECK(Json::parse(expired->body).at("code") == "SessionExpired");
    auto late = cli.Post(base + "/posts", R"({"text":"too late"})", "application/json");
    REQUIRE(late);
    CHECK(late->status == 409);
  }

  TEST_CASE("error responses") {
    TestServer ts;
    httplib::Client cli("127.0.0.1", ts.port);
    auto unknown = cli.Get("/sessions/missing/feed");
    REQUIRE(unknown);
    CHECK(unknown->status == 404);
    CHECK(Json::parse(unknown->body).at("code") == "UnknownSession");

    const std::string id = body_of(cli.Post("/sessions", "", "application/json")).at("session_id");
    const std::string base = "/sessions/" + id;
    auto bad_page = cli.Get(base + "/feed?page=abc");
    REQUIRE(bad_page);
    CHECK(bad_page->status == 400);
    auto bad_json = cli.Post(base + "/posts", "{not json", "application/json");
    REQUIRE(bad_json);
    CHECK(bad_json->status == 400);
    auto no_text = cli.Post(base + "/posts", "{}", "application/json");
    REQUIRE(no_text);
    CHECK(no_text->status == 400);
    auto no_target = cli.Post(base + "/messages/999/likes", "", "application/json");
    REQUIRE(no_target);
    CHECK(no_target->status == 404);
    auto bad_condition =
        cli.Post("/sessions", R"({"condition":{"polarization":"moderate","bias":"pro"}})",
                 "application/json");
    REQUIRE(bad_condition);
    CHECK(bad_condition->status == 400);
    auto no_route = cli.Get("/nowhere");
    REQUIRE(no_route);
    CHECK(no_route->status == 404);
    auto no_session_param = cli.Get("/users/agent0");
    REQUIRE(no_session_param);
    CHECK(no_session_param->status == 400);
  }
}
