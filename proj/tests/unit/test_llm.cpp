#include <doctest.h>

#include <chrono>
#include <cstdlib>
#include <deque>
#include <fstream>

#include "polarsim/core/error.hpp"
#include "polarsim/core/json.hpp"
#include "polarsim/llm/lexicon.hpp"
#include "polarsim/llm/live_gateway.hpp"
#include "polarsim/llm/prompt.hpp"
#include "polarsim/llm/stub_gateway.hpp"
#include "support.hpp"

using namespace polarsim;
using polarsim::testing::make_agent;
using polarsim::testing::make_post;

namespace {

/// Replays canned responses and records every request it receives.
class FakeTransport final : public Transport {
 public:
  std::deque<HttpResponse> responses;
  std::vector<HttpRequest> requests;

  HttpResponse post(const HttpRequest& request) override {
    requests.push_back(request);
    if (responses.empty()) return HttpResponse{500, "", "no canned response"};
    HttpResponse r = responses.front();
    responses.pop_front();
    return r;
  }
};

HttpResponse completion(const std::string& content) {
  return HttpResponse{200, Json{{"choices", Json::array({Json{{"message", {{"content", content}}}}})}}.dump(), ""};
}

struct LiveFixture {
  std::shared_ptr<FakeTransport> transport = std::make_shared<FakeTransport>();
  std::vector<std::chrono::milliseconds> sleeps;

  LiveGateway make(std::optional<std::uint64_t> budget = std::nullopt) {
    LiveSettings s;
    s.max_retries = 3;
    s.backoff_base_s = 0.5;
    return LiveGateway(s, "test-key", transport, budget,
                       [this](std::chrono::milliseconds d) { sleeps.push_back(d); });
  }
};

ErrorCode code_of(const auto& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Io;
}

}  // namespace

TEST_SUITE("llm") {
  TEST_CASE("intensity tiers") {
    CHECK(intensity_tier(Opinion{0.29}) == IntensityTier::Low);
    CHECK(intensity_tier(Opinion{-0.3}) == IntensityTier::Moderate);
    CHECK(intensity_tier(Opinion{0.7}) == IntensityTier::Moderate);
    CHECK(intensity_tier(Opinion{-0.71}) == IntensityTier::High);
  }

  TEST_CASE("prompt assembly") {
    std::vector<Agent> agents{make_agent(0, 0.85), make_agent(1, -0.4)};
    agents[0].personality = "You are a passionate person who tends to share personal stories.";
    std::vector<Message> messages{make_post(1, 1, -0.4, "Targeted help works better.")};
    const Corpus corpus{agents, messages};
    const Topic topic = Topic::universal_basic_income();

    const PromptBundle post = assemble_prompt(agents[0], topic, MessageKind::Post, nullptr, corpus);
    CHECK(post.has(PromptComponentKind::OpinionValue));
    CHECK(post.has(PromptComponentKind::TopicDescription));
    CHECK(post.has(PromptComponentKind::PersonalityProfile));
    CHECK(post.has(PromptComponentKind::InteractionHistory));
    CHECK(post.has(PromptComponentKind::IntensityInstructions));
    CHECK_FALSE(post.has(PromptComponentKind::ReplyContext));
    const std::string all = post.system_text + post.user_text;
    CHECK(all.find("strong positive opinion (value: 0.85)") != std::string::npos);
    CHECK(all.find("Express strong conviction") != std::string::npos);
    CHECK(all.find("no prior interactions") != std::string::npos);

    const PromptBundle reply =
        assemble_prompt(agents[0], topic, MessageKind::Comment, &messages[0], corpus);
    REQUIRE(reply.has(PromptComponentKind::ReplyContext));
    CHECK(reply.find(PromptComponentKind::ReplyContext)->text.find("Targeted help") !=
          std::string::npos);

    CHECK(code_of([&] { assemble_prompt(agents[0], topic, MessageKind::Repost, nullptr, corpus); }) ==
          ErrorCode::MissingReplyContext);
    CHECK(code_of([&] { assemble_prompt(agents[0], topic, MessageKind::Post, &messages[0], corpus); }) ==
          ErrorCode::BadRequest);
  }

  TEST_CASE("history summary lists memory oldest first") {
    std::vector<Agent> agents{make_agent(0, 0.5), make_agent(1, -0.5)};
    std::vector<Message> messages{make_post(1, 1, -0.5, "first"), make_post(2, 1, -0.5, "second")};
    agents[0].memory.push({MemoryKind::SawMessage, MessageId{1}, 1});
    agents[0].memory.push({MemoryKind::Liked, MessageId{2}, 2});
    const std::string s = summarize_history(agents[0], Corpus{agents, messages});
    CHECK(s.find("first") < s.find("second"));
  }

  TEST_CASE("lexicon scoring") {
    const Lexicon lex = Lexicon::parse("# comment\n+support\n-costly\n\n+Fair\n");
    CHECK(lex.pro() == std::vector<std::string>{"support", "fair"});
    CHECK(lex.score("SUPPORT it, it's fair") == 1.0);
    CHECK(lex.score("too costly") == -1.0);
    CHECK(lex.score("support but costly") == 0.0);
    CHECK(lex.score("supportive") == 0.0);  // whole words only
    CHECK(lex.score("nothing here") == 0.0);
    CHECK_THROWS_AS(Lexicon::parse("support\n"), Error);
  }

  TEST_CASE("stub templates carry no stance keywords of their own") {
    const Lexicon lex = Lexicon::builtin();
    for (std::string_view t : StubGateway::all_templates()) {
      const auto hits = lex.count(t);
      CHECK_MESSAGE(hits.pro + hits.contra == 0, t);
    }
  }

  TEST_CASE("stub generation is deterministic and stance-marked") {
    std::vector<Agent> agents{make_agent(0, 0.9), make_agent(1, -0.2)};
    std::vector<Message> messages{make_post(1, 0, 0.9, "x")};
    const Corpus corpus{agents, messages};
    const Topic topic = Topic::universal_basic_income();
    StubGateway a, b;
    Rng ra(4), rb(4);
    for (int i = 0; i < 20; ++i) {
      const auto da = a.generate_message(agents[0], topic, MessageKind::Post, nullptr, corpus, ra);
      const auto db = b.generate_message(agents[0], topic, MessageKind::Post, nullptr, corpus, rb);
      CHECK(da.text == db.text);
      CHECK(da.template_tag.rfind("pro/high/post/", 0) == 0);
      CHECK(Lexicon::builtin().score(da.text) > 0);
      CHECK(da.stance_meta == Opinion{0.9});
    }
    const auto reply =
        a.generate_message(agents[1], topic, MessageKind::Repost, &messages[0], corpus, ra);
    CHECK(reply.text.rfind("Reposting: @agent0", 0) == 0);
    CHECK(reply.template_tag.find("/disagree/") != std::string::npos);
    CHECK(Lexicon::builtin().score(reply.text) < 0);
    CHECK(code_of([&] {
            a.generate_message(agents[1], topic, MessageKind::Comment, nullptr, corpus, ra);
          }) == ErrorCode::MissingReplyContext);
  }

  TEST_CASE("stub assessment") {
    std::vector<Agent> agents{make_agent(0, 0.5)};
    std::vector<Message> messages{make_post(1, 0, -0.6, "anything")};
    const Corpus corpus{agents, messages};
    const Topic topic = Topic::universal_basic_income();
    Rng rng(1);
    StubGateway exact;
    CHECK(exact.assess_opinion(agents[0], messages[0], topic, corpus, rng) == Opinion{-0.6});

    // Without stance metadata the lexicon decides.
    Message human = make_post(2, 0, std::nullopt, "I support this, it brings dignity");
    CHECK(exact.assess_opinion(agents[0], human, topic, corpus, rng).value == 1.0);

    StubGateway noisy(StubSettings{0.2, std::nullopt});
    double sum = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const Opinion o = noisy.assess_opinion(agents[0], messages[0], topic, corpus, rng);
      REQUIRE(o.valid());
      sum += o.value;
    }
    CHECK(sum / 2000 == doctest::Approx(-0.6).epsilon(0.03));
  }

  TEST_CASE("stub budget") {
    StubGateway g({}, 2);
    Rng rng(1);
    const Topic topic = Topic::universal_basic_income();
    g.generate_persona(Opinion{0.1}, topic, rng);
    g.generate_persona(Opinion{0.1}, topic, rng);
    CHECK(g.calls_made() == 2);
    CHECK(code_of([&] { g.generate_persona(Opinion{0.1}, topic, rng); }) ==
          ErrorCode::BudgetExhausted);
  }

  TEST_CASE("stub lexicon file") {
    const auto path = std::filesystem::temp_directory_path() / "polarsim_lexicon_test.txt";
    std::ofstream(path) << "+yes\n-no\n";
    StubGateway g(StubSettings{0.0, path.string()});
    std::vector<Agent> agents{make_agent(0, 0.5)};
    std::vector<Message> none;
    Rng rng(1);
    const auto d = g.generate_message(agents[0], Topic::universal_basic_income(), MessageKind::Post,
                                      nullptr, Corpus{agents, none}, rng);
    CHECK(d.text.ends_with(" #yes"));
    std::filesystem::remove(path);
  }

  TEST_CASE("assessment parsing") {
    CHECK(parse_assessment("0.4").value == doctest::Approx(0.4));
    CHECK(parse_assessment("Rating: -0.75 because...").value == doctest::Approx(-0.75));
    CHECK(parse_assessment("3").value == 1.0);
    CHECK(code_of([] { parse_assessment("no idea"); }) == ErrorCode::UnparsableAssessment);
  }

  TEST_CASE("live gateway request shape and cache") {
    LiveFixture f;
    f.transport->responses.push_back(completion("  \"Hello there\"  "));
    LiveGateway g = f.make();
    std::vector<Agent> agents{make_agent(0, 0.4)};
    std::vector<Message> none;
    Rng rng(1);
    const Topic topic = Topic::universal_basic_income();
    const auto d = g.generate_message(agents[0], topic, MessageKind::Post, nullptr, Corpus{agents, none}, rng);
    CHECK(d.text == "Hello there");
    REQUIRE(f.transport->requests.size() == 1);
    const HttpRequest& req = f.transport->requests[0];
    CHECK(req.url == LiveSettings{}.endpoint_url);
    const Json body = Json::parse(req.body);
    CHECK(body.at("model") == "gpt-4o-mini");
    CHECK(body.at("messages").size() == 2);
    bool auth = false;
    for (const auto& [k, v] : req.headers) auth |= k == "Authorization" && v == "Bearer test-key";
    CHECK(auth);
    // Same prompt again: served from cache.
    g.generate_message(agents[0], topic, MessageKind::Post, nullptr, Corpus{agents, none}, rng);
    CHECK(f.transport->requests.size() == 1);
    CHECK(g.calls_made() == 1);
  }

  TEST_CASE("live gateway retries with backoff") {
    LiveFixture f;
    f.transport->responses = {HttpResponse{0, "", "timeout"}, HttpResponse{429, "", ""},
                              HttpResponse{503, "", ""}, completion("0.3")};
    LiveGateway g = f.make();
    CHECK(g.complete("s", "u") == "0.3");
    CHECK(f.transport->requests.size() == 4);
    REQUIRE(f.sleeps.size() == 3);
    CHECK(f.sleeps[0].count() == 500);
    CHECK(f.sleeps[1].count() == 1000);
    CHECK(f.sleeps[2].count() == 2000);
  }

  TEST_CASE("live gateway failures") {
    LiveFixture f;
    f.transport->responses = {HttpResponse{400, "bad", ""}};
    LiveGateway g = f.make();
    CHECK(code_of([&] { g.complete("s", "u"); }) == ErrorCode::RemoteUnavailable);
    CHECK(f.transport->requests.size() == 1);  // 4xx other than 429 is final

    LiveFixture exhausted;
    LiveGateway h = exhausted.make();  // every response is a 500
    CHECK(code_of([&] { h.complete("s", "u"); }) == ErrorCode::RemoteUnavailable);
    CHECK(exhausted.transport->requests.size() == 4);

    LiveFixture budget;
    budget.transport->responses = {HttpResponse{500, "", ""}, completion("x")};
    LiveGateway b = budget.make(1);
    CHECK(code_of([&] { b.complete("s", "u"); }) == ErrorCode::BudgetExhausted);

    LiveFixture empty;
    empty.transport->responses = {completion("   ")};
    LiveGateway e = empty.make();
    std::vector<Agent> agents{make_agent(0, 0.4)};
    std::vector<Message> none;
    Rng rng(1);
    CHECK(code_of([&] {
            e.generate_message(agents[0], Topic::universal_basic_income(), MessageKind::Post,
                               nullptr, Corpus{agents, none}, rng);
          }) == ErrorCode::EmptyCompletion);
  }

  TEST_CASE("live persona and assessment parsing") {
    LiveFixture f;
    f.transport->responses = {
        completion("Sure! {\"username\": \"Ana Writes\", \"personality\": \"You are a curious "
                   "person who tends to ask questions.\", \"biography\": \"Nurse from Porto.\"}"),
        completion("Rating: -0.4")};
    LiveGateway g = f.make();
    Rng rng(1);
    const Persona p = g.generate_persona(Opinion{0.2}, Topic::universal_basic_income(), rng);
    CHECK(p.username.find(' ') == std::string::npos);
    CHECK(p.biography == "Nurse from Porto.");
    std::vector<Agent> agents{make_agent(0, 0.4)};
    std::vector<Message> messages{make_post(1, 0, std::nullopt, "text")};
    CHECK(g.assess_opinion(agents[0], messages[0], Topic::universal_basic_income(),
                           Corpus{agents, messages}, rng)
              .value == doctest::Approx(-0.4));
  }

  TEST_CASE("gateway factory") {
    GatewayConfig stub;
    CHECK(make_gateway(stub)->calls_made() == 0);
    GatewayConfig live;
    LiveSettings s;
    s.api_key_env_var = "POLARSIM_TEST_UNSET_KEY";
    live.mode = s;
    ::unsetenv("POLARSIM_TEST_UNSET_KEY");
    CHECK(code_of([&] { make_gateway(live); }) == ErrorCode::MissingApiKey);
    ::setenv("POLARSIM_TEST_UNSET_KEY", "k", 1);
    CHECK_NOTHROW(make_gateway(live, std::make_shared<FakeTransport>()));
    ::unsetenv("POLARSIM_TEST_UNSET_KEY");
  }
}
