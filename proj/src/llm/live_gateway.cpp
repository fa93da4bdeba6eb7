#include "polarsim/llm/live_gateway.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <regex>
#include <thread>

#include "polarsim/core/error.hpp"
#include "polarsim/core/json.hpp"
#include "polarsim/llm/prompt.hpp"
#include "polarsim/llm/stub_gateway.hpp"

namespace polarsim {
namespace {

constexpr std::size_t kMaxMessageChars = 500;

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::string truncate_utf8(std::string s, std::size_t limit) {
  if (s.size() <= limit) return s;
  std::size_t cut = limit;
  while (cut > 0 && (static_cast<unsigned char>(s[cut]) & 0xC0) == 0x80) --cut;
  s.resize(cut);
  return s;
}

std::string strip_quotes(std::string s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::string sanitize_handle(std::string_view raw) {
  std::string out;
  for (char ch : raw) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c == '_') out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out.substr(0, 24);
}

bool retryable(int status) { return status == 0 || status == 429 || status >= 500; }

}  // namespace

Opinion parse_assessment(std::string_view completion) {
  static const std::regex kNumber(R"([-+]?(?:\d+(?:\.\d*)?|\.\d+))");
  std::match_results<std::string_view::const_iterator> match;
  if (!std::regex_search(completion.begin(), completion.end(), match, kNumber)) {
    throw Error(ErrorCode::UnparsableAssessment,
                "no number in assessment: \"" + std::string(completion.substr(0, 80)) + "\"");
  }
  return Opinion::clamped(std::strtod(match.str().c_str(), nullptr));
}

void GatewayConfig::validate() const {
  if (const auto* live = std::get_if<LiveSettings>(&mode)) {
    if (!(live->timeout_s > 0.0)) throw Error(ErrorCode::InvalidConfig, "timeout must be > 0");
    if (live->max_retries < 0) throw Error(ErrorCode::InvalidConfig, "max_retries must be >= 0");
    if (live->endpoint_url.empty() || live->model_name.empty() || live->api_key_env_var.empty()) {
      throw Error(ErrorCode::InvalidConfig, "live gateway needs endpoint, model and key variable");
    }
  } else {
    const auto& stub = std::get<StubSettings>(mode);
    if (!(stub.noise_sigma >= 0.0)) {
      throw Error(ErrorCode::InvalidConfig, "noise_sigma must be >= 0");
    }
  }
}

LiveGateway::LiveGateway(LiveSettings settings, std::string api_key,
                         std::shared_ptr<Transport> transport, std::optional<std::uint64_t> budget,
                         Sleeper sleeper)
    : settings_(std::move(settings)),
      api_key_(std::move(api_key)),
      transport_(std::move(transport)),
      budget_(budget),
      sleeper_(sleeper ? std::move(sleeper)
                       : Sleeper([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); })) {}

std::string LiveGateway::complete(const std::string& system_text, const std::string& user_text) {
  const std::string key = system_text + '\x1f' + user_text;
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  Json body{{"model", settings_.model_name},
            {"temperature", settings_.temperature},
            {"messages",
             Json::array({Json{{"role", "system"}, {"content", system_text}},
                          Json{{"role", "user"}, {"content", user_text}}})}};
  HttpRequest request{settings_.endpoint_url,
                      {{"Authorization", "Bearer " + api_key_}, {"Content-Type", "application/json"}},
                      body.dump(),
                      settings_.timeout_s};

  HttpResponse response;
  for (int attempt = 0; attempt <= settings_.max_retries; ++attempt) {
    if (attempt > 0) {
      const double delay_s = settings_.backoff_base_s * std::ldexp(1.0, attempt - 1);
      sleeper_(std::chrono::milliseconds(static_cast<long long>(delay_s * 1000.0)));
    }
    if (budget_ && calls_ >= *budget_) {
      throw Error(ErrorCode::BudgetExhausted,
                  "gateway request budget of " + std::to_string(*budget_) + " exhausted");
    }
    ++calls_;
    response = transport_->post(request);
    if (response.status >= 200 && response.status < 300) break;
    if (!retryable(response.status)) break;
  }
  if (response.status < 200 || response.status >= 300) {
    throw Error(ErrorCode::RemoteUnavailable,
                "completion request failed (status " + std::to_string(response.status) + ") " +
                    response.error);
  }

  std::string content;
  try {
    const Json parsed = Json::parse(response.body);
    const Json& message = parsed.at("choices").at(0).at("message");
    if (message.contains("content") && message["content"].is_string()) {
      content = message["content"].get<std::string>();
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::RemoteUnavailable, std::string("malformed completion: ") + e.what());
  }
  content = trim(content);
  cache_.emplace(key, content);
  return content;
}

MessageDraft LiveGateway::generate_message(const Agent& agent, const Topic& topic,
                                           MessageKind kind, const Message* reply_to,
                                           const Corpus& corpus, Rng&) {
  const PromptBundle bundle = assemble_prompt(agent, topic, kind, reply_to, corpus);
  std::string text = strip_quotes(complete(bundle.system_text, bundle.user_text));
  text = truncate_utf8(trim(text), kMaxMessageChars);
  if (text.empty()) throw Error(ErrorCode::EmptyCompletion, "model returned an empty message");
  const Opinion o = *agent.opinion;
  std::string tag = std::string(o.side() > 0 ? "pro/" : "contra/") +
                    std::string(to_string(intensity_tier(o))) + "/" +
                    std::string(to_string(kind)) + "/live";
  return MessageDraft{std::move(text), o, std::move(tag)};
}

Persona LiveGateway::generate_persona(Opinion opinion, const Topic& topic, Rng& rng) {
  // The seed-derived hint keeps otherwise identical persona prompts distinct
  // so the completion cache does not hand every agent the same persona.
  const std::string system_text =
      "You create realistic, varied social media user profiles. Respond with a JSON object with "
      "the string fields \"username\", \"personality\" and \"biography\" and nothing else.";
  char opinion_text[32];
  std::snprintf(opinion_text, sizeof opinion_text, "%.2f", opinion.value);
  const std::string user_text =
      "Create a user who will discuss " + topic.name + ". Their stance on the topic is " +
      opinion_text + " on a scale from -1 (strongly against) to 1 (strongly in favor), but the "
      "biography must not state it. The personality must read \"You are a <trait> person who "
      "tends to <communication style>.\" The biography is one or two short sentences. The "
      "username is lowercase, without spaces. Variation hint: " +
      std::to_string(rng.next_u64() % 100000) + ".";
  const std::string completion = complete(system_text, user_text);

  const auto open = completion.find('{');
  const auto close = completion.rfind('}');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    throw Error(ErrorCode::EmptyCompletion, "persona completion has no JSON object");
  }
  Persona p;
  try {
    const Json j = Json::parse(completion.substr(open, close - open + 1));
    p.username = sanitize_handle(j.value("username", ""));
    p.personality = trim(j.value("personality", ""));
    p.biography = trim(j.value("biography", ""));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::EmptyCompletion, std::string("persona JSON unreadable: ") + e.what());
  }
  if (p.username.empty() || p.personality.empty() || p.biography.empty()) {
    throw Error(ErrorCode::EmptyCompletion, "persona completion is missing fields");
  }
  return p;
}

Opinion LiveGateway::assess_opinion(const Agent& agent, const Message& message, const Topic& topic,
                                    const Corpus& corpus, Rng&) {
  if (message.text.empty()) throw Error(ErrorCode::BadRequest, "cannot assess an empty message");
  const std::string system_text =
      "You rate the stance that social media messages take on " + topic.name +
      ". Answer with a single decimal number between -1 and 1: -1 is strong opposition, 0 is "
      "neutral or unclear, 1 is strong support. Output the number only.";
  char opinion_text[32];
  std::snprintf(opinion_text, sizeof opinion_text, "%.2f",
                agent.opinion ? agent.opinion->value : 0.0);
  std::string user_text = "Topic: " + topic.description + "\n\n";
  user_text += "You are rating as this reader. " + agent.personality + " Their own stance is " +
               opinion_text + ".\nTheir recent activity:\n" + summarize_history(agent, corpus) +
               "\n\n";
  user_text +=
      "Example: \"A guaranteed income would finally give everyone a floor to stand on.\" -> 0.7\n"
      "Example: \"Paying people not to work will wreck the economy.\" -> -0.8\n\n";
  user_text += "Message: \"" + message.text + "\"\nRating:";
  return parse_assessment(complete(system_text, user_text));
}

std::unique_ptr<Gateway> make_gateway(const GatewayConfig& config,
                                      std::shared_ptr<Transport> transport, Sleeper sleeper) {
  config.validate();
  if (const auto* live = std::get_if<LiveSettings>(&config.mode)) {
    const char* key = std::getenv(live->api_key_env_var.c_str());
    if (key == nullptr || *key == '\0') {
      throw Error(ErrorCode::MissingApiKey,
                  "environment variable " + live->api_key_env_var + " is not set");
    }
    if (!transport) transport = make_http_transport();
    return std::make_unique<LiveGateway>(*live, key, std::move(transport), config.request_budget,
                                         std::move(sleeper));
  }
  return std::make_unique<StubGateway>(std::get<StubSettings>(config.mode), config.request_budget);
}

}  // namespace polarsim
