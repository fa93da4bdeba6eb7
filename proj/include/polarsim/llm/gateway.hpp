#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "polarsim/core/types.hpp"
#include "polarsim/llm/transport.hpp"
#include "polarsim/stochastic/rng.hpp"

namespace polarsim {

struct LiveSettings {
  std::string endpoint_url = "https://api.openai.com/v1/chat/completions";
  std::string model_name = "gpt-4o-mini";
  std::string api_key_env_var = "OPENAI_API_KEY";
  double timeout_s = 30.0;
  int max_retries = 3;
  double backoff_base_s = 0.5;
  double temperature = 0.9;

  friend bool operator==(const LiveSettings&, const LiveSettings&) = default;
};

struct StubSettings {
  double noise_sigma = 0.0;
  std::optional<std::string> lexicon_path;  // built-in lexicon when unset

  friend bool operator==(const StubSettings&, const StubSettings&) = default;
};

struct GatewayConfig {
  std::variant<StubSettings, LiveSettings> mode = StubSettings{};
  std::optional<std::uint64_t> request_budget;

  bool is_live() const noexcept { return std::holds_alternative<LiveSettings>(mode); }
  void validate() const;

  friend bool operator==(const GatewayConfig&, const GatewayConfig&) = default;
};

struct MessageDraft {
  std::string text;
  Opinion stance_meta;
  // Identifies the template family or prompt path, e.g. "pro/high/comment/2".
  std::string template_tag;
};

struct Persona {
  std::string personality;
  std::string biography;
  std::string username;
};

/// Content generation and opinion assessment. Implementations may keep
/// per-run state (budget counters, caches) and are not thread-safe.
class Gateway {
 public:
  virtual ~Gateway() = default;

  virtual MessageDraft generate_message(const Agent& agent, const Topic& topic, MessageKind kind,
                                        const Message* reply_to, const Corpus& corpus,
                                        Rng& rng) = 0;

  virtual Persona generate_persona(Opinion opinion, const Topic& topic, Rng& rng) = 0;

  /// Stance of `message` as perceived by `agent`, always within [-1, 1].
  virtual Opinion assess_opinion(const Agent& agent, const Message& message, const Topic& topic,
                                 const Corpus& corpus, Rng& rng) = 0;

  /// Calls charged against the request budget so far.
  virtual std::uint64_t calls_made() const noexcept = 0;
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

/// Builds the configured backend. Live mode reads the API key from the
/// configured environment variable and throws Error{MissingApiKey} when it
/// is unset; `transport` defaults to the HTTP client.
std::unique_ptr<Gateway> make_gateway(const GatewayConfig& config,
                                      std::shared_ptr<Transport> transport = nullptr,
                                      Sleeper sleeper = nullptr);

/// Extracts the first decimal number in `completion` and clamps it to
/// [-1, 1]. Throws Error{UnparsableAssessment} when there is none.
Opinion parse_assessment(std::string_view completion);

}  // namespace polarsim
