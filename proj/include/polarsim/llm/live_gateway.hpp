#pragma once

#include <map>
#include <memory>
#include <string>

#include "polarsim/llm/gateway.hpp"

namespace polarsim {

/// Chat-completion backend. Completions are cached per run by prompt text,
/// so repeated identical prompts cost one request. Retries on connection
/// failures, 429 and 5xx with exponential backoff.
class LiveGateway final : public Gateway {
 public:
  LiveGateway(LiveSettings settings, std::string api_key, std::shared_ptr<Transport> transport,
              std::optional<std::uint64_t> budget = std::nullopt, Sleeper sleeper = nullptr);

  MessageDraft generate_message(const Agent& agent, const Topic& topic, MessageKind kind,
                                const Message* reply_to, const Corpus& corpus, Rng& rng) override;
  Persona generate_persona(Opinion opinion, const Topic& topic, Rng& rng) override;
  Opinion assess_opinion(const Agent& agent, const Message& message, const Topic& topic,
                         const Corpus& corpus, Rng& rng) override;
  std::uint64_t calls_made() const noexcept override { return calls_; }

  /// Raw completion for a system/user prompt pair. Trimmed, may be empty.
  std::string complete(const std::string& system_text, const std::string& user_text);

 private:
  LiveSettings settings_;
  std::string api_key_;
  std::shared_ptr<Transport> transport_;
  std::optional<std::uint64_t> budget_;
  Sleeper sleeper_;
  std::uint64_t calls_ = 0;
  std::map<std::string, std::string> cache_;
};

}  // namespace polarsim
