#pragma once

#include <span>
#include <string_view>

#include "polarsim/llm/gateway.hpp"
#include "polarsim/llm/lexicon.hpp"

namespace polarsim {

/// Offline backend. Messages come from a phrase bank keyed by stance side,
/// intensity tier and message kind, each tagged with a lexicon keyword of
/// the author's side. Assessment returns the recorded stance (plus optional
/// Gaussian noise) or, for messages without one, the lexicon score.
/// Never touches the network.
///
/// Draw order: generate_message takes one draw for the template and one for
/// the keyword; generate_persona takes seven; assess_opinion takes two only
/// when noise_sigma > 0.
class StubGateway final : public Gateway {
 public:
  explicit StubGateway(StubSettings settings = {},
                       std::optional<std::uint64_t> budget = std::nullopt);

  MessageDraft generate_message(const Agent& agent, const Topic& topic, MessageKind kind,
                                const Message* reply_to, const Corpus& corpus, Rng& rng) override;
  Persona generate_persona(Opinion opinion, const Topic& topic, Rng& rng) override;
  Opinion assess_opinion(const Agent& agent, const Message& message, const Topic& topic,
                         const Corpus& corpus, Rng& rng) override;
  std::uint64_t calls_made() const noexcept override { return calls_; }

  const Lexicon& lexicon() const noexcept { return lexicon_; }

  /// Every template in the phrase bank, with placeholders unexpanded.
  static std::span<const std::string_view> all_templates();

 private:
  void charge();

  StubSettings settings_;
  std::optional<std::uint64_t> budget_;
  Lexicon lexicon_;
  std::uint64_t calls_ = 0;
};

}  // namespace polarsim
