#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "polarsim/core/types.hpp"

namespace polarsim {

enum class IntensityTier { Low, Moderate, High };

/// Low below 0.3, High above 0.7, Moderate on the closed interval between.
IntensityTier intensity_tier(Opinion o) noexcept;
std::string_view to_string(IntensityTier t) noexcept;

enum class PromptComponentKind {
  OpinionValue,
  TopicDescription,
  PersonalityProfile,
  InteractionHistory,
  IntensityInstructions,
  ReplyContext,
};

std::string_view to_string(PromptComponentKind k) noexcept;

struct PromptComponent {
  PromptComponentKind kind{};
  std::string text;
};

struct PromptBundle {
  std::string system_text;
  std::string user_text;
  std::vector<PromptComponent> components;

  const PromptComponent* find(PromptComponentKind kind) const;
  bool has(PromptComponentKind kind) const { return find(kind) != nullptr; }
};

/// Guidance text for each tier.
std::string_view intensity_instructions(IntensityTier tier) noexcept;

/// One line per memory entry, oldest first, or a "no prior interactions"
/// sentence when memory is empty.
std::string summarize_history(const Agent& agent, const Corpus& corpus);

/// Builds the generation prompt for a post, comment or repost.
/// Throws Error{MissingReplyContext} when kind is Comment/Repost without
/// reply_to, and Error{BadRequest} when a Post is given a reply_to or the
/// agent has no opinion.
PromptBundle assemble_prompt(const Agent& agent, const Topic& topic, MessageKind kind,
                             const Message* reply_to, const Corpus& corpus);

}  // namespace polarsim
