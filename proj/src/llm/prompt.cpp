#include "polarsim/llm/prompt.hpp"

#include <cstdio>
#include <string>

#include "polarsim/core/error.hpp"

namespace polarsim {
namespace {

std::string format_opinion(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string snippet(const std::string& text, std::size_t limit = 120) {
  if (text.size() <= limit) return text;
  std::size_t cut = limit;
  // Avoid splitting a UTF-8 sequence.
  while (cut > 0 && (static_cast<unsigned char>(text[cut]) & 0xC0) == 0x80) --cut;
  return text.substr(0, cut) + "...";
}

std::string author_handle(const Corpus& corpus, const Message& m) {
  const Agent* a = corpus.find_agent(m.author);
  return a ? "@" + a->username : "an unknown user";
}

std::string_view stance_verb(const Agent& agent, const Message& m) {
  if (!m.stance_meta || !agent.opinion) return "reacted to";
  return m.stance_meta->side() == agent.opinion->side() ? "agreed with" : "disagreed with";
}

}  // namespace

IntensityTier intensity_tier(Opinion o) noexcept {
  const double m = o.magnitude();
  if (m < 0.3) return IntensityTier::Low;
  if (m > 0.7) return IntensityTier::High;
  return IntensityTier::Moderate;
}

std::string_view to_string(IntensityTier t) noexcept {
  switch (t) {
    case IntensityTier::Low: return "low";
    case IntensityTier::Moderate: return "moderate";
    case IntensityTier::High: return "high";
  }
  return "unknown";
}

std::string_view to_string(PromptComponentKind k) noexcept {
  switch (k) {
    case PromptComponentKind::OpinionValue: return "opinion_value";
    case PromptComponentKind::TopicDescription: return "topic_description";
    case PromptComponentKind::PersonalityProfile: return "personality_profile";
    case PromptComponentKind::InteractionHistory: return "interaction_history";
    case PromptComponentKind::IntensityInstructions: return "intensity_instructions";
    case PromptComponentKind::ReplyContext: return "reply_context";
  }
  return "unknown";
}

const PromptComponent* PromptBundle::find(PromptComponentKind kind) const {
  for (const auto& c : components) {
    if (c.kind == kind) return &c;
  }
  return nullptr;
}

std::string_view intensity_instructions(IntensityTier tier) noexcept {
  switch (tier) {
    case IntensityTier::Low:
      return "Use balanced argumentation and acknowledge multiple perspectives. Prefer "
             "conditional statements, keep group identification minimal and emphasize "
             "uncertainty.";
    case IntensityTier::Moderate:
      return "Show a clear directional bias and a preference for your own side. Be moderately "
             "skeptical of opposing views and let emotional undertones show while keeping the "
             "discourse reasoned.";
    case IntensityTier::High:
      return "Express strong conviction and emotional investment. Use strong emotional language, "
             "pronounced group identification and hyperbolic terminology, and portray opposing "
             "views as threats.";
  }
  return "";
}

std::string summarize_history(const Agent& agent, const Corpus& corpus) {
  if (agent.memory.empty()) return "You have no prior interactions on this platform yet.";
  std::string out;
  for (const MemoryEntry& e : agent.memory.entries()) {
    const Message* m = corpus.find_message(e.message_id);
    if (!m) continue;
    const std::string who = author_handle(corpus, *m);
    const std::string quoted = "\"" + snippet(m->text) + "\"";
    std::string line;
    switch (e.kind) {
      case MemoryKind::AuthoredPost: line = "You recently posted: " + quoted; break;
      case MemoryKind::AuthoredComment: line = "You recently commented: " + quoted; break;
      case MemoryKind::AuthoredRepost: line = "You recently reposted with the note: " + quoted; break;
      case MemoryKind::SawMessage:
        line = "You recently read a message by " + who + ": " + quoted;
        break;
      case MemoryKind::Liked:
      case MemoryKind::Commented:
      case MemoryKind::Reposted:
        line = "You recently " + std::string(stance_verb(agent, *m)) + " user " + who + " about: " +
               quoted;
        break;
    }
    if (!out.empty()) out += '\n';
    out += line;
  }
  return out.empty() ? "You have no prior interactions on this platform yet." : out;
}

PromptBundle assemble_prompt(const Agent& agent, const Topic& topic, MessageKind kind,
                             const Message* reply_to, const Corpus& corpus) {
  if (kind != MessageKind::Post && reply_to == nullptr) {
    throw Error(ErrorCode::MissingReplyContext, "comments and reposts need the original message");
  }
  if (kind == MessageKind::Post && reply_to != nullptr) {
    throw Error(ErrorCode::BadRequest, "posts do not reply to a message");
  }
  if (!agent.opinion) {
    throw Error(ErrorCode::BadRequest, "agent '" + agent.username + "' has no opinion");
  }
  const Opinion o = *agent.opinion;
  const IntensityTier tier = intensity_tier(o);
  const std::string_view strength = tier == IntensityTier::High       ? "strong"
                                    : tier == IntensityTier::Moderate ? "moderate"
                                                                      : "weak";
  const std::string_view direction = o.side() > 0 ? "positive" : "negative";

  PromptBundle bundle;
  bundle.components.push_back(
      {PromptComponentKind::OpinionValue,
       "You hold a " + std::string(strength) + " " + std::string(direction) +
           " opinion (value: " + format_opinion(o.value) + ") on this topic."});
  bundle.components.push_back({PromptComponentKind::TopicDescription, topic.description});
  bundle.components.push_back({PromptComponentKind::PersonalityProfile, agent.personality});
  bundle.components.push_back(
      {PromptComponentKind::InteractionHistory, summarize_history(agent, corpus)});
  bundle.components.push_back(
      {PromptComponentKind::IntensityInstructions, std::string(intensity_instructions(tier))});

  std::string_view form = "post";
  if (reply_to != nullptr) {
    form = kind == MessageKind::Comment ? "comment" : "repost note";
    const std::string lead = kind == MessageKind::Comment ? "You are replying to "
                                                          : "You are reposting a message by ";
    bundle.components.push_back(
        {PromptComponentKind::ReplyContext,
         lead + author_handle(corpus, *reply_to) + ", who wrote: \"" + reply_to->text +
             "\". Directly address, agree, or disagree with specific points or ideas from "
             "the original message."});
  }

  bundle.system_text = "You are " + agent.username + ", a user of a social media platform "
                       "discussing " + topic.name + ". Write a single " + std::string(form) +
                       " of at most 280 characters. Reply with the message text only.";
  for (const auto& c : bundle.components) {
    if (!bundle.user_text.empty()) bundle.user_text += "\n\n";
    bundle.user_text += c.text;
  }
  return bundle;
}

}  // namespace polarsim
