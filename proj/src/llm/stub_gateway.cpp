#include "polarsim/llm/stub_gateway.hpp"

#include <algorithm>
#include <array>
#include <span>
#include <string>

#include "polarsim/core/error.hpp"
#include "polarsim/core/json.hpp"
#include "polarsim/llm/prompt.hpp"

namespace polarsim {
namespace {

// Template text must not contain any built-in lexicon keyword; the keyword
// is appended as a hashtag so the stance marker is explicit and countable.
// Index: [side: 0 pro, 1 contra][tier: low, moderate, high].
using Bank = std::array<std::array<std::array<std::string_view, 3>, 3>, 2>;
using ReplyBank = std::array<std::array<std::array<std::array<std::string_view, 2>, 2>, 3>, 2>;

constexpr Bank kPosts{{
    {{
        {{"I might lean toward {topic}, but honestly I'm not sure. If the pilots hold up at "
          "scale it could work; if not, we should rethink.",
          "There are good arguments on several sides of {topic}. Perhaps a careful trial would "
          "tell us more than another debate.",
          "Still undecided on {topic}. It could help some people, though I can see why others "
          "hesitate."}},
        {{"I'm fairly convinced {topic} is worth trying. The pilots look promising, even if "
          "the skeptics raise a few points worth hearing.",
          "People like us who have seen precarious work up close tend to back {topic}. The "
          "criticism feels overstated to me.",
          "The case for {topic} keeps getting stronger. Not perfect, but better than patching "
          "the current system again."}},
        {{"{topic} is long overdue and I refuse to stay quiet about it. Every person deserves "
          "a guaranteed floor, and those blocking it are fighting against all of us!",
          "Enough excuses. {topic} would change millions of lives overnight and the people "
          "standing in the way know it. We will not back down!",
          "Our side sees the truth: {topic} is the only serious answer to automation and "
          "poverty. The other camp is gambling with real families."}},
    }},
    {{
        {{"I'm not sure {topic} is the right tool. Maybe it works in some places, but I have "
          "doubts about scaling it.",
          "If {topic} were tested carefully I might change my mind, but for now I'm hesitant.",
          "Hard to say with {topic}. There are reasonable points on both sides, though I lean "
          "toward caution."}},
        {{"I remain skeptical of {topic}. The numbers rarely add up, even if the intentions "
          "behind it are understandable.",
          "Those of us who run small businesses see the risks of {topic} clearly. Targeted help "
          "seems smarter to me.",
          "The evidence for {topic} is thinner than its fans claim. I'd rather fix the programs "
          "we already have."}},
        {{"{topic} is a fantasy that will wreck the economy, and its cheerleaders refuse to see "
          "it. We have to stop this before it is too late!",
          "Paying everyone for nothing? {topic} is an attack on hard work itself, and everyone "
          "on our side knows where it leads.",
          "Wake up. {topic} is a trap sold by people who will never pay for it. This would be a "
          "disaster for working families!"}},
    }},
}};

// Index: [side][tier][0 agree, 1 disagree][pick].
constexpr ReplyBank kReplies{{
    {{
        {{{{"@{user} That seems reasonable, though I'm still unsure how {topic} would scale.",
            "@{user} Maybe so. If the trials keep going well, {topic} might deserve a chance."}},
          {{"@{user} I'm not certain you're right, but I'm not certain of much on {topic} "
            "either.",
            "@{user} Perhaps, though there may be more to {topic} than that."}}}},
        {{{{"@{user} Good point, and it matches what the {topic} pilots found.",
            "@{user} Agreed. There is room to refine the details, but {topic} is heading the "
            "right way."}},
          {{"@{user} I see the concern, but I think you underestimate what {topic} could do.",
            "@{user} Respectfully, the data on {topic} tells a different story."}}}},
        {{{{"@{user} Exactly! This is why {topic} cannot wait another year. Stand firm!",
            "@{user} Couldn't have said it better. Our movement for {topic} is unstoppable."}},
          {{"@{user} This is precisely the fearmongering that keeps people poor. {topic} works "
            "and you know it!",
            "@{user} Absolutely wrong. Your side keeps blocking {topic} while families "
            "suffer."}}}},
    }},
    {{
        {{{{"@{user} Maybe you're right. I'm cautious about {topic} as well, though not "
            "certain.",
            "@{user} That could be true. I have mixed feelings about {topic}."}},
          {{"@{user} Possibly, but I still have some doubts about {topic}.",
            "@{user} I'm not sure. {topic} might help some, yet I hesitate."}}}},
        {{{{"@{user} Well put. The math behind {topic} still worries me too.",
            "@{user} Agreed, targeted programs make more sense than {topic}."}},
          {{"@{user} I understand the appeal, but {topic} leaves too many questions open.",
            "@{user} I doubt it. The pilots behind {topic} were too small to prove much."}}}},
        {{{{"@{user} Exactly! {topic} would be a catastrophe and we must keep saying it.",
            "@{user} Finally someone says it. The {topic} crowd is leading us off a cliff."}},
          {{"@{user} This is naive nonsense. {topic} would destroy the incentive to build "
            "anything.",
            "@{user} Completely wrong. People like you never explain who pays for "
            "{topic}!"}}}},
    }},
}};

constexpr std::array<std::string_view, 30> kFirstNames{
    "alex",  "maya",  "jordan", "priya", "liam",   "sofia", "noah",  "amara", "lukas", "chen",
    "fatima", "diego", "hannah", "omar", "elena",  "kofi",  "ingrid", "mateo", "yuki", "zara",
    "samir", "clara", "tobias", "nadia", "felix",  "aisha", "jonas", "leila", "marco", "freya"};
constexpr std::array<std::string_view, 8> kHandleSuffixes{"writes", "talks", "thinks", "daily",
                                                          "notes",  "views", "online", "here"};
constexpr std::array<std::string_view, 8> kTraits{"thoughtful", "passionate", "analytical",
                                                  "pragmatic",  "outspoken",  "curious",
                                                  "empathetic", "reserved"};
constexpr std::array<std::string_view, 6> kStyles{
    "ask probing questions before taking a side", "share personal stories",
    "cite numbers and studies", "get straight to the point", "use humor to make a point",
    "write long, careful replies"};
constexpr std::array<std::string_view, 12> kOccupations{
    "Teacher",       "Nurse",      "Software developer", "Small business owner",
    "Retired engineer", "Student", "Bus driver",         "Economist",
    "Social worker", "Farmer",     "Graphic designer",   "Accountant"};
constexpr std::array<std::string_view, 10> kCities{"Leeds",   "Austin",  "Lyon",   "Hamburg",
                                                   "Toronto", "Melbourne", "Dublin", "Porto",
                                                   "Denver",  "Utrecht"};
constexpr std::array<std::string_view, 8> kInterests{
    "local politics", "hiking", "jazz", "personal finance", "gardening", "tech news",
    "history podcasts", "football"};

template <std::size_t N>
std::string_view pick(const std::array<std::string_view, N>& items, Rng& rng) {
  return items[rng.index(N)];
}

std::string replace_all(std::string text, std::string_view key, std::string_view value) {
  for (std::size_t pos = text.find(key); pos != std::string::npos;
       pos = text.find(key, pos + value.size())) {
    text.replace(pos, key.size(), value);
  }
  return text;
}

std::size_t tier_index(IntensityTier t) {
  switch (t) {
    case IntensityTier::Low: return 0;
    case IntensityTier::Moderate: return 1;
    case IntensityTier::High: return 2;
  }
  return 0;
}

}  // namespace

std::span<const std::string_view> StubGateway::all_templates() {
  static const std::vector<std::string_view> all = [] {
    std::vector<std::string_view> v;
    for (const auto& side : kPosts)
      for (const auto& tier : side)
        for (auto t : tier) v.push_back(t);
    for (const auto& side : kReplies)
      for (const auto& tier : side)
        for (const auto& stance : tier)
          for (auto t : stance) v.push_back(t);
    return v;
  }();
  return all;
}

StubGateway::StubGateway(StubSettings settings, std::optional<std::uint64_t> budget)
    : settings_(std::move(settings)),
      budget_(budget),
      lexicon_(settings_.lexicon_path ? Lexicon::load(*settings_.lexicon_path)
                                      : Lexicon::builtin()) {}

void StubGateway::charge() {
  if (budget_ && calls_ >= *budget_) {
    throw Error(ErrorCode::BudgetExhausted,
                "gateway request budget of " + std::to_string(*budget_) + " exhausted");
  }
  ++calls_;
}

MessageDraft StubGateway::generate_message(const Agent& agent, const Topic& topic,
                                           MessageKind kind, const Message* reply_to,
                                           const Corpus& corpus, Rng& rng) {
  if (kind != MessageKind::Post && reply_to == nullptr) {
    throw Error(ErrorCode::MissingReplyContext, "comments and reposts need the original message");
  }
  if (!agent.opinion) throw Error(ErrorCode::BadRequest, "agent has no opinion");
  charge();

  const Opinion o = *agent.opinion;
  const IntensityTier tier = intensity_tier(o);
  const std::size_t side = o.side() > 0 ? 0 : 1;
  const std::size_t t = tier_index(tier);

  std::string tag = std::string(side == 0 ? "pro/" : "contra/") + std::string(to_string(tier)) +
                    "/" + std::string(to_string(kind));
  std::string text;
  if (kind == MessageKind::Post) {
    const std::size_t idx = rng.index(kPosts[side][t].size());
    text = std::string(kPosts[side][t][idx]);
    tag += "/" + std::to_string(idx);
  } else {
    const int parent_side = reply_to->stance_meta ? reply_to->stance_meta->side()
                            : lexicon_.score(reply_to->text) >= 0.0 ? 1
                                                                    : -1;
    const std::size_t stance = parent_side == o.side() ? 0 : 1;
    const auto& choices = kReplies[side][t][stance];
    const std::size_t idx = rng.index(choices.size());
    text = std::string(choices[idx]);
    const Agent* parent_author = corpus.find_agent(reply_to->author);
    text = replace_all(std::move(text), "{user}", parent_author ? parent_author->username : "someone");
    if (kind == MessageKind::Repost) text = "Reposting: " + text;
    tag += std::string(stance == 0 ? "/agree/" : "/disagree/") + std::to_string(idx);
  }
  text = replace_all(std::move(text), "{topic}", topic.name);
  const auto& keywords = lexicon_.for_side(o.side());
  text += " #" + keywords[rng.index(keywords.size())];
  return MessageDraft{std::move(text), o, std::move(tag)};
}

Persona StubGateway::generate_persona(Opinion, const Topic&, Rng& rng) {
  charge();
  Persona p;
  p.username = std::string(pick(kFirstNames, rng)) + "_" + std::string(pick(kHandleSuffixes, rng));
  p.personality = "You are a " + std::string(pick(kTraits, rng)) + " person who tends to " +
                  std::string(pick(kStyles, rng)) + ".";
  const auto occupation = pick(kOccupations, rng);
  const auto city = pick(kCities, rng);
  const auto interest = pick(kInterests, rng);
  p.biography = std::string(occupation) + " from " + std::string(city) + ". Into " +
                std::string(interest) + ".";
  return p;
}

Opinion StubGateway::assess_opinion(const Agent&, const Message& message, const Topic&,
                                    const Corpus&, Rng& rng) {
  if (message.text.empty()) throw Error(ErrorCode::BadRequest, "cannot assess an empty message");
  charge();
  if (message.stance_meta) {
    double v = message.stance_meta->value;
    if (settings_.noise_sigma > 0.0) v = rng.normal(v, settings_.noise_sigma);
    return Opinion::clamped(v);
  }
  return Opinion::clamped(lexicon_.score(message.text));
}

}  // namespace polarsim
