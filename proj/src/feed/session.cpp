#include "polarsim/feed/session.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_set>

#include "polarsim/core/error.hpp"

namespace polarsim {
namespace {

struct Ranked {
  MessageId id;
  double score;
};

bool by_rank(const Ranked& a, const Ranked& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.id > b.id;
}

std::string participant_username(const SimulationState& state) {
  std::unordered_set<std::string> taken;
  for (const Agent& a : state.agents) taken.insert(a.username);
  std::string name = "participant";
  for (int suffix = 2; taken.contains(name); ++suffix) name = "participant" + std::to_string(suffix);
  return name;
}

}  // namespace

std::int64_t system_clock_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

void SessionOptions::validate() const {
  weights.validate();
  if (page_size == 0) throw Error(ErrorCode::InvalidConfig, "feed page_size must be >= 1");
  if (duration_s <= 0) throw Error(ErrorCode::InvalidConfig, "session duration must be > 0");
}

void to_json(Json& j, const SessionOptions& o) {
  j = Json{{"weights", o.weights},
           {"page_size", o.page_size},
           {"duration_s", o.duration_s},
           {"suggested_users", o.suggested_users}};
}

void from_json(const Json& j, SessionOptions& o) {
  read_optional(j, "weights", o.weights);
  read_optional(j, "page_size", o.page_size);
  read_optional(j, "duration_s", o.duration_s);
  read_optional(j, "suggested_users", o.suggested_users);
}

JsonlEventSink::JsonlEventSink(const std::filesystem::path& path, const Json& header) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  out_.open(path, std::ios::out | std::ios::trunc);
  if (!out_) throw Error(ErrorCode::Io, "cannot open event log " + path.string());
  out_ << header.dump() << '\n';
  out_.flush();
}

void JsonlEventSink::append(const SessionEvent& event) {
  out_ << Json(event).dump() << '\n';
  out_.flush();
  if (!out_) throw Error(ErrorCode::Io, "failed to write session event");
}

Session::Session(std::string id, ConditionTag condition, std::shared_ptr<const Snapshot> snapshot,
                 SessionOptions options, std::uint64_t seed, Clock clock,
                 std::unique_ptr<EventSink> sink)
    : id_(std::move(id)),
      condition_(condition),
      snapshot_(std::move(snapshot)),
      options_(std::move(options)),
      seed_(seed),
      rng_(seed),
      clock_(clock ? std::move(clock) : Clock(system_clock_ms)),
      sink_(std::move(sink)),
      started_at_ms_(clock_()),
      state_(snapshot_->state) {
  options_.validate();
  Agent participant;
  participant.username = participant_username(state_);
  participant.personality = "Human participant";
  participant.memory = Memory(snapshot_->config.memory_capacity);
  participant_ = state_.add_agent(std::move(participant));
  base_events_ = state_.event_log.size();
}

bool Session::expired() const { return remaining_ms() <= 0; }

std::int64_t Session::remaining_ms() const {
  return started_at_ms_ + options_.duration_s * 1000 - clock_();
}

void Session::ensure_active() const {
  if (expired()) throw Error(ErrorCode::SessionExpired, "session " + id_ + " has expired");
}

bool Session::is_artificial(AgentId id) const {
  return id != participant_ && id.value < state_.agents.size() && state_.agents[id.value].opinion;
}

const SessionEvent& Session::log(SessionEvent event) {
  event.wallclock_ms = clock_();
  const SessionEvent& recorded = record_event(state_, std::move(event));
  if (sink_) sink_->append(recorded);
  return recorded;
}

FeedPage Session::get_feed(std::size_t page) {
  ensure_active();
  if (page == 0) throw Error(ErrorCode::BadRequest, "pages are numbered from 1");

  // Top-level items by artificial agents, in ascending id order.
  std::vector<const Message*> candidates;
  double max_popularity = 0.0;
  for (const Message& m : state_.messages) {
    if (m.kind == MessageKind::Comment || !is_artificial(m.author)) continue;
    candidates.push_back(&m);
    max_popularity = std::max(max_popularity, popularity_score(m));
  }

  const std::optional<Opinion> user = user_opinion_estimate();
  std::vector<Ranked> pro;
  std::vector<Ranked> contra;
  for (const Message* m : candidates) {
    const Opinion author = *state_.agents[m->author.value].opinion;
    double score = popularity_score(*m);
    if (user) {
      const double epsilon = rng_.uniform();
      score = collaborative_score(score, max_popularity, *user, author, options_.weights, epsilon);
    }
    (author.side() > 0 ? pro : contra).push_back({m->id, score});
  }
  std::sort(pro.begin(), pro.end(), by_rank);
  std::sort(contra.begin(), contra.end(), by_rank);

  // Fill pages in order so each page meets its quota, backfilling from the
  // other pool once one runs dry.
  const std::size_t size = options_.page_size;
  const auto pro_quota =
      static_cast<std::size_t>(std::lround(pro_share(condition_.bias) * static_cast<double>(size)));
  std::size_t pi = 0;
  std::size_t ci = 0;
  std::vector<Ranked> selected;
  bool has_more = false;
  for (std::size_t p = 1; pi < pro.size() || ci < contra.size(); ++p) {
    if (p > page) {
      has_more = true;
      break;
    }
    std::size_t want_pro = std::min(pro_quota, pro.size() - pi);
    std::size_t want_contra = std::min(size - pro_quota, contra.size() - ci);
    want_pro = std::min(pro.size() - pi, size - want_contra);
    want_contra = std::min(contra.size() - ci, size - want_pro);
    if (p == page) {
      selected.insert(selected.end(), pro.begin() + pi, pro.begin() + pi + want_pro);
      selected.insert(selected.end(), contra.begin() + ci, contra.begin() + ci + want_contra);
    }
    pi += want_pro;
    ci += want_contra;
  }
  std::sort(selected.begin(), selected.end(), by_rank);

  FeedPage result;
  result.page = page;
  result.has_more = has_more;
  result.collaborative = user.has_value();
  if (page == 1) {
    for (auto it = state_.messages.rbegin(); it != state_.messages.rend(); ++it) {
      if (it->author == participant_ && it->kind != MessageKind::Comment) {
        result.posts.push_back(FeedEntry{it->id, {}, true});
      }
    }
  }
  for (const Ranked& r : selected) result.posts.push_back(FeedEntry{r.id, {}, false});

  std::vector<std::size_t> slot(state_.messages.size() + 1, SIZE_MAX);
  for (std::size_t i = 0; i < result.posts.size(); ++i) slot[result.posts[i].id.value] = i;
  for (const Message& m : state_.messages) {
    if (m.kind == MessageKind::Comment && m.parent && slot[m.parent->value] != SIZE_MAX) {
      result.posts[slot[m.parent->value]].comments.push_back(m.id);
    }
  }

  Json served = Json::array();
  for (const FeedEntry& e : result.posts) served.push_back(e.id.value);
  SessionEvent event;
  event.actor = participant_;
  event.action = Action::FeedServed;
  event.payload = Json{{"page", page},
                       {"messages", served},
                       {"variant", user ? "collaborative" : "popularity"}}
                      .dump();
  log(std::move(event));
  return result;
}

std::optional<SessionEvent> Session::record_interaction(Action action, EventTarget target,
                                                        std::optional<std::string> payload) {
  ensure_active();
  SessionEvent event;
  event.actor = participant_;
  event.action = action;
  event.target = target;

  auto message_target = [&]() -> const Message& {
    const auto* mid = std::get_if<MessageId>(&target);
    if (mid == nullptr) throw Error(ErrorCode::BadRequest, "action needs a message target");
    return state_.message(*mid);
  };
  auto agent_target = [&]() -> AgentId {
    const auto* aid = std::get_if<AgentId>(&target);
    if (aid == nullptr) throw Error(ErrorCode::BadRequest, "action needs an agent target");
    if (aid->value >= state_.agents.size()) {
      throw Error(ErrorCode::UnknownTarget, "unknown agent " + std::to_string(aid->value));
    }
    if (*aid == participant_) throw Error(ErrorCode::BadRequest, "cannot follow yourself");
    return *aid;
  };
  auto require_text = [&] {
    if (!payload || payload->find_first_not_of(" \t\r\n") == std::string::npos) {
      throw Error(ErrorCode::BadRequest, "text must not be empty");
    }
  };

  std::optional<AgentId> engaged;
  switch (action) {
    case Action::CreatePost:
      if (!std::holds_alternative<std::monostate>(target)) {
        throw Error(ErrorCode::BadRequest, "a post has no target");
      }
      require_text();
      event.payload = std::move(payload);
      event.created = state_.next_message_id();
      break;
    case Action::CreateComment:
      require_text();
      [[fallthrough]];
    case Action::CreateRepost: {
      const Message& parent = message_target();
      engaged = parent.author;
      event.payload = std::move(payload);
      event.created = state_.next_message_id();
      break;
    }
    case Action::Like: {
      const Message& m = message_target();
      if (liked_.contains(m.id)) {
        throw Error(ErrorCode::DuplicateLike, "message " + std::to_string(m.id.value) +
                                                  " is already liked");
      }
      engaged = m.author;
      break;
    }
    case Action::Follow: {
      const AgentId other = agent_target();
      if (state_.graph.follows(participant_, other)) return std::nullopt;
      engaged = other;
      break;
    }
    case Action::Unfollow:
      if (!state_.graph.follows(participant_, agent_target())) return std::nullopt;
      break;
    case Action::FeedServed:
      throw Error(ErrorCode::BadRequest, "feed views are recorded by get_feed");
  }

  const SessionEvent& recorded = log(std::move(event));
  if (action == Action::Like) liked_.insert(std::get<MessageId>(target));
  if (engaged && is_artificial(*engaged)) engaged_authors_.insert(*engaged);
  return recorded;
}

std::optional<Opinion> Session::user_opinion_estimate() const {
  if (engaged_authors_.empty()) return std::nullopt;
  double sum = 0.0;
  for (AgentId id : engaged_authors_) sum += state_.agents[id.value].opinion->value;
  return Opinion{sum / static_cast<double>(engaged_authors_.size())};
}

std::span<const SessionEvent> Session::session_events() const {
  return std::span<const SessionEvent>(state_.event_log).subspan(base_events_);
}

std::vector<AgentId> Session::suggested_users() const {
  std::vector<AgentId> ids;
  for (const Agent& a : state_.agents) {
    if (is_artificial(a.id) && !state_.graph.follows(participant_, a.id)) ids.push_back(a.id);
  }
  std::stable_sort(ids.begin(), ids.end(), [&](AgentId a, AgentId b) {
    return state_.graph.follower_count(a) > state_.graph.follower_count(b);
  });
  if (ids.size() > options_.suggested_users) ids.resize(options_.suggested_users);
  return ids;
}

std::optional<AgentId> Session::find_user(std::string_view username) const {
  for (const Agent& a : state_.agents) {
    if (a.username == username) return a.id;
  }
  return std::nullopt;
}

}  // namespace polarsim
