#include "polarsim/core/json.hpp"

#include <array>
#include <utility>

#include "polarsim/core/error.hpp"

namespace polarsim {
namespace {

template <typename E, std::size_t N>
E lookup(const std::array<std::pair<E, std::string_view>, N>& table, std::string_view s,
         const char* what) {
  for (const auto& [value, name] : table) {
    if (name == s) return value;
  }
  throw Error(ErrorCode::BadRequest, std::string("unknown ") + what + " '" + std::string(s) + "'");
}

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E v) {
  for (const auto& [value, name] : table) {
    if (value == v) return name;
  }
  return "unknown";
}

constexpr std::array<std::pair<Role, std::string_view>, 2> kRoles{{
    {Role::Regular, "regular"},
    {Role::Influencer, "influencer"},
}};

constexpr std::array<std::pair<MemoryKind, std::string_view>, 7> kMemoryKinds{{
    {MemoryKind::AuthoredPost, "authored_post"},
    {MemoryKind::AuthoredComment, "authored_comment"},
    {MemoryKind::AuthoredRepost, "authored_repost"},
    {MemoryKind::SawMessage, "saw_message"},
    {MemoryKind::Liked, "liked"},
    {MemoryKind::Commented, "commented"},
    {MemoryKind::Reposted, "reposted"},
}};

constexpr std::array<std::pair<MessageKind, std::string_view>, 3> kMessageKinds{{
    {MessageKind::Post, "post"},
    {MessageKind::Comment, "comment"},
    {MessageKind::Repost, "repost"},
}};

constexpr std::array<std::pair<Action, std::string_view>, 7> kActions{{
    {Action::CreatePost, "create_post"},
    {Action::CreateComment, "create_comment"},
    {Action::CreateRepost, "create_repost"},
    {Action::Like, "like"},
    {Action::Follow, "follow"},
    {Action::Unfollow, "unfollow"},
    {Action::FeedServed, "feed_served"},
}};

}  // namespace

std::string_view to_string(Role r) noexcept { return name_of(kRoles, r); }
std::string_view to_string(MemoryKind k) noexcept { return name_of(kMemoryKinds, k); }
std::string_view to_string(MessageKind k) noexcept { return name_of(kMessageKinds, k); }
std::string_view to_string(Action a) noexcept { return name_of(kActions, a); }

Role role_from_string(std::string_view s) { return lookup(kRoles, s, "role"); }
MemoryKind memory_kind_from_string(std::string_view s) {
  return lookup(kMemoryKinds, s, "memory kind");
}
MessageKind message_kind_from_string(std::string_view s) {
  return lookup(kMessageKinds, s, "message kind");
}
Action action_from_string(std::string_view s) { return lookup(kActions, s, "action"); }

void to_json(Json& j, const AgentId& id) { j = id.value; }
void from_json(const Json& j, AgentId& id) { id.value = j.get<std::uint32_t>(); }
void to_json(Json& j, const MessageId& id) { j = id.value; }
void from_json(const Json& j, MessageId& id) { id.value = j.get<std::uint64_t>(); }
void to_json(Json& j, const Opinion& o) { j = o.value; }
void from_json(const Json& j, Opinion& o) { o.value = j.get<double>(); }

void to_json(Json& j, const MemoryEntry& e) {
  j = Json{{"kind", to_string(e.kind)}, {"message_id", e.message_id}, {"iteration", e.iteration}};
}

void from_json(const Json& j, MemoryEntry& e) {
  e.kind = memory_kind_from_string(j.at("kind").get<std::string>());
  j.at("message_id").get_to(e.message_id);
  j.at("iteration").get_to(e.iteration);
  if (e.iteration < 0) throw Error(ErrorCode::BadRequest, "memory entry iteration < 0");
}

void to_json(Json& j, const Memory& m) {
  j = Json{{"capacity", m.capacity()}, {"entries", Json::array()}};
  for (const auto& e : m.entries()) j["entries"].push_back(e);
}

void from_json(const Json& j, Memory& m) {
  m = Memory(j.at("capacity").get<std::size_t>());
  for (const auto& e : j.at("entries")) m.push(e.get<MemoryEntry>());
}

void to_json(Json& j, const Agent& a) {
  j = Json{{"id", a.id},
           {"username", a.username},
           {"biography", a.biography},
           {"personality", a.personality},
           {"opinion", a.opinion ? Json(*a.opinion) : Json(nullptr)},
           {"role", to_string(a.role)},
           {"memory", a.memory}};
}

void from_json(const Json& j, Agent& a) {
  j.at("id").get_to(a.id);
  j.at("username").get_to(a.username);
  j.at("biography").get_to(a.biography);
  j.at("personality").get_to(a.personality);
  a.opinion.reset();
  if (const auto& o = j.at("opinion"); !o.is_null()) a.opinion = o.get<Opinion>();
  a.role = role_from_string(j.at("role").get<std::string>());
  j.at("memory").get_to(a.memory);
}

void to_json(Json& j, const Message& m) {
  j = Json{{"id", m.id},
           {"author_id", m.author},
           {"kind", to_string(m.kind)},
           {"parent_id", m.parent ? Json(*m.parent) : Json(nullptr)},
           {"text", m.text},
           {"created_iteration", m.created_iteration ? Json(*m.created_iteration) : Json(nullptr)},
           {"created_at_ms", m.created_at_ms ? Json(*m.created_at_ms) : Json(nullptr)},
           {"likes", m.likes},
           {"comments", m.comments},
           {"reposts", m.reposts},
           {"stance_meta", m.stance_meta ? Json(*m.stance_meta) : Json(nullptr)}};
}

void from_json(const Json& j, Message& m) {
  j.at("id").get_to(m.id);
  j.at("author_id").get_to(m.author);
  m.kind = message_kind_from_string(j.at("kind").get<std::string>());
  m.parent.reset();
  m.created_iteration.reset();
  m.created_at_ms.reset();
  m.stance_meta.reset();
  if (const auto& p = j.at("parent_id"); !p.is_null()) m.parent = p.get<MessageId>();
  j.at("text").get_to(m.text);
  if (const auto& it = j.at("created_iteration"); !it.is_null()) {
    m.created_iteration = it.get<std::int64_t>();
  }
  if (const auto& at = j.at("created_at_ms"); !at.is_null()) m.created_at_ms = at.get<std::int64_t>();
  j.at("likes").get_to(m.likes);
  j.at("comments").get_to(m.comments);
  j.at("reposts").get_to(m.reposts);
  if (const auto& s = j.at("stance_meta"); !s.is_null()) m.stance_meta = s.get<Opinion>();
  if (m.kind != MessageKind::Post && !m.parent) {
    throw Error(ErrorCode::BadRequest, "comment/repost without parent_id");
  }
  if (m.kind == MessageKind::Post && m.parent) {
    throw Error(ErrorCode::BadRequest, "post must not have parent_id");
  }
}

void to_json(Json& j, const SessionEvent& e) {
  j = Json{{"seq", e.seq}, {"actor", e.actor}, {"action", to_string(e.action)}};
  if (const auto* mid = std::get_if<MessageId>(&e.target)) j["target_message"] = *mid;
  if (const auto* aid = std::get_if<AgentId>(&e.target)) j["target_agent"] = *aid;
  if (e.payload) j["payload"] = *e.payload;
  if (e.iteration) j["iteration"] = *e.iteration;
  if (e.wallclock_ms) j["wallclock_ms"] = *e.wallclock_ms;
  if (e.created) j["created"] = *e.created;
  if (e.stance) j["stance"] = *e.stance;
}

void from_json(const Json& j, SessionEvent& e) {
  e = SessionEvent{};
  j.at("seq").get_to(e.seq);
  j.at("actor").get_to(e.actor);
  e.action = action_from_string(j.at("action").get<std::string>());
  if (j.contains("target_message")) {
    e.target = j.at("target_message").get<MessageId>();
  } else if (j.contains("target_agent")) {
    e.target = j.at("target_agent").get<AgentId>();
  }
  if (j.contains("payload")) e.payload = j.at("payload").get<std::string>();
  if (j.contains("iteration")) e.iteration = j.at("iteration").get<std::int64_t>();
  if (j.contains("wallclock_ms")) e.wallclock_ms = j.at("wallclock_ms").get<std::int64_t>();
  if (j.contains("created")) e.created = j.at("created").get<MessageId>();
  if (j.contains("stance")) e.stance = j.at("stance").get<double>();
}

void to_json(Json& j, const Topic& t) { j = Json{{"name", t.name}, {"description", t.description}}; }

void from_json(const Json& j, Topic& t) {
  j.at("name").get_to(t.name);
  j.at("description").get_to(t.description);
}

}  // namespace polarsim
