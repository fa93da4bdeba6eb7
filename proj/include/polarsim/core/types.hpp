#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace polarsim {

struct AgentId {
  std::uint32_t value{};
  auto operator<=>(const AgentId&) const = default;
};

struct MessageId {
  std::uint64_t value{};
  auto operator<=>(const MessageId&) const = default;
};

/// Stance on the discussion topic. Negative is opposition, positive is
/// support, magnitude is intensity. Range checking is explicit: construct
/// via checked() or clamped(), or test valid() on a deserialized value.
struct Opinion {
  double value{};

  static Opinion checked(double v);
  static Opinion clamped(double v) noexcept;

  bool valid() const noexcept { return value >= -1.0 && value <= 1.0; }
  double magnitude() const noexcept { return value < 0 ? -value : value; }
  /// +1 for pro, -1 for contra. Zero counts as pro.
  int side() const noexcept { return value >= 0.0 ? 1 : -1; }

  friend bool operator==(const Opinion&, const Opinion&) = default;
};

enum class Role { Regular, Influencer };

enum class MemoryKind {
  AuthoredPost,
  AuthoredComment,
  AuthoredRepost,
  SawMessage,
  Liked,
  Commented,
  Reposted,
};

struct MemoryEntry {
  MemoryKind kind{};
  MessageId message_id{};
  std::int64_t iteration{};

  friend bool operator==(const MemoryEntry&, const MemoryEntry&) = default;
};

// Bounded FIFO of recent activity. Oldest entries fall out first.
class Memory {
 public:
  static constexpr std::size_t kDefaultCapacity = 10;

  explicit Memory(std::size_t capacity = kDefaultCapacity) : capacity_(capacity) {}

  void push(MemoryEntry entry);
  void clear() { entries_.clear(); }

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::deque<MemoryEntry>& entries() const noexcept { return entries_; }

  friend bool operator==(const Memory&, const Memory&) = default;

 private:
  std::size_t capacity_;
  std::deque<MemoryEntry> entries_;
};

struct Agent {
  AgentId id{};
  std::string username;
  std::string biography;
  std::string personality;
  // Unset only for the synthetic record standing in for a human participant.
  std::optional<Opinion> opinion;
  Role role = Role::Regular;
  Memory memory;

  bool is_influencer() const noexcept { return role == Role::Influencer; }

  friend bool operator==(const Agent&, const Agent&) = default;
};

enum class MessageKind { Post, Comment, Repost };

struct Message {
  MessageId id{};
  AgentId author{};
  MessageKind kind = MessageKind::Post;
  std::optional<MessageId> parent;
  std::string text;
  std::optional<std::int64_t> created_iteration;
  std::optional<std::int64_t> created_at_ms;
  std::uint32_t likes = 0;
  std::uint32_t comments = 0;
  std::uint32_t reposts = 0;
  // Author's opinion at creation time. Internal; never rendered to participants.
  std::optional<Opinion> stance_meta;

  friend bool operator==(const Message&, const Message&) = default;
};

enum class Action {
  CreatePost,
  CreateComment,
  CreateRepost,
  Like,
  Follow,
  Unfollow,
  FeedServed,
};

using EventTarget = std::variant<std::monostate, MessageId, AgentId>;

/// One entry of the append-only interaction log. Agent-phase events carry
/// the iteration index; human-phase events carry wall-clock milliseconds.
struct SessionEvent {
  std::uint64_t seq = 0;
  AgentId actor{};
  Action action = Action::FeedServed;
  EventTarget target;
  std::optional<std::string> payload;
  std::optional<std::int64_t> iteration;
  std::optional<std::int64_t> wallclock_ms;
  // Set on Create* events: id of the message the event creates and the
  // author's stance recorded on it.
  std::optional<MessageId> created;
  std::optional<double> stance;

  friend bool operator==(const SessionEvent&, const SessionEvent&) = default;
};

struct Topic {
  std::string name;
  std::string description;

  static Topic universal_basic_income();

  friend bool operator==(const Topic&, const Topic&) = default;
};

/// Read-only view over a population and its messages. Ids are dense:
/// agents[i].id == i and messages[j].id == j + 1.
struct Corpus {
  std::span<const Agent> agents;
  std::span<const Message> messages;

  const Agent* find_agent(AgentId id) const noexcept {
    return id.value < agents.size() ? &agents[id.value] : nullptr;
  }
  const Message* find_message(MessageId id) const noexcept {
    return id.value >= 1 && id.value <= messages.size() ? &messages[id.value - 1] : nullptr;
  }
};

void validate_topic(const Topic& topic);

/// Throws Error{DuplicateUsername | OpinionOutOfRange | InvalidConfig}.
void validate_population(std::span<const Agent> agents,
                         std::size_t memory_capacity = Memory::kDefaultCapacity);

}  // namespace polarsim

template <>
struct std::hash<polarsim::AgentId> {
  std::size_t operator()(const polarsim::AgentId& id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};

template <>
struct std::hash<polarsim::MessageId> {
  std::size_t operator()(const polarsim::MessageId& id) const noexcept {
    return std::hash<std::uint64_t>{}(id.value);
  }
};
