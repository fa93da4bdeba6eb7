#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "polarsim/feed/scoring.hpp"
#include "polarsim/sim/snapshot.hpp"
#include "polarsim/stochastic/rng.hpp"

namespace polarsim {

/// Wall clock in Unix milliseconds. Injected so tests can drive expiry.
using Clock = std::function<std::int64_t()>;
std::int64_t system_clock_ms();

struct SessionOptions {
  FeedWeights weights;
  std::size_t page_size = 10;
  std::int64_t duration_s = 600;
  std::size_t suggested_users = 5;

  void validate() const;
  friend bool operator==(const SessionOptions&, const SessionOptions&) = default;
};

void to_json(Json& j, const SessionOptions& o);
void from_json(const Json& j, SessionOptions& o);

/// Receives every session event as it is recorded.
class EventSink {
 public:
  virtual ~EventSink() = default;
  virtual void append(const SessionEvent& event) = 0;
};

/// JSON-lines file: a header object on the first line, then one event per
/// line, flushed per write.
class JsonlEventSink final : public EventSink {
 public:
  JsonlEventSink(const std::filesystem::path& path, const Json& header);
  void append(const SessionEvent& event) override;

 private:
  std::ofstream out_;
};

struct FeedEntry {
  MessageId id{};
  std::vector<MessageId> comments;  // direct replies, oldest first
  bool own = false;                 // authored by the participant
};

struct FeedPage {
  std::size_t page = 1;
  std::vector<FeedEntry> posts;
  bool has_more = false;
  bool collaborative = false;  // which scoring variant produced the ranking
};

/// One participant's isolated run over a frozen condition snapshot. Agents
/// do not act during a session; only the participant's own activity is
/// added. Not internally synchronized.
class Session {
 public:
  Session(std::string id, ConditionTag condition, std::shared_ptr<const Snapshot> snapshot,
          SessionOptions options, std::uint64_t seed, Clock clock,
          std::unique_ptr<EventSink> sink = nullptr);

  const std::string& id() const noexcept { return id_; }
  const ConditionTag& condition() const noexcept { return condition_; }
  const SessionOptions& options() const noexcept { return options_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::int64_t started_at_ms() const noexcept { return started_at_ms_; }
  AgentId participant() const noexcept { return participant_; }
  const SimulationState& state() const noexcept { return state_; }
  const Snapshot& snapshot() const noexcept { return *snapshot_; }

  bool expired() const;
  std::int64_t remaining_ms() const;

  /// Ranked feed page (1-based). Page 1 starts with the participant's own
  /// posts and reposts, newest first. Throws Error{SessionExpired}.
  FeedPage get_feed(std::size_t page);

  /// Applies a participant action. Returns the logged event, or nullopt for
  /// idempotent no-ops (following an already followed agent, unfollowing one
  /// that is not followed). Throws Error{SessionExpired | DuplicateLike |
  /// UnknownTarget | BadRequest}.
  std::optional<SessionEvent> record_interaction(Action action, EventTarget target,
                                                 std::optional<std::string> payload = std::nullopt);

  /// Mean opinion of distinct agents whose messages the participant liked,
  /// commented on or reposted, or whom they followed. nullopt before any.
  std::optional<Opinion> user_opinion_estimate() const;

  /// Events recorded during this session, in order.
  std::span<const SessionEvent> session_events() const;

  /// Highest-influence agents the participant does not follow.
  std::vector<AgentId> suggested_users() const;

  std::optional<AgentId> find_user(std::string_view username) const;

 private:
  void ensure_active() const;
  const SessionEvent& log(SessionEvent event);
  bool is_artificial(AgentId id) const;

  std::string id_;
  ConditionTag condition_;
  std::shared_ptr<const Snapshot> snapshot_;
  SessionOptions options_;
  std::uint64_t seed_;
  Rng rng_;
  Clock clock_;
  std::unique_ptr<EventSink> sink_;
  std::int64_t started_at_ms_;
  SimulationState state_;
  AgentId participant_{};
  std::size_t base_events_ = 0;
  std::set<MessageId> liked_;
  std::set<AgentId> engaged_authors_;
};

}  // namespace polarsim
