#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "polarsim/core/error.hpp"
#include "polarsim/feed/session.hpp"

namespace polarsim {

struct ServiceOptions {
  SessionOptions session;
  /// Where per-session JSONL event logs go; none disables file logging.
  std::optional<std::filesystem::path> log_dir;
  /// When set, session ids and RNG seeds are derived from a counter so runs
  /// are reproducible. Otherwise both come from std::random_device.
  std::optional<std::uint64_t> seed_base;
  Clock clock;
};

/// Owns all live sessions. Snapshots are immutable and shared; each session
/// is guarded by its own mutex, so requests for distinct sessions run
/// concurrently while requests for one session are serialized.
class SessionManager {
 public:
  SessionManager(std::map<std::string, std::shared_ptr<const Snapshot>> snapshots,
                 ServiceOptions options);

  /// Loads `<key>.json` for every condition present in `dir`. Throws
  /// Error{Io} when the directory is missing or holds no snapshots.
  static std::map<std::string, std::shared_ptr<const Snapshot>> load_snapshots(
      const std::filesystem::path& dir);

  /// Starts a session; without a condition, cells are assigned round-robin.
  /// Throws Error{BadRequest} if no snapshot backs the condition.
  std::string create(std::optional<ConditionTag> condition = std::nullopt);

  /// Runs f(Session&) under the session's lock. Throws Error{UnknownSession}.
  template <typename F>
  decltype(auto) with_session(const std::string& id, F&& f) {
    std::shared_ptr<Entry> entry = find(id);
    std::lock_guard lock(entry->mutex);
    return f(*entry->session);
  }

  std::vector<std::string> session_ids() const;
  std::vector<ConditionTag> conditions() const;
  const SessionOptions& session_options() const noexcept { return options_.session; }

  /// Drops every session, closing and flushing their event logs.
  void close_all();

 private:
  struct Entry {
    std::mutex mutex;
    std::unique_ptr<Session> session;
  };

  std::shared_ptr<Entry> find(const std::string& id) const;

  std::map<std::string, std::shared_ptr<const Snapshot>> snapshots_;
  std::vector<ConditionTag> cells_;
  ServiceOptions options_;
  mutable std::shared_mutex map_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::uint64_t counter_ = 0;
};

}  // namespace polarsim
