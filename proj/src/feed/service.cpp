#include "polarsim/feed/service.hpp"

#include <cstdio>
#include <random>

namespace polarsim {
namespace {

std::vector<ConditionTag> all_cells() {
  std::vector<ConditionTag> cells;
  for (Polarization p : {Polarization::Polarized, Polarization::Moderate}) {
    for (Bias b : {Bias::Pro, Bias::Balanced, Bias::Contra}) cells.push_back({p, b});
  }
  return cells;
}

std::string hex_id(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

SessionManager::SessionManager(std::map<std::string, std::shared_ptr<const Snapshot>> snapshots,
                               ServiceOptions options)
    : snapshots_(std::move(snapshots)), options_(std::move(options)) {
  options_.session.validate();
  if (!options_.clock) options_.clock = system_clock_ms;
  for (const ConditionTag& c : all_cells()) {
    if (snapshots_.contains(c.key())) cells_.push_back(c);
  }
  if (cells_.empty()) throw Error(ErrorCode::InvalidConfig, "no condition snapshots available");
}

std::map<std::string, std::shared_ptr<const Snapshot>> SessionManager::load_snapshots(
    const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::Io, "snapshot directory not found: " + dir.string());
  }
  std::map<std::string, std::shared_ptr<const Snapshot>> out;
  for (const ConditionTag& c : all_cells()) {
    const auto path = dir / (c.key() + ".json");
    if (!std::filesystem::exists(path)) continue;
    auto snapshot = std::make_shared<Snapshot>(load_snapshot(path));
    snapshot->condition = c;
    out.emplace(c.key(), std::move(snapshot));
  }
  if (out.empty()) {
    throw Error(ErrorCode::Io, "no condition snapshots in directory: " + dir.string());
  }
  return out;
}

std::string SessionManager::create(std::optional<ConditionTag> condition) {
  std::unique_lock lock(map_mutex_);
  const std::uint64_t n = counter_++;
  const ConditionTag cell = condition.value_or(cells_[n % cells_.size()]);
  const auto it = snapshots_.find(cell.key());
  if (it == snapshots_.end()) {
    throw Error(ErrorCode::BadRequest, "no snapshot for condition " + cell.key());
  }

  std::string id;
  std::uint64_t seed = 0;
  if (options_.seed_base) {
    seed = *options_.seed_base + n;
    id = "s" + std::to_string(n + 1);
  } else {
    std::random_device rd;
    do {
      id = hex_id((static_cast<std::uint64_t>(rd()) << 32) | rd());
    } while (sessions_.contains(id));
    seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
  }

  const std::int64_t now = options_.clock();
  std::unique_ptr<EventSink> sink;
  auto entry = std::make_shared<Entry>();
  // The participant id is fixed by the snapshot: it is appended after the agents.
  const auto participant = static_cast<std::uint32_t>(it->second->state.agents.size());
  if (options_.log_dir) {
    Json header{{"session_id", id},       {"condition", cell}, {"seed", seed},
                {"started_at_ms", now},   {"participant_id", participant}};
    sink = std::make_unique<JsonlEventSink>(*options_.log_dir / (id + ".jsonl"), header);
  }
  entry->session = std::make_unique<Session>(id, cell, it->second, options_.session, seed,
                                             options_.clock, std::move(sink));
  sessions_.emplace(id, std::move(entry));
  return id;
}

std::shared_ptr<SessionManager::Entry> SessionManager::find(const std::string& id) const {
  std::shared_lock lock(map_mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "unknown session " + id);
  return it->second;
}

std::vector<std::string> SessionManager::session_ids() const {
  std::shared_lock lock(map_mutex_);
  std::vector<std::string> ids;
  for (const auto& [id, _] : sessions_) ids.push_back(id);
  return ids;
}

std::vector<ConditionTag> SessionManager::conditions() const { return cells_; }

void SessionManager::close_all() {
  std::map<std::string, std::shared_ptr<Entry>> closing;
  {
    std::unique_lock lock(map_mutex_);
    closing.swap(sessions_);
  }
  for (auto& [_, entry] : closing) {
    std::lock_guard lock(entry->mutex);
    entry->session.reset();
  }
}

}  // namespace polarsim
