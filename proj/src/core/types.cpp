#include "polarsim/core/types.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "polarsim/core/error.hpp"

namespace polarsim {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::DuplicateUsername: return "DuplicateUsername";
    case ErrorCode::OpinionOutOfRange: return "OpinionOutOfRange";
    case ErrorCode::SamplerStuck: return "SamplerStuck";
    case ErrorCode::MissingReplyContext: return "MissingReplyContext";
    case ErrorCode::MissingApiKey: return "MissingApiKey";
    case ErrorCode::RemoteUnavailable: return "RemoteUnavailable";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::EmptyCompletion: return "EmptyCompletion";
    case ErrorCode::UnparsableAssessment: return "UnparsableAssessment";
    case ErrorCode::UnknownAgent: return "UnknownAgent";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::UnknownTarget: return "UnknownTarget";
    case ErrorCode::SessionExpired: return "SessionExpired";
    case ErrorCode::DuplicateLike: return "DuplicateLike";
    case ErrorCode::BadRequest: return "BadRequest";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Opinion Opinion::checked(double v) {
  Opinion o{v};
  if (!o.valid()) {
    throw Error(ErrorCode::OpinionOutOfRange,
                "opinion " + std::to_string(v) + " outside [-1, 1]");
  }
  return o;
}

Opinion Opinion::clamped(double v) noexcept {
  if (!(v == v)) return Opinion{0.0};  // NaN
  return Opinion{std::clamp(v, -1.0, 1.0)};
}

void Memory::push(MemoryEntry entry) {
  if (capacity_ == 0) return;
  while (entries_.size() >= capacity_) entries_.pop_front();
  entries_.push_back(entry);
}

Topic Topic::universal_basic_income() {
  return Topic{"Universal Basic Income",
               "The topic is Universal Basic Income, focusing on economic, social and "
               "ethical implications"};
}

void validate_topic(const Topic& topic) {
  if (topic.name.empty()) throw Error(ErrorCode::InvalidConfig, "topic name must not be empty");
  if (topic.description.empty()) {
    throw Error(ErrorCode::InvalidConfig, "topic description must not be empty");
  }
}

void validate_population(std::span<const Agent> agents, std::size_t memory_capacity) {
  std::unordered_set<std::string> names;
  for (const Agent& a : agents) {
    if (!names.insert(a.username).second) {
      throw Error(ErrorCode::DuplicateUsername, "duplicate username '" + a.username + "'");
    }
    if (a.opinion && !a.opinion->valid()) {
      throw Error(ErrorCode::OpinionOutOfRange,
                  "agent '" + a.username + "' has opinion " + std::to_string(a.opinion->value));
    }
    if (a.memory.capacity() != memory_capacity) {
      throw Error(ErrorCode::InvalidConfig,
                  "agent '" + a.username + "' memory capacity " +
                      std::to_string(a.memory.capacity()) + " != " +
                      std::to_string(memory_capacity));
    }
  }
}

}  // namespace polarsim
