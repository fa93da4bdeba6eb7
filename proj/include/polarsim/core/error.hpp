#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polarsim {

enum class ErrorCode {
  InvalidConfig,
  DuplicateUsername,
  OpinionOutOfRange,
  SamplerStuck,
  MissingReplyContext,
  MissingApiKey,
  RemoteUnavailable,
  BudgetExhausted,
  EmptyCompletion,
  UnparsableAssessment,
  UnknownAgent,
  UnknownSession,
  UnknownTarget,
  SessionExpired,
  DuplicateLike,
  BadRequest,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

// Single exception type carrying a machine-readable code. Callers switch on
// code() rather than on the dynamic type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace polarsim
