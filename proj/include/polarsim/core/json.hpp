#pragma once

// Canonical JSON form of the core types: snake_case keys, enums as strings,
// opinions as plain numbers.

#include <string>
#include <string_view>

#include <json.hpp>

#include "polarsim/core/types.hpp"

namespace polarsim {

using Json = nlohmann::json;

std::string_view to_string(Role r) noexcept;
std::string_view to_string(MemoryKind k) noexcept;
std::string_view to_string(MessageKind k) noexcept;
std::string_view to_string(Action a) noexcept;

Role role_from_string(std::string_view s);
MemoryKind memory_kind_from_string(std::string_view s);
MessageKind message_kind_from_string(std::string_view s);
Action action_from_string(std::string_view s);

void to_json(Json& j, const AgentId& id);
void from_json(const Json& j, AgentId& id);
void to_json(Json& j, const MessageId& id);
void from_json(const Json& j, MessageId& id);
void to_json(Json& j, const Opinion& o);
void from_json(const Json& j, Opinion& o);
void to_json(Json& j, const MemoryEntry& e);
void from_json(const Json& j, MemoryEntry& e);
void to_json(Json& j, const Memory& m);
void from_json(const Json& j, Memory& m);
void to_json(Json& j, const Agent& a);
void from_json(const Json& j, Agent& a);
void to_json(Json& j, const Message& m);
void from_json(const Json& j, Message& m);
void to_json(Json& j, const SessionEvent& e);
void from_json(const Json& j, SessionEvent& e);
void to_json(Json& j, const Topic& t);
void from_json(const Json& j, Topic& t);

/// Reads `key` into `out` when present; leaves `out` untouched otherwise.
template <typename T>
void read_optional(const Json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) it->get_to(out);
}

}  // namespace polarsim
