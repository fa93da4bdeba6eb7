#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "polarsim/feed/session.hpp"
#include "polarsim/llm/gateway.hpp"
#include "polarsim/sim/config.hpp"

namespace polarsim {

/// Everything one config file holds: the agent simulation, the two opinion
/// distributions of the condition matrix, feed and gateway settings.
struct AppConfig {
  SimulationConfig simulation;
  OpinionDistribution polarized = OpinionDistribution::polarized();
  OpinionDistribution moderate = OpinionDistribution::moderate();
  SessionOptions feed;
  bool live = false;  // gateway mode
  StubSettings stub;
  LiveSettings live_settings;
  std::optional<std::uint64_t> request_budget;
  std::string host = "127.0.0.1";
  int port = 8080;

  GatewayConfig gateway() const;
  /// The simulation config with the given distribution.
  SimulationConfig for_polarization(Polarization p) const;
  void validate() const;
};

void to_json(Json& j, const AppConfig& c);
void from_json(const Json& j, AppConfig& c);
void to_json(Json& j, const StubSettings& s);
void from_json(const Json& j, StubSettings& s);
void to_json(Json& j, const LiveSettings& s);
void from_json(const Json& j, LiveSettings& s);

/// Throws Error{Io} naming the path when the file is missing or unreadable,
/// Error{InvalidConfig} when it does not parse or validate.
AppConfig load_app_config(const std::filesystem::path& path);

}  // namespace polarsim
