#include "polarsim/cli/app_config.hpp"

#include "polarsim/core/error.hpp"
#include "polarsim/sim/snapshot.hpp"

namespace polarsim {

GatewayConfig AppConfig::gateway() const {
  GatewayConfig g;
  if (live) {
    g.mode = live_settings;
  } else {
    g.mode = stub;
  }
  g.request_budget = request_budget;
  return g;
}

SimulationConfig AppConfig::for_polarization(Polarization p) const {
  SimulationConfig c = simulation;
  c.distribution = p == Polarization::Polarized ? polarized : moderate;
  return c;
}

void AppConfig::validate() const {
  simulation.validate();
  for_polarization(Polarization::Polarized).validate();
  for_polarization(Polarization::Moderate).validate();
  feed.validate();
  gateway().validate();
  if (port < 0 || port > 65535) throw Error(ErrorCode::InvalidConfig, "port must lie in [0, 65535]");
}

void to_json(Json& j, const StubSettings& s) {
  j = Json{{"noise_sigma", s.noise_sigma},
           {"lexicon", s.lexicon_path ? Json(*s.lexicon_path) : Json(nullptr)}};
}

void from_json(const Json& j, StubSettings& s) {
  read_optional(j, "noise_sigma", s.noise_sigma);
  if (const auto it = j.find("lexicon"); it != j.end() && !it->is_null()) {
    s.lexicon_path = it->get<std::string>();
  }
}

void to_json(Json& j, const LiveSettings& s) {
  j = Json{{"endpoint_url", s.endpoint_url},   {"model_name", s.model_name},
           {"api_key_env_var", s.api_key_env_var}, {"timeout_s", s.timeout_s},
           {"max_retries", s.max_retries},     {"backoff_base_s", s.backoff_base_s},
           {"temperature", s.temperature}};
}

void from_json(const Json& j, LiveSettings& s) {
  read_optional(j, "endpoint_url", s.endpoint_url);
  read_optional(j, "model_name", s.model_name);
  read_optional(j, "api_key_env_var", s.api_key_env_var);
  read_optional(j, "timeout_s", s.timeout_s);
  read_optional(j, "max_retries", s.max_retries);
  read_optional(j, "backoff_base_s", s.backoff_base_s);
  read_optional(j, "temperature", s.temperature);
}

void to_json(Json& j, const AppConfig& c) {
  j = Json{{"simulation", c.simulation},
           {"conditions", Json{{"polarized", c.polarized}, {"moderate", c.moderate}}},
           {"feed", c.feed},
           {"gateway", Json{{"mode", c.live ? "live" : "stub"},
                            {"request_budget", c.request_budget ? Json(*c.request_budget)
                                                                : Json(nullptr)},
                            {"stub", c.stub},
                            {"live", c.live_settings}}},
           {"server", Json{{"host", c.host}, {"port", c.port}}}};
}

void from_json(const Json& j, AppConfig& c) {
  read_optional(j, "simulation", c.simulation);
  if (const auto it = j.find("conditions"); it != j.end() && !it->is_null()) {
    read_optional(*it, "polarized", c.polarized);
    read_optional(*it, "moderate", c.moderate);
  }
  read_optional(j, "feed", c.feed);
  if (const auto it = j.find("gateway"); it != j.end() && !it->is_null()) {
    const Json& g = *it;
    if (const auto mode = g.find("mode"); mode != g.end() && !mode->is_null()) {
      const auto name = mode->get<std::string>();
      if (name != "stub" && name != "live") {
        throw Error(ErrorCode::InvalidConfig, "gateway mode must be 'stub' or 'live'");
      }
      c.live = name == "live";
    }
    if (const auto b = g.find("request_budget"); b != g.end() && !b->is_null()) {
      c.request_budget = b->get<std::uint64_t>();
    }
    read_optional(g, "stub", c.stub);
    read_optional(g, "live", c.live_settings);
  }
  if (const auto it = j.find("server"); it != j.end() && !it->is_null()) {
    read_optional(*it, "host", c.host);
    read_optional(*it, "port", c.port);
  }
}

AppConfig load_app_config(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw Error(ErrorCode::Io, "config file not found: " + path.string());
  }
  const std::string text = read_file(path);
  AppConfig config;
  try {
    config = Json::parse(text).get<AppConfig>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, path.string() + ": " + e.what());
  }
  config.validate();
  return config;
}

}  // namespace polarsim
