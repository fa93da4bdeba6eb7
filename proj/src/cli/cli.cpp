#include "polarsim/cli/cli.hpp"

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <thread>

#include <pthread.h>

#include <CLI11.hpp>
#include <httplib.h>

#include "polarsim/cli/app_config.hpp"
#include "polarsim/core/error.hpp"
#include "polarsim/feed/conditions.hpp"
#include "polarsim/feed/http_api.hpp"
#include "polarsim/sim/engine.hpp"
#include "polarsim/sim/stats.hpp"
#include "polarsim/stochastic/kernels.hpp"

namespace polarsim {
namespace {

namespace fs = std::filesystem;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string mode;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config, "JSON config file (built-in defaults when omitted)");
  cmd->add_option("--seed", flags.seed, "Override the simulation seed");
  cmd->add_option("--mode", flags.mode, "Gateway mode")->check(CLI::IsMember({"stub", "live"}));
}

/// Loads the config, applies flag overrides and checks the live-mode key
/// before any work starts.
AppConfig resolve_config(const CommonFlags& flags) {
  AppConfig config = flags.config.empty() ? AppConfig{} : load_app_config(flags.config);
  if (flags.seed) config.simulation.seed = *flags.seed;
  if (!flags.mode.empty()) config.live = flags.mode == "live";
  config.validate();
  if (config.live) {
    const std::string& var = config.live_settings.api_key_env_var;
    const char* key = std::getenv(var.c_str());
    if (key == nullptr || *key == '\0') {
      throw Error(ErrorCode::MissingApiKey, "live mode needs an API key in $" + var);
    }
  }
  return config;
}

std::int64_t now_ms() { return system_clock_ms(); }

Json manifest_entry(const fs::path& path) {
  return Json{{"path", path.string()}, {"bytes", fs::file_size(path)}};
}

void write_manifest(const fs::path& path, const std::string& command, const AppConfig& config,
                    const CommonFlags& flags, const std::vector<fs::path>& outputs) {
  Json files = Json::array();
  for (const auto& p : outputs) files.push_back(manifest_entry(p));
  const Json manifest{{"command", command},
                      {"config_path", flags.config.empty() ? Json(nullptr) : Json(flags.config)},
                      {"seed", config.simulation.seed},
                      {"mode", config.live ? "live" : "stub"},
                      {"snapshot_format_version", kSnapshotFormatVersion},
                      {"created_at_ms", now_ms()},
                      {"outputs", std::move(files)}};
  write_file_atomic(path, manifest.dump(2) + "\n");
}

std::string stats_csv(const std::vector<std::pair<std::string, PlatformStats>>& rows) {
  std::ostringstream csv;
  write_stats_csv(csv, rows);
  return csv.str();
}

int cmd_simulate(const CommonFlags& flags, const std::string& polarization, fs::path out,
                 fs::path stats_out, std::ostream& log) {
  const AppConfig config = resolve_config(flags);
  const Polarization p = polarization_from_string(polarization);
  const SimulationConfig sim = config.for_polarization(p);
  auto gateway = make_gateway(config.gateway());
  Rng rng(sim.seed);
  Snapshot snapshot;
  snapshot.config = sim;
  snapshot.seed = sim.seed;
  snapshot.state = run(sim, *gateway, rng);

  if (stats_out.empty()) stats_out = fs::path(out).replace_extension(".stats.csv");
  save_snapshot(out, snapshot);
  write_file_atomic(stats_out,
                    stats_csv({{std::string(to_string(p)), compute_stats(snapshot.state)}}));
  const fs::path manifest = fs::path(out).replace_extension(".manifest.json");
  write_manifest(manifest, "simulate", config, flags, {out, stats_out});
  log << "wrote " << out.string() << " (" << snapshot.state.messages.size() << " messages, "
      << gateway->calls_made() << " gateway calls)\n";
  return kExitOk;
}

int cmd_prepare(const CommonFlags& flags, const fs::path& dir, std::ostream& log) {
  const AppConfig config = resolve_config(flags);
  const GatewayConfig gateway = config.gateway();
  const auto snapshots =
      prepare_conditions(config.for_polarization(Polarization::Polarized),
                         config.for_polarization(Polarization::Moderate),
                         [&] { return make_gateway(gateway); });
  std::vector<fs::path> outputs = write_conditions(dir, snapshots);
  // Bias does not change the agent phase: one stats row set per polarization.
  std::vector<std::pair<std::string, PlatformStats>> rows;
  for (const Snapshot& s : snapshots) {
    if (s.condition->bias == Bias::Balanced) {
      rows.emplace_back(std::string(to_string(s.condition->polarization)), compute_stats(s.state));
    }
  }
  outputs.push_back(dir / "stats.csv");
  write_file_atomic(outputs.back(), stats_csv(rows));
  write_manifest(dir / "manifest.json", "prepare-conditions", config, flags, outputs);
  log << "wrote " << snapshots.size() << " condition snapshots to " << dir.string() << "\n";
  return kExitOk;
}

std::string curve_csv(const AppConfig& config) {
  const std::pair<const char*, ReactionParams> sets[] = {
      {"like", config.simulation.reaction_like},
      {"repost", config.simulation.reaction_repost},
      {"comment", config.simulation.reaction_comment},
      {"follow", config.simulation.connection.follow_reaction}};
  const double message_opinions[] = {-1.0, -0.8, -0.5, 0.0, 0.5, 0.8, 1.0};
  std::string csv = "interaction,o_m,o_i,delta,probability\n";
  char line[160];
  for (const auto& [name, params] : sets) {
    for (double o_m : message_opinions) {
      for (int k = 0; k <= 200; ++k) {
        const double o_i = -1.0 + k / 100.0;
        const double p = reaction_probability(Opinion{o_i}, Opinion{o_m}, params);
        std::snprintf(line, sizeof line, "%s,%.2f,%.2f,%.2f,%.12g\n", name, o_m, o_i,
                      std::abs(o_i - o_m), p);
        csv += line;
      }
    }
  }
  return csv;
}

int cmd_export_curve(const std::string& config_path, const std::string& out, std::ostream& stdout_) {
  const AppConfig config = config_path.empty() ? AppConfig{} : load_app_config(config_path);
  const std::string csv = curve_csv(config);
  if (out.empty() || out == "-") {
    stdout_ << csv;
  } else {
    write_file_atomic(out, csv);
  }
  return kExitOk;
}

int cmd_serve(const CommonFlags& flags, const std::string& snapshot_dir,
              std::optional<int> port, const std::string& host, const std::string& log_dir,
              std::optional<std::int64_t> duration_s, std::ostream& log) {
  AppConfig config = flags.config.empty() ? AppConfig{} : load_app_config(flags.config);
  if (port) config.port = *port;
  if (!host.empty()) config.host = host;
  if (duration_s) config.feed.duration_s = *duration_s;
  config.validate();

  ServiceOptions options;
  options.session = config.feed;
  options.log_dir = log_dir.empty() ? fs::path(snapshot_dir) / "sessions" : fs::path(log_dir);
  options.seed_base = flags.seed;
  SessionManager manager(SessionManager::load_snapshots(snapshot_dir), std::move(options));

  // Block the shutdown signals before the server threads start so that only
  // sigwait below receives them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGTERM);
  sigaddset(&signals, SIGINT);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  httplib::Server server;
  mount_routes(server, manager);
  int bound = config.port;
  if (config.port == 0) {
    bound = server.bind_to_any_port(config.host);
  } else if (!server.bind_to_port(config.host, config.port)) {
    bound = -1;
  }
  if (bound < 0) {
    throw Error(ErrorCode::Io,
                "cannot bind " + config.host + ":" + std::to_string(config.port));
  }
  log << "listening on http://" << config.host << ":" << bound << std::endl;

  std::thread listener([&] {
    server.listen_after_bind();
    // Wake the waiting thread if the server stopped on its own.
    kill(getpid(), SIGTERM);
  });
  int received = 0;
  sigwait(&signals, &received);
  server.stop();
  listener.join();
  manager.close_all();
  log << "shutting down on signal " << received << ", event logs flushed" << std::endl;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Agent-based social network polarization simulator", "polarsim"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string polarization = "polarized";
  std::string out_path;
  std::string snapshot_out = "snapshot.json";
  std::string stats_out;
  std::string snapshot_dir = "snapshots";
  std::string host;
  std::string log_dir;
  std::optional<int> port;
  std::optional<std::int64_t> duration_s;

  auto* simulate = app.add_subcommand("simulate", "Run one agent-only simulation");
  add_common(simulate, flags);
  simulate->add_option("--polarization", polarization, "Opinion distribution")
      ->check(CLI::IsMember({"polarized", "moderate"}));
  simulate->add_option("--out", snapshot_out, "Snapshot path")->capture_default_str();
  simulate->add_option("--stats-out", stats_out, "Stats CSV path (default: <out>.stats.csv)");

  auto* prepare = app.add_subcommand("prepare-conditions", "Write the six condition snapshots");
  add_common(prepare, flags);
  prepare->add_option("--snapshot-dir,--out", snapshot_dir, "Output directory");

  auto* curve = app.add_subcommand("export-curve", "Export reaction-probability curves as CSV");
  curve->add_option("--config", flags.config, "JSON config file for the kernel parameters");
  curve->add_option("--out", out_path, "CSV path, '-' for stdout");

  auto* serve = app.add_subcommand("serve", "Serve participant sessions over HTTP");
  add_common(serve, flags);
  serve->add_option("--snapshot-dir", snapshot_dir, "Directory holding condition snapshots");
  serve->add_option("--port", port, "Port (0 picks a free one)");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--log-dir", log_dir, "Session event logs (default: <snapshot-dir>/sessions)");
  serve->add_option("--duration", duration_s, "Session length in seconds");

  auto* defaults = app.add_subcommand("default-config", "Write a config with all defaults");
  defaults->add_option("--out", out_path, "Output path, stdout when omitted");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(flags, polarization, snapshot_out, stats_out, err);
    if (prepare->parsed()) return cmd_prepare(flags, snapshot_dir, err);
    if (curve->parsed()) return cmd_export_curve(flags.config, out_path, out);
    if (serve->parsed()) {
      return cmd_serve(flags, snapshot_dir, port, host, log_dir, duration_s, err);
    }
    const std::string text = Json(AppConfig{}).dump(2) + "\n";
    if (out_path.empty()) {
      out << text;
    } else {
      write_file_atomic(out_path, text);
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "polarsim: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::Io:
        return !flags.config.empty() && !fs::exists(flags.config) ? kExitMissingConfig
                                                                  : kExitFailure;
      case ErrorCode::MissingApiKey: return kExitMissingApiKey;
      case ErrorCode::InvalidConfig: return kExitInvalidConfig;
      default: return kExitFailure;
    }
  } catch (const std::exception& e) {
    err << "polarsim: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace polarsim
