#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "polarsim/cli/app_config.hpp"
#include "polarsim/cli/cli.hpp"
#include "polarsim/core/json.hpp"
#include "polarsim/sim/snapshot.hpp"

using namespace polarsim;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& f) const { return (path / f).string(); }
};

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

/// Writes a small, fast config.
std::string small_config_file(const TempDir& dir, const std::string& mutate = "") {
  AppConfig c;
  c.simulation.n_agents = 10;
  c.simulation.n_regular = 6;
  c.simulation.n_influencers_pro = 2;
  c.simulation.n_influencers_contra = 2;
  c.simulation.n_iterations = 3;
  Json j = c;
  if (mutate == "invalid") j["simulation"]["n_agents"] = 11;
  const std::string path = dir / ("config" + mutate + ".json");
  write_file_atomic(path, j.dump(2));
  return path;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("default config round trips") {
    const Outcome r = cli({"default-config"});
    REQUIRE(r.code == 0);
    const AppConfig parsed = Json::parse(r.out).get<AppConfig>();
    CHECK(parsed.simulation == SimulationConfig{});
    CHECK(parsed.feed == SessionOptions{});
    CHECK_FALSE(parsed.live);
  }

  TEST_CASE("simulate writes snapshot, stats and manifest deterministically") {
    TempDir dir("polarsim_cli_simulate");
    const std::string config = small_config_file(dir);
    REQUIRE(cli({"simulate", "--config", config, "--out", dir / "a.json"}).code == 0);
    REQUIRE(cli({"simulate", "--config", config, "--out", dir / "b.json"}).code == 0);
    CHECK(read_file(dir / "a.json") == read_file(dir / "b.json"));
    CHECK(fs::exists(dir / "a.stats.csv"));
    const Json manifest = Json::parse(read_file(dir / "a.manifest.json"));
    CHECK(manifest.at("command") == "simulate");
    CHECK(manifest.at("outputs").size() == 2);

    REQUIRE(cli({"simulate", "--config", config, "--seed", "99", "--out", dir / "c.json"}).code == 0);
    const Snapshot c = load_snapshot(dir / "c.json");
    CHECK(c.seed == 99);
    CHECK(read_file(dir / "a.json") != read_file(dir / "c.json"));

    REQUIRE(cli({"simulate", "--config", config, "--polarization", "moderate", "--out",
                 dir / "m.json", "--stats-out", dir / "m.csv"})
                .code == 0);
    CHECK(read_file(dir / "m.csv").find("moderate,Overall") != std::string::npos);
  }

  TEST_CASE("failure exit codes") {
    TempDir dir("polarsim_cli_failures");
    const Outcome missing = cli({"simulate", "--config", dir / "absent.json"});
    CHECK(missing.code == kExitMissingConfig);
    CHECK(missing.err.find("absent.json") != std::string::npos);

    const Outcome invalid = cli({"simulate", "--config", small_config_file(dir, "invalid")});
    CHECK(invalid.code == kExitInvalidConfig);

    write_file_atomic(dir / "garbage.json", "{ nope");
    CHECK(cli({"simulate", "--config", dir / "garbage.json"}).code == kExitInvalidConfig);

    ::unsetenv("OPENAI_API_KEY");
    const Outcome live = cli({"simulate", "--mode", "live", "--out", dir / "x.json"});
    CHECK(live.code == kExitMissingApiKey);
    CHECK_FALSE(fs::exists(dir / "x.json"));

    CHECK(cli({"simulate", "--mode", "psychic"}).code == kExitUsage);
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"--help"}).code == kExitOk);
  }

  TEST_CASE("prepare-conditions") {
    TempDir dir("polarsim_cli_prepare");
    const std::string config = small_config_file(dir);
    REQUIRE(cli({"prepare-conditions", "--config", config, "--snapshot-dir", dir / "a"}).code == 0);
    REQUIRE(cli({"prepare-conditions", "--config", config, "--snapshot-dir", dir / "b"}).code == 0);
    int snapshots = 0;
    for (const auto& entry : fs::directory_iterator(dir.path / "a")) {
      const std::string name = entry.path().filename().string();
      if (name == "manifest.json" || name == "stats.csv") continue;
      ++snapshots;
      CHECK(read_file(entry.path()) == read_file(dir.path / "b" / name));
    }
    CHECK(snapshots == 6);
    const Snapshot pro = load_snapshot(dir / "a/polarized_pro.json");
    CHECK(pro.condition->bias == Bias::Pro);
    const Json manifest = Json::parse(read_file(dir / "a/manifest.json"));
    CHECK(manifest.at("outputs").size() == 7);

    const Outcome bad =
        cli({"prepare-conditions", "--config", small_config_file(dir, "invalid"), "--snapshot-dir",
             dir / "c"});
    CHECK(bad.code != 0);
    CHECK_FALSE(fs::exists(dir / "c/manifest.json"));
  }

  TEST_CASE("export-curve") {
    const Outcome r = cli({"export-curve", "--out", "-"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "interaction,o_m,o_i,delta,probability");
    bool found = false, low = false, high = false;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
      ++rows;
      if (line.rfind("like,0.80,0.80,", 0) == 0) {
        found = true;
        CHECK(std::stod(line.substr(line.rfind(',') + 1)) == doctest::Approx(0.6297026122));
      }
      low |= line.rfind("like,0.00,-1.00,", 0) == 0;
      high |= line.rfind("like,0.00,1.00,", 0) == 0;
    }
    CHECK(found);
    CHECK(low);
    CHECK(high);
    CHECK(rows == 4 * 7 * 201);
  }

  TEST_CASE("serve rejects a missing snapshot directory") {
    const Outcome r = cli({"serve", "--snapshot-dir", "/nonexistent/polarsim", "--port", "0"});
    CHECK(r.code != 0);
    CHECK(r.err.find("/nonexistent/polarsim") != std::string::npos);
  }
}
