#include "polarsim/feed/conditions.hpp"

#include "polarsim/core/error.hpp"
#include "polarsim/sim/engine.hpp"

namespace polarsim {

std::vector<Snapshot> prepare_conditions(const SimulationConfig& polarized,
                                         const SimulationConfig& moderate,
                                         const GatewayFactory& make_gateway) {
  polarized.validate();
  moderate.validate();

  std::vector<Snapshot> out;
  const std::pair<Polarization, const SimulationConfig*> runs[] = {
      {Polarization::Polarized, &polarized}, {Polarization::Moderate, &moderate}};
  for (const auto& [polarization, config] : runs) {
    auto gateway = make_gateway();
    Rng rng(config->seed);
    Snapshot base;
    base.config = *config;
    base.seed = config->seed;
    base.state = run(*config, *gateway, rng);
    for (Bias bias : {Bias::Pro, Bias::Balanced, Bias::Contra}) {
      Snapshot tagged = base;
      tagged.condition = ConditionTag{polarization, bias};
      out.push_back(std::move(tagged));
    }
  }
  return out;
}

std::vector<std::filesystem::path> write_conditions(const std::filesystem::path& dir,
                                                    const std::vector<Snapshot>& snapshots) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  for (const Snapshot& s : snapshots) {
    if (!s.condition) throw Error(ErrorCode::BadRequest, "condition snapshot without a tag");
    paths.push_back(dir / (s.condition->key() + ".json"));
    save_snapshot(paths.back(), s);
  }
  return paths;
}

}  // namespace polarsim
