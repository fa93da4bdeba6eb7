#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <vector>

#include "polarsim/llm/gateway.hpp"
#include "polarsim/sim/snapshot.hpp"

namespace polarsim {

using GatewayFactory = std::function<std::unique_ptr<Gateway>()>;

/// Runs one agent-only simulation per polarization level, each with a fresh
/// gateway and an Rng seeded from its config, and tags a copy of each result
/// for every bias. Both configs are validated before any run starts.
/// Returns the six snapshots ordered polarized/moderate x pro/balanced/contra.
std::vector<Snapshot> prepare_conditions(const SimulationConfig& polarized,
                                         const SimulationConfig& moderate,
                                         const GatewayFactory& make_gateway);

/// Writes each snapshot to `<dir>/<condition key>.json`, atomically per
/// file. Returns the written paths.
std::vector<std::filesystem::path> write_conditions(const std::filesystem::path& dir,
                                                    const std::vector<Snapshot>& snapshots);

}  // namespace polarsim
