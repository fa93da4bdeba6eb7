#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "polarsim/core/json.hpp"
#include "polarsim/sim/config.hpp"
#include "polarsim/sim/state.hpp"

namespace polarsim {

inline constexpr int kSnapshotFormatVersion = 1;

enum class Polarization { Polarized, Moderate };
enum class Bias { Pro, Balanced, Contra };

std::string_view to_string(Polarization p) noexcept;
std::string_view to_string(Bias b) noexcept;
Polarization polarization_from_string(std::string_view s);
Bias bias_from_string(std::string_view s);

struct ConditionTag {
  Polarization polarization = Polarization::Polarized;
  Bias bias = Bias::Balanced;

  /// e.g. "polarized_pro"
  std::string key() const;
  friend bool operator==(const ConditionTag&, const ConditionTag&) = default;
};

/// A serialized run: versioned header plus the full state.
struct Snapshot {
  int format_version = kSnapshotFormatVersion;
  SimulationConfig config;
  std::uint64_t seed = 0;
  std::optional<ConditionTag> condition;
  SimulationState state;
};

void to_json(Json& j, const ConditionTag& c);
void from_json(const Json& j, ConditionTag& c);
void to_json(Json& j, const Snapshot& s);
void from_json(const Json& j, Snapshot& s);

/// Writes through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

void save_snapshot(const std::filesystem::path& path, const Snapshot& snapshot);
Snapshot load_snapshot(const std::filesystem::path& path);

}  // namespace polarsim
