#include "polarsim/sim/snapshot.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "polarsim/core/error.hpp"
#include "polarsim/stochastic/rng.hpp"

namespace polarsim {

std::string_view to_string(Polarization p) noexcept {
  return p == Polarization::Polarized ? "polarized" : "moderate";
}

std::string_view to_string(Bias b) noexcept {
  switch (b) {
    case Bias::Pro: return "pro";
    case Bias::Balanced: return "balanced";
    case Bias::Contra: return "contra";
  }
  return "balanced";
}

Polarization polarization_from_string(std::string_view s) {
  if (s == "polarized") return Polarization::Polarized;
  if (s == "moderate") return Polarization::Moderate;
  throw Error(ErrorCode::BadRequest, "unknown polarization '" + std::string(s) + "'");
}

Bias bias_from_string(std::string_view s) {
  if (s == "pro") return Bias::Pro;
  if (s == "balanced") return Bias::Balanced;
  if (s == "contra") return Bias::Contra;
  throw Error(ErrorCode::BadRequest, "unknown bias '" + std::string(s) + "'");
}

std::string ConditionTag::key() const {
  return std::string(to_string(polarization)) + "_" + std::string(to_string(bias));
}

void to_json(Json& j, const ConditionTag& c) {
  j = Json{{"polarization", to_string(c.polarization)}, {"bias", to_string(c.bias)}};
}

void from_json(const Json& j, ConditionTag& c) {
  c.polarization = polarization_from_string(j.at("polarization").get<std::string>());
  c.bias = bias_from_string(j.at("bias").get<std::string>());
}

void to_json(Json& j, const Snapshot& s) {
  j = Json{{"format_version", s.format_version},
           {"config", s.config},
           {"seed", s.seed},
           {"rng", Rng::kAlgorithm},
           {"condition", s.condition ? Json(*s.condition) : Json(nullptr)},
           {"state", s.state}};
}

void from_json(const Json& j, Snapshot& s) {
  j.at("format_version").get_to(s.format_version);
  if (s.format_version != kSnapshotFormatVersion) {
    throw Error(ErrorCode::BadRequest,
                "unsupported snapshot format_version " + std::to_string(s.format_version));
  }
  s.config = SimulationConfig{};
  j.at("config").get_to(s.config);
  j.at("seed").get_to(s.seed);
  s.condition.reset();
  if (const auto& c = j.at("condition"); !c.is_null()) s.condition = c.get<ConditionTag>();
  j.at("state").get_to(s.state);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot move " + tmp.string() + ": " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void save_snapshot(const std::filesystem::path& path, const Snapshot& snapshot) {
  write_file_atomic(path, Json(snapshot).dump(1) + "\n");
}

Snapshot load_snapshot(const std::filesystem::path& path) {
  try {
    return Json::parse(read_file(path)).get<Snapshot>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::BadRequest, "malformed snapshot " + path.string() + ": " + e.what());
  }
}

}  // namespace polarsim
