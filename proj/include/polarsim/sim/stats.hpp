#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "polarsim/sim/state.hpp"

namespace polarsim {

struct RoleStats {
  std::size_t agents = 0;
  double followers = 0.0;
  double followees = 0.0;
  double posts = 0.0;
  double likes = 0.0;     // likes given
  double comments = 0.0;  // comments authored
  double reposts = 0.0;   // reposts authored
};

/// Per-role means over agents that hold an opinion (human participants are
/// left out).
struct PlatformStats {
  RoleStats overall;
  RoleStats influencers;
  RoleStats regular;
};

PlatformStats compute_stats(const SimulationState& state);

/// Columns: condition, user_type, avg_followers, avg_followees, avg_posts,
/// avg_likes, avg_comments, avg_reposts. Three rows per condition (Overall,
/// Influencers, Regular).
void write_stats_csv(std::ostream& out,
                     const std::vector<std::pair<std::string, PlatformStats>>& rows);

}  // namespace polarsim
