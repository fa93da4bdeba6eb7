#pragma once

#include "polarsim/core/types.hpp"
#include "polarsim/sim/snapshot.hpp"

namespace polarsim {

/// Participant-feed ranking weights. Must be non-negative and sum to one.
struct FeedWeights {
  double popularity = 0.6;
  double ideology = 0.2;
  double randomness = 0.2;

  void validate() const;
  friend bool operator==(const FeedWeights&, const FeedWeights&) = default;
};

/// likes + 2 * comments + 2 * reposts
double popularity_score(const Message& m) noexcept;

/// Popularity normalized by max_popularity, ideological proximity
/// (2 - |user - author|) / 2, and the random term epsilon in [0, 1], mixed
/// by `weights`. The popularity term is 0 when max_popularity is 0.
double collaborative_score(double popularity, double max_popularity, Opinion user, Opinion author,
                           const FeedWeights& weights, double epsilon) noexcept;

/// Share of pro-stance slots per page: 0.7, 0.5 or 0.3.
double pro_share(Bias bias) noexcept;

void to_json(Json& j, const FeedWeights& w);
void from_json(const Json& j, FeedWeights& w);

}  // namespace polarsim
