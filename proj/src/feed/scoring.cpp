#include "polarsim/feed/scoring.hpp"

#include <cmath>

#include "polarsim/core/error.hpp"

namespace polarsim {

void FeedWeights::validate() const {
  if (popularity < 0 || ideology < 0 || randomness < 0) {
    throw Error(ErrorCode::InvalidConfig, "feed weights must be non-negative");
  }
  if (std::abs(popularity + ideology + randomness - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidConfig, "feed weights must sum to 1");
  }
}

double popularity_score(const Message& m) noexcept {
  return static_cast<double>(m.likes) + 2.0 * m.comments + 2.0 * m.reposts;
}

double collaborative_score(double popularity, double max_popularity, Opinion user, Opinion author,
                           const FeedWeights& weights, double epsilon) noexcept {
  const double popular = max_popularity > 0.0 ? popularity / max_popularity : 0.0;
  const double proximity = (2.0 - std::abs(user.value - author.value)) / 2.0;
  return weights.popularity * popular + weights.ideology * proximity + weights.randomness * epsilon;
}

double pro_share(Bias bias) noexcept {
  switch (bias) {
    case Bias::Pro: return 0.7;
    case Bias::Balanced: return 0.5;
    case Bias::Contra: return 0.3;
  }
  return 0.5;
}

void to_json(Json& j, const FeedWeights& w) {
  j = Json{{"popularity", w.popularity}, {"ideology", w.ideology}, {"randomness", w.randomness}};
}

void from_json(const Json& j, FeedWeights& w) {
  read_optional(j, "popularity", w.popularity);
  read_optional(j, "ideology", w.ideology);
  read_optional(j, "randomness", w.randomness);
}

}  // namespace polarsim
