#include "polarsim/sim/config.hpp"

#include <string>

#include "polarsim/core/error.hpp"

namespace polarsim {

void SimulationConfig::validate() const {
  if (n_agents != n_regular + n_influencers_pro + n_influencers_contra) {
    throw Error(ErrorCode::InvalidConfig,
                "n_agents (" + std::to_string(n_agents) +
                    ") must equal n_regular + n_influencers_pro + n_influencers_contra");
  }
  if (n_agents < 2) throw Error(ErrorCode::InvalidConfig, "need at least two agents");
  if (memory_capacity == 0) throw Error(ErrorCode::InvalidConfig, "memory_capacity must be > 0");
  posting.validate();
  distribution.validate();
  reaction_like.validate();
  reaction_repost.validate();
  reaction_comment.validate();
  network_init.validate();
  connection.validate();
  validate_topic(topic);
}

void to_json(Json& j, const SigmoidParams& p) { j = Json{{"beta", p.beta}, {"theta", p.theta}}; }

void from_json(const Json& j, SigmoidParams& p) {
  read_optional(j, "beta", p.beta);
  read_optional(j, "theta", p.theta);
}

void to_json(Json& j, const ReactionParams& p) {
  j = Json{{"base_prob", p.base_prob},
           {"strength_weight", p.strength_weight},
           {"cross_ideology", p.cross_ideology},
           {"gamma", p.gamma},
           {"sigmoid", p.sigmoid}};
}

void from_json(const Json& j, ReactionParams& p) {
  read_optional(j, "base_prob", p.base_prob);
  read_optional(j, "strength_weight", p.strength_weight);
  read_optional(j, "cross_ideology", p.cross_ideology);
  read_optional(j, "gamma", p.gamma);
  read_optional(j, "sigmoid", p.sigmoid);
}

void to_json(Json& j, const PostingParams& p) { j = Json{{"p_reg", p.p_reg}, {"p_inf", p.p_inf}}; }

void from_json(const Json& j, PostingParams& p) {
  read_optional(j, "p_reg", p.p_reg);
  read_optional(j, "p_inf", p.p_inf);
}

void to_json(Json& j, const OpinionDistribution& d) {
  if (const auto* n = std::get_if<NormalShape>(&d.shape)) {
    j = Json{{"shape", "normal"}, {"mu", n->mu}, {"sigma", n->sigma}};
  } else {
    const auto& b = std::get<BimodalShape>(d.shape);
    j = Json{{"shape", "bimodal"}, {"mu1", b.mu1}, {"mu2", b.mu2}, {"sigma", b.sigma}};
  }
}

void from_json(const Json& j, OpinionDistribution& d) {
  const std::string shape = j.at("shape").get<std::string>();
  if (shape == "normal") {
    NormalShape n;
    read_optional(j, "mu", n.mu);
    read_optional(j, "sigma", n.sigma);
    d.shape = n;
  } else if (shape == "bimodal") {
    BimodalShape b;
    read_optional(j, "mu1", b.mu1);
    read_optional(j, "mu2", b.mu2);
    read_optional(j, "sigma", b.sigma);
    d.shape = b;
  } else {
    throw Error(ErrorCode::InvalidConfig, "unknown distribution shape '" + shape + "'");
  }
}

void to_json(Json& j, const NetworkInitParams& p) {
  j = Json{{"p_influencer", p.p_influencer}, {"p_same", p.p_same}, {"p_different", p.p_different}};
}

void from_json(const Json& j, NetworkInitParams& p) {
  read_optional(j, "p_influencer", p.p_influencer);
  read_optional(j, "p_same", p.p_same);
  read_optional(j, "p_different", p.p_different);
}

void to_json(Json& j, const ConnectionDynamicsParams& p) {
  j = Json{{"follow_reaction", p.follow_reaction}, {"p_unfollow", p.p_unfollow}};
}

void from_json(const Json& j, ConnectionDynamicsParams& p) {
  read_optional(j, "follow_reaction", p.follow_reaction);
  read_optional(j, "p_unfollow", p.p_unfollow);
}

void to_json(Json& j, const SimulationConfig& c) {
  j = Json{{"n_agents", c.n_agents},
           {"n_regular", c.n_regular},
           {"n_influencers_pro", c.n_influencers_pro},
           {"n_influencers_contra", c.n_influencers_contra},
           {"n_iterations", c.n_iterations},
           {"n_recs", c.n_recs},
           {"memory_capacity", c.memory_capacity},
           {"posting", c.posting},
           {"distribution", c.distribution},
           {"reaction_like", c.reaction_like},
           {"reaction_repost", c.reaction_repost},
           {"reaction_comment", c.reaction_comment},
           {"network_init", c.network_init},
           {"connection", c.connection},
           {"topic", c.topic},
           {"seed", c.seed}};
}

void from_json(const Json& j, SimulationConfig& c) {
  read_optional(j, "n_agents", c.n_agents);
  read_optional(j, "n_regular", c.n_regular);
  read_optional(j, "n_influencers_pro", c.n_influencers_pro);
  read_optional(j, "n_influencers_contra", c.n_influencers_contra);
  read_optional(j, "n_iterations", c.n_iterations);
  read_optional(j, "n_recs", c.n_recs);
  read_optional(j, "memory_capacity", c.memory_capacity);
  read_optional(j, "posting", c.posting);
  read_optional(j, "distribution", c.distribution);
  read_optional(j, "reaction_like", c.reaction_like);
  read_optional(j, "reaction_repost", c.reaction_repost);
  read_optional(j, "reaction_comment", c.reaction_comment);
  read_optional(j, "network_init", c.network_init);
  read_optional(j, "connection", c.connection);
  read_optional(j, "topic", c.topic);
  read_optional(j, "seed", c.seed);
}

}  // namespace polarsim
