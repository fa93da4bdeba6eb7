#include "polarsim/sim/stats.hpp"

#include <cstdio>

namespace polarsim {
namespace {

struct Totals {
  std::size_t n = 0;
  double followers = 0, followees = 0, posts = 0, likes = 0, comments = 0, reposts = 0;

  RoleStats mean() const {
    RoleStats r;
    r.agents = n;
    if (n == 0) return r;
    const double d = static_cast<double>(n);
    r.followers = followers / d;
    r.followees = followees / d;
    r.posts = posts / d;
    r.likes = likes / d;
    r.comments = comments / d;
    r.reposts = reposts / d;
    return r;
  }
};

void write_row(std::ostream& out, const std::string& condition, const char* type,
               const RoleStats& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, ",%s,%.3f,%.3f,%.3f,%.3f,%.3f,%.3f\n", type, r.followers,
                r.followees, r.posts, r.likes, r.comments, r.reposts);
  out << condition << buf;
}

}  // namespace

PlatformStats compute_stats(const SimulationState& state) {
  const std::size_t n = state.agents.size();
  std::vector<double> posts(n), likes(n), comments(n), reposts(n);
  for (const Message& m : state.messages) {
    if (m.author.value >= n) continue;
    switch (m.kind) {
      case MessageKind::Post: posts[m.author.value] += 1; break;
      case MessageKind::Comment: comments[m.author.value] += 1; break;
      case MessageKind::Repost: reposts[m.author.value] += 1; break;
    }
  }
  for (const SessionEvent& e : state.event_log) {
    if (e.action == Action::Like && e.actor.value < n) likes[e.actor.value] += 1;
  }

  Totals all, infl, reg;
  for (const Agent& a : state.agents) {
    if (!a.opinion) continue;
    const std::size_t i = a.id.value;
    for (Totals* t : {&all, a.is_influencer() ? &infl : &reg}) {
      t->n += 1;
      t->followers += static_cast<double>(state.graph.follower_count(a.id));
      t->followees += static_cast<double>(state.graph.followee_count(a.id));
      t->posts += posts[i];
      t->likes += likes[i];
      t->comments += comments[i];
      t->reposts += reposts[i];
    }
  }
  return PlatformStats{all.mean(), infl.mean(), reg.mean()};
}

void write_stats_csv(std::ostream& out,
                     const std::vector<std::pair<std::string, PlatformStats>>& rows) {
  out << "condition,user_type,avg_followers,avg_followees,avg_posts,avg_likes,avg_comments,"
         "avg_reposts\n";
  for (const auto& [condition, stats] : rows) {
    write_row(out, condition, "Overall", stats.overall);
    write_row(out, condition, "Influencers", stats.influencers);
    write_row(out, condition, "Regular", stats.regular);
  }
}

}  // namespace polarsim
