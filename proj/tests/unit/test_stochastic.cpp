#include <doctest.h>

#include <cmath>
#include <vector>

#include "polarsim/core/error.hpp"
#include "polarsim/stochastic/distribution.hpp"
#include "polarsim/stochastic/kernels.hpp"
#include "polarsim/stochastic/rng.hpp"
#include "support.hpp"

using namespace polarsim;

// Reference values computed independently at 30 significant digits.
TEST_SUITE("stochastic") {
  TEST_CASE("sigmoid values") {
    const SigmoidParams p;
    CHECK(phi(0.5, p) == 0.5);
    CHECK(phi(0.0, p) == doctest::Approx(0.006692850924284856).epsilon(1e-12));
    CHECK(phi(1.0, p) == doctest::Approx(0.9933071490757153).epsilon(1e-12));
    CHECK(phi(0.8, p) == doctest::Approx(0.9525741268224334).epsilon(1e-12));
    CHECK(std::abs(phi(0.0, p) + phi(1.0, p) - 1.0) < 1e-12);
    for (double x = 0.0; x <= 2.0; x += 0.05) {
      CHECK(phi(x, p) + phi_complement(x, p) == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK(psi(Opinion{-0.8}, p) == doctest::Approx(phi(0.8, p)));
  }

  TEST_CASE("homophily factor") {
    CHECK(rho(Opinion{0.3}, Opinion{0.3}, ReactionParams::like()) ==
          doctest::Approx(0.935051674018).epsilon(1e-11));
    // Delta = 0.5: both sigmoid terms are 1/2, so rho = 2^-10 (1 + c).
    CHECK(rho(Opinion{0.0}, Opinion{0.5}, ReactionParams::comment()) ==
          doctest::Approx(0.00146484375).epsilon(1e-12));
    CHECK(rho(Opinion{-1.0}, Opinion{1.0}, ReactionParams::comment()) ==
          doctest::Approx(0.4999984709).epsilon(1e-9));
    CHECK(rho(Opinion{-1.0}, Opinion{1.0}, ReactionParams::like()) < 1e-40);
  }

  TEST_CASE("reaction probabilities") {
    CHECK(reaction_probability(Opinion{0.8}, Opinion{0.8}, ReactionParams::like()) ==
          doctest::Approx(0.6297026122).epsilon(1e-9));
    CHECK(reaction_probability(Opinion{0.8}, Opinion{-0.8}, ReactionParams::comment()) ==
          doctest::Approx(0.1442847954).epsilon(1e-9));
    CHECK(reaction_probability(Opinion{0.3}, Opinion{0.3}, ReactionParams::follow()) ==
          doctest::Approx(0.4675258359).epsilon(1e-9));
    CHECK(reaction_probability(Opinion{0.8}, Opinion{-0.8}, ReactionParams::follow()) < 1e-45);
    ReactionParams hot{1.0, 0.0, 1.0, 1.0, {}};
    for (double d = 0.0; d <= 2.0; d += 0.1) {
      const double pr = reaction_probability(Opinion{-1.0}, Opinion{-1.0 + d}, hot);
      CHECK(pr >= 0.0);
      CHECK(pr <= 1.0);
    }
  }

  TEST_CASE("posting probability by role") {
    PostingParams p;
    CHECK(posting_probability(testing::make_agent(0, 0.1), p) == 0.2);
    CHECK(posting_probability(testing::make_agent(0, 0.1, Role::Influencer), p) == 0.6);
    p.p_inf = 0.1;
    CHECK_THROWS_AS(p.validate(), Error);
  }

  TEST_CASE("parameter validation") {
    ReactionParams r = ReactionParams::like();
    CHECK_NOTHROW(r.validate());
    r.base_prob = 1.5;
    CHECK_THROWS_AS(r.validate(), Error);
    r = ReactionParams::like();
    r.sigmoid.beta = 0.0;
    CHECK_THROWS_AS(r.validate(), Error);
  }

  TEST_CASE("rng follows the standard engine") {
    // The standard fixes the 10000th output of a default-seeded mt19937_64.
    Rng rng(5489u);
    std::uint64_t x = 0;
    for (int i = 0; i < 10000; ++i) x = rng.next_u64();
    CHECK(x == 9981545732273789042ull);

    Rng a(7), b(7);
    for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
  }

  TEST_CASE("uniform and index are well distributed") {
    Rng rng(11);
    constexpr int kBins = 10;
    constexpr int kDraws = 100000;
    std::vector<int> counts(kBins, 0);
    double sum = 0.0;
    for (int i = 0; i < kDraws; ++i) {
      const double u = rng.uniform();
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
      sum += u;
      ++counts[rng.index(kBins)];
    }
    CHECK(sum / kDraws == doctest::Approx(0.5).epsilon(0.01));
    double chi2 = 0.0;
    const double expected = static_cast<double>(kDraws) / kBins;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    // 9 degrees of freedom, 99.9th percentile.
    CHECK(chi2 < 27.88);
    CHECK(rng.index(1) == 0);
  }

  TEST_CASE("normal variates") {
    Rng rng(3);
    double sum = 0.0;
    double sq = 0.0;
    constexpr int n = 100000;
    for (int i = 0; i < n; ++i) {
      const double x = rng.normal(1.0, 2.0);
      sum += x;
      sq += x * x;
    }
    const double mean = sum / n;
    CHECK(mean == doctest::Approx(1.0).epsilon(0.03));
    CHECK(std::sqrt(sq / n - mean * mean) == doctest::Approx(2.0).epsilon(0.02));
  }

  TEST_CASE("opinion sampling") {
    Rng rng(5);
    int positive = 0;
    for (int i = 0; i < 10000; ++i) {
      const Opinion o = sample_opinion(OpinionDistribution::polarized(), rng);
      REQUIRE(o.valid());
      REQUIRE(std::abs(std::abs(o.value) - 0.8) < 0.6);
      positive += o.value > 0;
    }
    CHECK(positive == doctest::Approx(5000).epsilon(0.05));

    OpinionDistribution edge{NormalShape{1.0, 0.5}};
    for (int i = 0; i < 1000; ++i) REQUIRE(sample_opinion(edge, rng).valid());

    OpinionDistribution impossible{NormalShape{5.0, 0.01}};
    try {
      sample_opinion(impossible, rng);
      FAIL("expected SamplerStuck");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SamplerStuck);
    }
    CHECK_THROWS_AS(impossible.validate(), Error);
  }
}
