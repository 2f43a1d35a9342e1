#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "netform/baseline.hpp"
#include "netform/error.hpp"

using namespace netform;

namespace {

double direct_marginal(const Network& g, const TypeVector& t, const PayoffParams& p, Link ij, Agent i) {
  Network with = g, without = g;
  with.add(ij);
  without.remove(ij);
  return connections_payoff(p, t, with, i) - connections_payoff(p, t, without, i);
}

}  // namespace

TEST(Marginals, MatchPayoffDifferences) {
  std::mt19937_64 rng(17);
  const auto types = TypeVector::from_counts({3, 4, 5});
  const PayoffParams p{{16, 10, 6}, 5, 0.6};
  for (int it = 0; it < 200; ++it) {
    Network g(12);
    const double density = 0.05 + 0.3 * static_cast<double>(rng() % 100) / 100.0;
    for (Agent a = 0; a < 12; ++a)
      for (Agent b = a + 1; b < 12; ++b)
        if (static_cast<double>(rng() % 1000) / 1000.0 < density) g.add(a, b);
    const auto a = static_cast<Agent>(rng() % 12);
    const auto b = static_cast<Agent>((a + 1 + rng() % 11) % 12);
    const Link ij(a, b);
    const auto m = link_marginals(g, types, p, ij);
    EXPECT_NEAR(m.to_i, direct_marginal(g, types, p, ij, ij.i), 1e-9);
    EXPECT_NEAR(m.to_j, direct_marginal(g, types, p, ij, ij.j), 1e-9);
  }
}

TEST(Marginals, WideNetworks) {
  // Rows span several words; a long path exercises deep layers.
  const std::size_t n = 150;
  Network g(n);
  for (Agent a = 0; a + 1 < n; ++a) g.add(a, a + 1);
  const auto types = TypeVector::homogeneous(n);
  const PayoffParams p{{1.0}, 0.3, 0.9};
  const Link ij(0, 149);
  const auto m = link_marginals(g, types, p, ij);
  EXPECT_NEAR(m.to_i, direct_marginal(g, types, p, ij, 0), 1e-9);
  EXPECT_NEAR(m.to_j, direct_marginal(g, types, p, ij, 149), 1e-9);
}

TEST(MyopicStep, FormsProfitableLink) {
  const auto types = TypeVector::homogeneous(2);
  const auto g = myopic_step(Network(2), types, {{2.0}, 1.0, 0.5}, Link(0, 1));
  EXPECT_TRUE(g.has(0, 1));
}

TEST(MyopicStep, DropsUnprofitableLink) {
  const auto types = TypeVector::homogeneous(2);
  const auto g = myopic_step(Network::complete(2), types, {{0.5}, 1.0, 0.5}, Link(0, 1));
  EXPECT_FALSE(g.has(0, 1));
}

TEST(MyopicStep, ExactTieDoesNotForm) {
  const auto types = TypeVector::homogeneous(2);
  const auto g = myopic_step(Network(2), types, {{1.0}, 1.0, 0.5}, Link(0, 1));
  EXPECT_FALSE(g.has(0, 1));
}

TEST(MyopicStep, OnlySelectedPairChanges) {
  // Link 1-2 is unprofitable for its endpoints, but only 0-3 is selected.
  const auto types = TypeVector::homogeneous(4);
  const auto g = Network::from_links(4, std::vector<Link>{{1, 2}});
  const auto h = myopic_step(g, types, {{0.5}, 1.0, 0.5}, Link(0, 3));
  EXPECT_EQ(h, g);
}

TEST(MyopicRun, TwoAgentsLink) {
  MyopicConfig c;
  c.n = 2;
  c.params = {{2.0}, 1.0, 0.5};
  c.type_counts = {2};
  c.seed = 4;
  const auto r = myopic_run(c);
  EXPECT_EQ(r.network, Network::complete(2));
  EXPECT_EQ(c.effective_horizon(), 2U);
}

TEST(MyopicRun, FinalLinksPassTheKeepRule) {
  MyopicConfig c;
  c.n = 30;
  c.params = {{10.0, 6.0}, 5.0, 0.6};
  c.type_counts = {10, 20};
  c.seed = 9;
  const auto r = myopic_run(c);
  EXPECT_EQ(r.network, myopic_run(c).network);
  EXPECT_GT(r.stats.links, 0U);
  // The last revision of a surviving link kept it, but later changes elsewhere can
  // undo that, so only check that the rule is applied consistently on a fresh step.
  const auto types = c.types();
  for (Agent a = 0; a < 30; ++a)
    for (Agent b = a + 1; b < 30; ++b) {
      const Link ij(a, b);
      const auto m = link_marginals(r.network, types, c.params, ij);
      const bool keep = m.to_i >= 0 && m.to_j >= 0 && (m.to_i > 0 || m.to_j > 0);
      EXPECT_EQ(myopic_step(r.network, types, c.params, ij).has(ij), keep);
    }
}

TEST(MyopicConfig, Validation) {
  MyopicConfig c;
  c.n = 10;
  c.params = {{1.0}, 0.5, 0.5};
  c.type_counts = {9};
  EXPECT_THROW(c.validate(), ConfigError);
  c.type_counts = {10};
  c.horizon = 50;
  EXPECT_THROW(c.validate(), ConfigError);
  c.horizon = 90;
  EXPECT_NO_THROW(c.validate());
}

TEST(MeanStderr, Basic) {
  const auto m = mean_stderr({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_NEAR(m.stderr_, std::sqrt(5.0 / 3.0 / 4.0), 1e-12);
}
