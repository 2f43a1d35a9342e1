#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "netform/efficiency.hpp"
#include "netform/equilibrium.hpp"
#include "netform/error.hpp"

using namespace netform;

namespace {

const auto kEx1 = PayoffModel::table(example1_table(1.0));
const auto kTri = TypeVector::homogeneous(3);

}  // namespace

TEST(Chain, StateCountAndRows) {
  const auto ch = build_chain(Network::complete(2), TypeVector::homogeneous(2),
                              PayoffModel::connections({{1.0}, 0.5, 0.5}), 1);
  EXPECT_EQ(ch.state_count(), 4U);
  for (const auto& row : ch.kernel) {
    double s = 0.0;
    for (const auto& [t, p] : row) s += p;
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(Chain, CompleteTargetFromEmpty) {
  const auto ch = build_chain(Network::complete(3), kTri, kEx1, 5);
  const auto& row = ch.kernel[ch.state(0, 0)];
  ASSERT_EQ(row.size(), 3U);
  for (const auto& [t, p] : row) {
    EXPECT_NEAR(p, 1.0 / 3.0, 1e-15);
    EXPECT_EQ(std::popcount(ch.mask_of(t)), 1);
  }
  // Punishment states move to the next punishment state with the empty network.
  const auto& pun = ch.kernel[ch.state(7, 2)];
  ASSERT_EQ(pun.size(), 1U);
  EXPECT_EQ(pun[0].first, ch.state(0, 3));
  EXPECT_THROW(build_chain(Network(5), TypeVector::homogeneous(5), kEx1, 1), SizeError);
}

TEST(Values, AbsorbingAndZeroDiscount) {
  const auto ch = build_chain(Network::complete(3), kTri, kEx1, 4);
  const auto v = exact_values(ch, 0.9);
  EXPECT_NEAR(v.value[0][ch.state(7, 0)], 1.0 / 0.1, 1e-9);
  const auto v0 = exact_values(ch, 0.0);
  EXPECT_DOUBLE_EQ(v0.value[1][ch.state(1, 0)], 2.0);  // link 0-1 alone
  EXPECT_DOUBLE_EQ(v0.value[2][ch.state(1, 0)], 0.0);
  EXPECT_THROW(exact_values(ch, 1.0), ArgumentError);
}

// Reference values from an independent numpy linear solve of the same chain.
TEST(Values, Example1Reference) {
  const auto ch = build_chain(Network::complete(3), kTri, kEx1, 2);
  const auto v = exact_values(ch, 0.9);
  EXPECT_NEAR(v.value[0][ch.state(0, 0)], 7.5, 1e-8);
}

TEST(Deviation, Example1Gains) {
  const auto hi = one_shot_deviation_gain(Network::complete(3), kTri, kEx1, 0.98, 60);
  EXPECT_NEAR(hi.gain, -31.207098057980048, 1e-7);
  const auto lo = one_shot_deviation_gain(Network::complete(3), kTri, kEx1, 0.5, 60);
  EXPECT_NEAR(lo.gain, 1.5, 1e-9);
  EXPECT_TRUE(lo.any_effective);
}

TEST(Deviation, SilentProfileHasNoProfitableDeviation) {
  for (double g : {0.1, 0.5, 0.99}) {
    const auto r = one_shot_deviation_gain(Network::complete(3), kTri, kEx1, g, 3, ChainProfile::Silent);
    EXPECT_LE(r.gain, 0.0);
  }
}

TEST(Threshold, Example1) {
  const std::vector<std::pair<std::uint32_t, double>> ref{
      {10, 0.7615788041519618}, {30, 0.7500312916654064}, {60, 0.7500000055810261}};
  double prev = 1.0;
  for (const auto& [K, gbar] : ref) {
    const auto t = threshold_gamma(Network::complete(3), kTri, kEx1, K);
    ASSERT_EQ(t.outcome, ThresholdOutcome::Interior);
    EXPECT_NEAR(t.gamma_bar, gbar, 1e-4);
    EXPECT_TRUE(t.verified);
    EXPECT_GT(t.gain_lo, 0.0);
    EXPECT_LE(t.gain_hi, 0.0);
    EXPECT_LE(t.gamma_bar, prev);
    prev = t.gamma_bar;
  }
}

TEST(Threshold, NegativePayoffTargetIsNeverSustained) {
  // The path gives its middle agent 2f - 2c < 0.
  const auto path = Network::from_links(3, std::vector<Link>{{0, 1}, {1, 2}});
  const auto t = threshold_gamma(path, kTri, PayoffModel::connections({{1.0}, 1.2, 0.5}), 5);
  EXPECT_EQ(t.outcome, ThresholdOutcome::NeverEquilibrium);
}

TEST(Threshold, MinK) {
  const auto k = min_K(Network::complete(3), kTri, kEx1, 0.9, 200);
  ASSERT_TRUE(k.has_value());
  EXPECT_LE(one_shot_deviation_gain(Network::complete(3), kTri, kEx1, 0.9, *k).gain, 0.0);
  if (*k > 1) EXPECT_GT(one_shot_deviation_gain(Network::complete(3), kTri, kEx1, 0.9, *k - 1).gain, 0.0);
  EXPECT_FALSE(min_K(Network::complete(3), kTri, kEx1, 0.5, 50).has_value());
}

TEST(Bound, TStar) {
  EXPECT_EQ(t_star(2), 1U);
  EXPECT_EQ(t_star(3), 3U);
  EXPECT_EQ(t_star(4), 10U);
}

// Reference values by direct summation of the per-period lower bound.
TEST(Bound, PayoffLowerBoundClosedForm) {
  EXPECT_NEAR(lemma1_lower_bound(0.9, 50, -1.5, 2.0, 4), -6.799246786181237, 1e-10);
  EXPECT_NEAR(lemma1_lower_bound(0.9, std::nullopt, -1.5, 2.0, 4), -6.696210924550787, 1e-9);
  EXPECT_NEAR(lemma1_lower_bound(0.95, 2, -0.5, 1.0, 3), -0.975, 1e-12);
}

TEST(Bound, PayoffLowerBoundDivergesAsGammaToOne) {
  double prev = -1e300;
  for (int k = 1; k <= 6; ++k) {
    const double v = lemma1_lower_bound(1.0 - std::pow(10.0, -k), std::nullopt, -1.0, 0.5, 3);
    EXPECT_GT(v, prev);
    prev = v;
  }
  EXPECT_GT(prev, 1e4);
}

TEST(Bound, PayoffLowerBoundNoGapGivesGeometricTail) {
  const double g = 0.8, u = 1.5;
  const double v = lemma1_lower_bound(g, std::nullopt, u, u, 3);
  EXPECT_NEAR(v, u / (1.0 - g), 1e-12);
}

TEST(Bound, Example1Components) {
  const auto b = bound_components(Network::complete(3), kTri, kEx1);
  EXPECT_DOUBLE_EQ(b.v_bar, 2.0);
  EXPECT_DOUBLE_EQ(b.W, 0.0);
  EXPECT_DOUBLE_EQ(b.V_max, 2.0);
  EXPECT_EQ(b.t_star, 3U);
  // (V - W) [(t* - 1) + P q^{t*} / (1 - q)] with P = 3, q = 2/3
  EXPECT_NEAR(b.A, 2.0 * (2.0 + 3.0 * 8.0 / 27.0 * 3.0), 1e-12);
}

TEST(Bound, SoundAgainstExactOracle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int certified = 0;
  for (int it = 0; it < 150; ++it) {
    const std::size_t n = 2 + rng() % 2;
    const auto types = n == 2 ? TypeVector::from_counts({1, 1}) : TypeVector::from_counts({1, 2});
    const auto model = PayoffModel::connections({{0.5 + 3 * U(rng), 0.5 + 3 * U(rng)}, 0.1 + 2 * U(rng), 0.05 + 0.9 * U(rng)});
    const std::uint64_t mask = 1 + rng() % ((1U << pair_count(n)) - 1);
    const auto target = Network::from_mask(n, mask);
    const auto b = bound_components(target, types, model);
    if (*std::min_element(b.u_target.begin(), b.u_target.end()) <= 0.0) continue;
    const double g = 1.0 - std::pow(10.0, -1.0 - 3.0 * U(rng));
    const std::uint32_t K = 1 + static_cast<std::uint32_t>(rng() % 80);
    if (!theorem1_bound(b, g, K).certifies) continue;
    ++certified;
    EXPECT_LE(one_shot_deviation_gain(target, types, model, g, K).gain, 1e-9);
  }
  EXPECT_GT(certified, 20);
}

TEST(Group, BoundSoundAndCooperationPhaseSafe) {
  // Star around α with two β leaves; core-stable for these values.
  const auto types = TypeVector::from_counts({1, 2});
  const auto model = PayoffModel::connections({{3.0, 1.5}, 1.0, 0.5});
  const auto g = Network::from_links(3, std::vector<Link>{{0, 1}, {0, 2}});
  ASSERT_FALSE(is_core_stable(g, types, model).has_value());
  const auto b = group_deviation_bound(g, types, model);
  EXPECT_LT(b.F, 0.0);
  for (std::uint32_t members = 1; members < 7; ++members) {
    std::vector<Agent> coalition;
    for (Agent i = 0; i < 3; ++i)
      if ((members >> i) & 1U) coalition.push_back(i);
    std::vector<Network> devs{Network(3)};
    if (coalition.size() == 2) devs.push_back(Network::from_links(3, std::vector<Link>{{coalition[0], coalition[1]}}));
    for (const auto& dev : devs)
      for (std::uint64_t kp : {0ULL, 1ULL, 5ULL, 40ULL}) {
        const auto r = group_deviation_check(g, coalition, dev, kp, 0.95, 40, types, model);
        if (r.bound_says_unprofitable) EXPECT_FALSE(r.profitable);
        if (kp == 0) EXPECT_FALSE(r.profitable);
      }
  }
  EXPECT_THROW(group_deviation_check(g, {0, 1, 2}, Network(3), 0, 0.9, 5, types, model), ArgumentError);
  EXPECT_THROW(group_deviation_check(g, {0, 1}, Network::from_links(3, std::vector<Link>{{1, 2}}), 0, 0.9, 5, types,
                                     model),
               ArgumentError);
}

TEST(Group, MOfGamma) {
  const auto types = TypeVector::from_counts({1, 2});
  const auto model = PayoffModel::connections({{3.0, 1.5}, 1.0, 0.5});
  const auto g = Network::from_links(3, std::vector<Link>{{0, 1}, {0, 2}});
  const auto b = group_deviation_bound(g, types, model);
  std::uint64_t prev = 0;
  for (double gm : {0.5, 0.9, 0.99, 0.999, 0.9999, 1.0 - 1e-6}) {
    const auto m = m_of_gamma(b, gm);
    EXPECT_GE(m, prev);
    if (m > 0) {
      EXPECT_LT(b.value(gm, m), 0.0);
      EXPECT_GE(b.value(gm, m + 1), 0.0);
    }
    prev = m;
  }
  EXPECT_GT(m_of_gamma(b, 1.0 - 1e-6), m_of_gamma(b, 0.9));
  const auto blocked = group_deviation_bound(Network::complete(3), kTri, kEx1);
  EXPECT_GE(blocked.F, 0.0);
  EXPECT_THROW(m_of_gamma(blocked, 0.9), ArgumentError);
}

TEST(DeltaStatics, ReportsPerPoint) {
  const auto pts = gamma_of_delta({0.1, 0.2, 0.3}, Network::complete(3), kTri, {{1.0}, 0.2, 0.5}, 20);
  ASSERT_EQ(pts.size(), 3U);
  // Every link pays on its own when (1-δ)f > c, so no threshold exists here.
  for (const auto& p : pts) EXPECT_EQ(p.threshold.outcome, ThresholdOutcome::AlwaysEquilibrium);
  EXPECT_FALSE(strictly_decreasing(pts));
  const auto same = gamma_of_delta({0.3, 0.3}, Network::complete(3), kTri, {{1.0}, 0.95, 0.5}, 20);
  EXPECT_DOUBLE_EQ(same[0].threshold.gamma_bar, same[1].threshold.gamma_bar);
}

TEST(Probe, IncompleteInformationRefusalsDoNotPay) {
  const TypeVector truth{{0, 1, 0, 1, 1}, 2};
  ProbeConfig pc;
  pc.gamma = 0.95;
  pc.K = 10;
  pc.J = 3;
  pc.horizon = 1500;
  pc.seeds = {1, 2, 3};
  pc.deviation_periods = {1, 5, 60};
  const auto r = probe_ic_deviations(star_wheel_plan(), truth, {{4.0, 0.9}, 1.0, 0.5}, {0.5, 0.5}, pc);
  EXPECT_EQ(r.probes, 5U * 3U * 3U);
  EXPECT_LE(r.max_gain, 0.0);
}
