#include <gtest/gtest.h>

#include <numeric>
#include <regex>

#include "netform/efficiency.hpp"
#include "netform/error.hpp"
#include "netform/game.hpp"

using namespace netform;

namespace {

// f(α)=4 > c=1 > f(β)=0.9, (1+δ)f(β) > c, and the two-α star centre stays positive.
const PayoffParams kParams{{4.0, 0.9}, 1.0, 0.5};

std::vector<Agent> all_agents(std::size_t n) {
  std::vector<Agent> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

TEST(Beliefs, RulesOfLearning) {
  const TypeVector truth{{0, 1, 1}, 2};
  Beliefs b(truth, {0.3, 0.7});
  EXPECT_TRUE(b.knows(1, 1));
  EXPECT_DOUBLE_EQ(b.probability(1, 1, 1), 1.0);
  EXPECT_FALSE(b.knows(0, 2));
  EXPECT_DOUBLE_EQ(b.probability(0, 2, 0), 0.3);
  const auto same = belief_update(b, BeliefEvent{});
  EXPECT_FALSE(same.knows(0, 2));
  const auto linked = belief_update(b, BeliefEvent{Link(0, 2)});
  EXPECT_TRUE(linked.knows(0, 2));
  EXPECT_TRUE(linked.knows(2, 0));
  EXPECT_DOUBLE_EQ(linked.probability(0, 2, 1), 1.0);
  EXPECT_FALSE(linked.complete_within({true, true, true}));
  EXPECT_TRUE(linked.complete_within({true, false, true}));
  EXPECT_THROW(Beliefs(truth, {0.5, 0.6}), ConfigError);
  EXPECT_THROW(Beliefs(truth, {1.0}), ConfigError);
}

TEST(PartialEquilibrium, AlphaCentredStar) {
  const TypeVector types{{0, 1, 1, 1}, 2};
  const auto star = Network::from_links(4, std::vector<Link>{{0, 1}, {0, 2}, {0, 3}});
  const std::vector<Agent> betas{1, 2, 3};
  EXPECT_TRUE(is_partial_equilibrium(star, betas, types, kParams));
  // A β-centred star leaves the β centre paying for links to β leaves.
  const TypeVector flipped{{1, 0, 1, 1}, 2};
  EXPECT_FALSE(is_partial_equilibrium(star, std::vector<Agent>{0}, flipped, kParams));
}

TEST(Admissibility, StarWheelPlanHolds) {
  const auto members = all_agents(5);
  const auto rep = check_admissible(star_wheel_plan(), members, 2, kParams, 5);
  EXPECT_TRUE(rep.admissible) << rep.reason;
}

TEST(Admissibility, ViolationIsCaught) {
  // Raising c to 1.5 makes the β wheel unprofitable: 2(0.9) + 0.5(2)(0.9) < 3.
  const auto rep = check_admissible(star_wheel_plan(), all_agents(5), 2, {{4.0, 0.9}, 1.5, 0.5}, 5);
  EXPECT_FALSE(rep.admissible);
  EXPECT_FALSE(rep.counterexample.empty());

  AdmissiblePlan leaky = star_wheel_plan();
  leaky.r = [](std::span<const Agent>, std::span<const int>, std::size_t n) {
    return Network::from_links(n, std::vector<Link>{{0, 4}});
  };
  const std::vector<Agent> sub{0, 1, 2};
  EXPECT_FALSE(check_admissible(leaky, sub, 2, kParams, 5).admissible);
}

TEST(StarWheel, Shapes) {
  const auto plan = star_wheel_plan();
  const auto members = all_agents(5);
  const std::vector<int> two_alpha{1, 0, 1, 0, 1};
  const auto star = plan.r(members, two_alpha, 5);
  EXPECT_EQ(star.degree(1), 4U);
  EXPECT_EQ(star.link_count(), 4U);
  const std::vector<int> one_alpha{1, 1, 0, 1, 1};
  const auto wheel = plan.r(members, one_alpha, 5);
  for (Agent i = 0; i < 5; ++i) EXPECT_EQ(wheel.degree(i), 2U);
  const std::vector<Agent> pair{1, 3};
  EXPECT_EQ(plan.r(pair, std::vector<int>{1, 1}, 5).link_count(), 1U);
}

TEST(IcMonitor, ExperimentationDropsRefusers) {
  const std::size_t n = 3;
  const TypeVector truth{{0, 0, 1}, 2};
  Beliefs b(truth, {0.5, 0.5});
  IcState s{IcPhase::X0, std::vector<bool>(n, true), 0};
  const IcTargets tg{Network::complete(n), Network::complete(n)};
  const Network empty(n);
  // Pair 0-2 is selected and refused: both endpoints leave the experiment.
  auto next = monitor_update_ic(s, IcObservation{empty, Link(0, 2), empty, b}, tg, 2, 2);
  EXPECT_EQ(next.nonsolitary, (std::vector<bool>{false, true, false}));
  // A lone member trivially has complete information.
  EXPECT_EQ(next.phase, IcPhase::T);
}

TEST(IcMonitor, TransitionThenExploitationThenPunishment) {
  const std::size_t n = 3;
  const TypeVector truth{{0, 0, 0}, 1};
  Beliefs b(truth, {1.0});
  const auto r = Network::from_links(n, std::vector<Link>{{0, 1}, {0, 2}});
  const IcTargets tg{r, r};
  IcState s{IcPhase::T, std::vector<bool>(n, true), 0};
  const std::uint32_t K = 2, J = 2;
  s = monitor_update_ic(s, IcObservation{r, Link(1, 2), r, b}, tg, K, J);
  EXPECT_EQ(s.phase, IcPhase::T);
  EXPECT_EQ(s.counter, 1U);
  s = monitor_update_ic(s, IcObservation{r, Link(1, 2), r, b}, tg, K, J);
  EXPECT_EQ(s.phase, IcPhase::EC);
  const auto broken = Network::from_links(n, std::vector<Link>{{0, 1}});
  s = monitor_update_ic(s, IcObservation{r, Link(1, 2), broken, b}, tg, K, J);
  EXPECT_EQ(s.phase, IcPhase::EP);
  s = monitor_update_ic(s, IcObservation{broken, Link(1, 2), Network(n), b}, tg, K, J);
  EXPECT_EQ(s.phase, IcPhase::EP);
  s = monitor_update_ic(s, IcObservation{Network(n), Link(1, 2), Network(n), b}, tg, K, J);
  EXPECT_EQ(s.phase, IcPhase::EC);
}

TEST(IcMonitor, ForeignLinkInsideGroupIsADeviation) {
  const std::size_t n = 3;
  const TypeVector truth{{0, 0, 0}, 1};
  Beliefs b(truth, {1.0});
  const auto r = Network::from_links(n, std::vector<Link>{{0, 1}, {0, 2}});
  IcState s{IcPhase::EC, std::vector<bool>(n, true), 0};
  auto with_extra = r;
  with_extra.add(1, 2);
  s = monitor_update_ic(s, IcObservation{r, Link(1, 2), with_extra, b}, IcTargets{r, r}, 2, 2);
  EXPECT_EQ(s.phase, IcPhase::EP);
}

TEST(IcStrategy, PhaseRules) {
  const std::size_t n = 3;
  const auto r = Network::from_links(n, std::vector<Link>{{0, 1}});
  const IcTargets tg{r, r};
  IcState s{IcPhase::X0, std::vector<bool>(n, true), 0};
  const ActionContext sel{true, false};
  EXPECT_TRUE(strategy_sic(s, true, tg, sel, Link(1, 2)));
  EXPECT_FALSE(strategy_sic(s, false, tg, sel, Link(1, 2)));
  EXPECT_FALSE(strategy_sic(s, true, tg, ActionContext{false, false}, Link(1, 2)));
  s.phase = IcPhase::T;
  EXPECT_FALSE(strategy_sic(s, true, tg, sel, Link(1, 2)));
  EXPECT_TRUE(strategy_sic(s, true, tg, sel, Link(0, 1)));
  s.phase = IcPhase::EC;
  EXPECT_TRUE(strategy_sic(s, true, tg, sel, Link(0, 1)));
  s.phase = IcPhase::EP;
  EXPECT_FALSE(strategy_sic(s, true, tg, sel, Link(0, 1)));
  s.phase = IcPhase::EC;
  s.nonsolitary[1] = false;
  EXPECT_FALSE(strategy_sic(s, true, tg, sel, Link(0, 1)));
}

TEST(IcSimulation, ConvergesWithCompleteKnowledge) {
  const std::regex grammar("^(X0 )*(T )*(EC )*$");
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const TypeVector truth{{static_cast<int>(seed & 1), 1, 0, 1, static_cast<int>((seed >> 1) & 1)}, 2};
    ExperimentationProtocol p(star_wheel_plan(), truth, kParams, {0.5, 0.5}, 5, 3);
    SimConfig c;
    c.n = 5;
    c.K = 5;
    c.J = 3;
    c.seed = seed;
    c.horizon = 2000;
    c.initial_network = Network(5);
    const auto tr = run(c, p);
    ASSERT_TRUE(tr.converged) << seed;
    std::vector<Agent> members{0, 1, 2, 3, 4};
    EXPECT_EQ(tr.limit, star_wheel_plan().r(members, truth.types, 5));
    EXPECT_TRUE(p.complete_when_entering_transition());
    std::string seq, last;
    for (const auto& r : tr.records) {
      const auto phase = r.signal.substr(0, r.signal.find('{'));
      if (phase != last) seq += phase + " ";
      last = phase;
    }
    EXPECT_TRUE(std::regex_match(seq, grammar)) << seq;
  }
}

TEST(CriterionSets, IncompleteInsideComplete) {
  const TypeVector truth{{0, 1, 0, 1, 1}, 2};
  const std::vector<AdmissiblePlan> plans{star_wheel_plan()};
  const auto gic = ic_criterion_set(plans, truth, kParams);
  ASSERT_EQ(gic.size(), 1U);
  const auto gc = sustainable_set(truth, PayoffModel::connections(kParams));
  EXPECT_TRUE(is_superset(gc, gic));
  EXPECT_TRUE(ic_criterion_set(plans, truth, {{4.0, 0.9}, 1.5, 0.5}).empty());
}
