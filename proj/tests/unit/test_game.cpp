#include <gtest/gtest.h>

#include <sstream>

#include "netform/error.hpp"
#include "netform/game.hpp"
#include "netform/rng.hpp"

using namespace netform;

namespace {

SimConfig config(std::size_t n, std::uint32_t K, std::uint64_t seed, std::uint64_t horizon = 500) {
  SimConfig c;
  c.n = n;
  c.K = K;
  c.seed = seed;
  c.horizon = horizon;
  c.initial_network = Network(n);
  return c;
}

bool same(const SimTrace& a, const SimTrace& b) {
  if (a.records.size() != b.records.size()) return false;
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    const auto &x = a.records[k], &y = b.records[k];
    if (x.pair != y.pair || x.signal != y.signal || x.added != y.added || x.removed != y.removed) return false;
  }
  return a.final_network == b.final_network && a.convergence_period == b.convergence_period;
}

}  // namespace

TEST(Rng, DeterministicStream) {
  Rng a(42), b(42);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(a.next(), b.next());
  Rng c(7);
  for (int k = 0; k < 1000; ++k) {
    EXPECT_LT(c.uniform_index(6), 6U);
    const double u = c.uniform01();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(SelectPair, CoversAllPairsUniformly) {
  Rng rng(3);
  std::vector<int> hits(6, 0);
  for (int k = 0; k < 60000; ++k) {
    const auto l = select_pair(rng, 4);
    ++hits[pair_index(l.i, l.j, 4)];
  }
  for (int h : hits) EXPECT_NEAR(h / 60000.0, 1.0 / 6.0, 0.01);
  EXPECT_THROW(select_pair(rng, 1), ConfigError);
}

TEST(CpMonitor, PunishmentLastsKPeriods) {
  const std::uint32_t K = 3;
  CpState s;
  s = monitor_update_cp(s, false, K);
  EXPECT_EQ(s.phase, CpPhase::C);
  s = monitor_update_cp(s, true, K);
  EXPECT_EQ(s, (CpState{CpPhase::P, 0}));
  s = monitor_update_cp(s, true, K);  // detections during punishment are ignored
  EXPECT_EQ(s, (CpState{CpPhase::P, 1}));
  s = monitor_update_cp(s, false, K);
  EXPECT_EQ(s, (CpState{CpPhase::P, 2}));
  s = monitor_update_cp(s, false, K);
  EXPECT_EQ(s.phase, CpPhase::C);
  EXPECT_THROW(monitor_update_cp(s, false, 0), ArgumentError);
}

TEST(Strategy, ConsentsOnlyToTargetLinksInCooperation) {
  const auto target = Network::from_links(3, std::vector<Link>{{0, 1}});
  EXPECT_TRUE(strategy_sc(target, CpState{}, {true, false}, Link(0, 1)));
  EXPECT_TRUE(strategy_sc(target, CpState{}, {false, true}, Link(0, 1)));
  EXPECT_FALSE(strategy_sc(target, CpState{}, {false, false}, Link(0, 1)));
  EXPECT_FALSE(strategy_sc(target, CpState{}, {true, false}, Link(1, 2)));
  EXPECT_FALSE(strategy_sc(target, CpState{CpPhase::P, 0}, {true, true}, Link(0, 1)));
}

TEST(DetectDeviation, Cases) {
  const auto target = Network::from_links(3, std::vector<Link>{{0, 1}, {1, 2}});
  const Network empty(3);
  const auto one = Network::from_links(3, std::vector<Link>{{0, 1}});
  EXPECT_FALSE(detect_deviation(target, empty, Link(0, 1), one));
  EXPECT_TRUE(detect_deviation(target, empty, Link(0, 1), empty));   // selected target link refused
  EXPECT_FALSE(detect_deviation(target, empty, Link(0, 2), empty));  // non-target pair left alone
  EXPECT_TRUE(detect_deviation(target, one, Link(0, 2), empty));     // target link severed
  const auto foreign = Network::from_links(3, std::vector<Link>{{0, 2}});
  EXPECT_TRUE(detect_deviation(target, empty, Link(0, 2), foreign));
  EXPECT_THROW(detect_deviation(target, empty, Link(0, 2), one), ConsistencyError);
}

TEST(Engine, ConvergesToTargetAndStays) {
  auto c = config(4, 2, 11);
  const auto target = Network::from_links(4, std::vector<Link>{{0, 1}, {0, 2}, {0, 3}});
  CooperationProtocol p(target, c.K);
  const auto tr = run(c, p);
  ASSERT_TRUE(tr.converged);
  EXPECT_EQ(tr.limit, target);
  EXPECT_EQ(tr.final_network, target);
  for (const auto& r : tr.records)
    if (r.t >= *tr.convergence_period) EXPECT_TRUE(r.at_target);
  EXPECT_EQ(tr.occupied, c.horizon - *tr.convergence_period + 1);
}

TEST(Engine, NonTargetLinksDropImmediately) {
  auto c = config(4, 2, 5);
  c.initial_network = Network::complete(4);
  const auto target = Network::from_links(4, std::vector<Link>{{0, 1}});
  CooperationProtocol p(target, c.K);
  const auto tr = run(c, p);
  EXPECT_TRUE(tr.records[0].added.empty());
  EXPECT_TRUE(tr.converged);
}

TEST(Engine, InjectedRefusalTriggersExactlyKEmptyPeriods) {
  const std::uint32_t K = 4;
  auto c = config(3, K, 2, 400);
  const auto target = Network::complete(3);
  {
    CooperationProtocol p(target, K);
    const auto plain = run(c, p);
    ASSERT_TRUE(plain.converged);
    ASSERT_LT(*plain.convergence_period, 100U);
  }
  c.deviations = {DeviationInjection{100, 0, std::nullopt, false}};
  CooperationProtocol p(target, K);
  const auto tr = run(c, p);
  EXPECT_EQ(tr.records[99].signal, "P0");
  for (std::uint32_t k = 1; k <= K; ++k) {
    const auto& r = tr.records[99 + k];
    // The network in period 100 + k is empty; the signal after period 100 + K is back to C.
    EXPECT_EQ(r.signal, k == K ? "C" : "P" + std::to_string(k)) << k;
  }
  Network g = c.initial_network;
  std::size_t empties = 0;
  for (const auto& r : tr.records) {
    for (const auto& l : r.removed) g.remove(l);
    for (const auto& l : r.added) g.add(l);
    if (r.t > 100 && r.t <= 100 + K) empties += g.empty() ? 1 : 0;
  }
  EXPECT_EQ(empties, K);
  EXPECT_TRUE(tr.converged);
  EXPECT_GT(*tr.convergence_period, 100U + K);
}

TEST(Engine, Deterministic) {
  auto c = config(5, 3, 99, 300);
  c.epsilon = 0.05;
  const auto target = Network::from_links(5, std::vector<Link>{{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  CooperationProtocol p1(target, 3), p2(target, 3);
  const auto first = run(c, p1);
  EXPECT_TRUE(same(first, run(c, p2)));
  c.seed = 100;
  CooperationProtocol p3(target, 3);
  EXPECT_FALSE(same(first, run(c, p3)));
}

TEST(Engine, TremblesNeverCertify) {
  auto c = config(3, 2, 1, 200);
  c.epsilon = 0.01;
  CooperationProtocol p(Network::complete(3), 2);
  const auto tr = run(c, p);
  EXPECT_FALSE(tr.converged);
  EXPECT_GT(tr.occupancy, 0.5);
}

TEST(Engine, StopWhenConvergedFillsOccupancy) {
  auto c = config(4, 2, 8, 10000);
  c.stop_when_converged = true;
  CooperationProtocol p(Network::complete(4), 2);
  const auto tr = run(c, p);
  ASSERT_TRUE(tr.converged);
  EXPECT_LT(tr.records.size(), 10000U);
  EXPECT_EQ(tr.periods, 10000U);
  EXPECT_EQ(tr.occupied, 10000U - *tr.convergence_period + 1);
}

TEST(Engine, SilentProfileKeepsEmpty) {
  auto c = config(4, 1, 3, 50);
  c.initial_network = Network::complete(4);
  SilentProtocol p(4);
  const auto tr = run(c, p);
  EXPECT_TRUE(tr.final_network.empty());
  EXPECT_TRUE(tr.converged);
  EXPECT_EQ(*tr.convergence_period, 1U);
}

TEST(Engine, ConfigValidation) {
  CooperationProtocol p(Network::complete(3), 1);
  auto c = config(3, 1, 0);
  c.n = 1;
  EXPECT_THROW(run(c, p), ConfigError);
  c = config(3, 1, 0);
  c.epsilon = 1.0;
  EXPECT_THROW(run(c, p), ConfigError);
  c = config(3, 1, 0);
  c.deviations = {DeviationInjection{0, 0, std::nullopt, false}};
  EXPECT_THROW(run(c, p), ConfigError);
  c = config(3, 1, 0);
  c.deviations = {DeviationInjection{3, 0, Agent{0}, false}};
  EXPECT_THROW(run(c, p), ConfigError);
  EXPECT_THROW(CooperationProtocol(Network::complete(3), 0), ConfigError);
}

TEST(Trace, CsvFormat) {
  SimTrace tr;
  TraceRecord r;
  r.t = 1;
  r.pair = Link(0, 2);
  r.signal = "C";
  r.added = {Link(0, 2)};
  r.removed = {Link(1, 3)};
  tr.records.push_back(r);
  std::ostringstream os;
  write_trace_csv(os, tr);
  EXPECT_EQ(os.str(), "t,pair,signal,edge_delta\n1,0-2,C,+0-2;-1-3\n");
}
