#include "netform/equilibrium.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include "netform/efficiency.hpp"
#include "netform/error.hpp"

namespace netform {

namespace {

std::uint64_t pair_bit(Link l, std::size_t n) { return std::uint64_t{1} << pair_index(l.i, l.j, n); }

std::uint64_t incident_bits(std::uint64_t mask, Agent i, std::size_t n) {
  std::uint64_t out = 0;
  for (Agent j = 0; j < n; ++j)
    if (j != i) {
      const auto b = pair_bit(Link(i, j), n);
      if (mask & b) out |= b;
    }
  return out;
}

// Σ_{t=a}^{b} r^{t-1}; b empty means the infinite tail.
double geometric(double r, std::uint64_t a, std::optional<std::uint64_t> b) {
  if (b && *b < a) return 0.0;
  const double head = std::pow(r, static_cast<double>(a - 1));
  if (!b) return head / (1.0 - r);
  return (head - std::pow(r, static_cast<double>(*b))) / (1.0 - r);
}

// Number of leading coupon-collector periods with bound >= 1, plus the tail of the bound.
double collector_slack(std::size_t n) {
  const double P = static_cast<double>(pair_count(n));
  const double q = 1.0 - 1.0 / P;
  const auto ts = t_star(n);
  const double tail = q > 0.0 ? P * std::pow(q, ts) / (1.0 - q) : 0.0;
  return static_cast<double>(ts - 1) + tail;
}

}  // namespace

ChainModel build_chain(const Network& target, const TypeVector& types, const PayoffModel& model, std::uint32_t K,
                       ChainProfile profile) {
  const std::size_t n = target.size();
  if (n > kChainMaxAgents) throw SizeError("exact chain supports at most " + std::to_string(kChainMaxAgents) + " agents");
  if (n < 2) throw ArgumentError("exact chain needs at least two agents");
  if (types.size() != n) throw ArgumentError("type vector size does not match target");
  if (K == 0) throw ArgumentError("punishment length K must be positive");
  ChainModel ch;
  ch.n = n;
  ch.K = K;
  ch.target = target;
  ch.profile = profile;
  const std::size_t P = pair_count(n);
  ch.networks = std::size_t{1} << P;
  ch.phases = profile == ChainProfile::Cooperation ? K + 1 : 1;

  const SmallEvaluator ev(model, types);
  ch.payoff.assign(n, std::vector<double>(ch.networks));
  std::vector<std::uint64_t> adj(n);
  for (std::uint64_t m = 0; m < ch.networks; ++m) {
    ev.rows_from_mask(m, adj.data());
    for (Agent i = 0; i < n; ++i) ch.payoff[i][m] = ev.payoff(adj.data(), i);
  }

  const std::uint64_t tmask = target.mask();
  const double p = 1.0 / static_cast<double>(P);
  ch.kernel.resize(ch.state_count());
  for (std::uint64_t m = 0; m < ch.networks; ++m)
    for (std::size_t ph = 0; ph < ch.phases; ++ph) {
      auto& row = ch.kernel[ch.state(m, ph)];
      if (profile == ChainProfile::Silent) {
        row.emplace_back(ch.state(0, 0), 1.0);
      } else if (ph == 0) {
        std::map<std::uint32_t, double> acc;
        for (std::size_t k = 0; k < P; ++k) acc[ch.state((m | (std::uint64_t{1} << k)) & tmask, 0)] += p;
        row.assign(acc.begin(), acc.end());
      } else {
        row.emplace_back(ch.state(0, ph == K ? 0 : ph + 1), 1.0);
      }
    }
  return ch;
}

ValueTable exact_values(const ChainModel& ch, double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ArgumentError("gamma must lie in [0,1)");
  // Visit states so that each one's successors are already settled: cooperation
  // states from the most complete target subsets down, then punishment from its end.
  const std::uint64_t tmask = ch.target.mask();
  std::vector<std::uint32_t> order(ch.state_count());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](std::uint32_t s) {
    const auto m = ch.mask_of(s);
    const auto ph = ch.phase_of(s);
    const bool inside = (m & ~tmask) == 0;
    const int filled = std::popcount(m & tmask);
    if (ch.profile == ChainProfile::Silent) return std::tuple<int, int, int>(m == 0 ? 0 : 1, 0, 0);
    if (ph == 0) return std::tuple<int, int, int>(0, inside ? 0 : 1, -filled);
    return std::tuple<int, int, int>(1, -static_cast<int>(ph), m == 0 ? 0 : 1);
  };
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return key(a) < key(b); });

  ValueTable vt;
  vt.value.assign(ch.n, std::vector<double>(ch.state_count(), 0.0));
  const double cap_steps = 1e7 / (1.0 - gamma);
  const auto max_sweeps =
      static_cast<std::size_t>(std::max(10.0, cap_steps / static_cast<double>(std::max<std::size_t>(1, ch.state_count()))));
  for (Agent i = 0; i < ch.n; ++i) {
    auto& V = vt.value[i];
    const auto& u = ch.payoff[i];
    double residual = 0.0;
    std::size_t sweep = 0;
    do {
      for (auto s : order) {
        double self = 0.0, rest = 0.0;
        for (const auto& [t, pr] : ch.kernel[s]) (t == s ? self : rest) += pr * (t == s ? 1.0 : V[t]);
        V[s] = (u[ch.mask_of(s)] + gamma * rest) / (1.0 - gamma * self);
      }
      residual = 0.0;
      for (std::uint32_t s = 0; s < ch.state_count(); ++s) {
        double ev = 0.0;
        for (const auto& [t, pr] : ch.kernel[s]) ev += pr * V[t];
        const double r = std::abs(V[s] - u[ch.mask_of(s)] - gamma * ev) / std::max(1.0, std::abs(V[s]));
        residual = std::max(residual, r);
      }
      ++sweep;
    } while (residual >= 1e-10 && sweep < max_sweeps);
    if (residual >= 1e-10) throw NumericalError("value iteration did not reach residual 1e-10");
    vt.residual = std::max(vt.residual, residual);
    vt.sweeps = std::max(vt.sweeps, sweep);
  }
  return vt;
}

double continuation_value(const ChainModel& ch, const ValueTable& values, Agent i, std::uint32_t s) {
  double ev = 0.0;
  for (const auto& [t, pr] : ch.kernel.at(s)) ev += pr * values.value.at(i)[t];
  return ev;
}

DeviationReport one_shot_deviation_gain(const ChainModel& ch, const ValueTable& values) {
  DeviationReport rep;
  if (ch.profile == ChainProfile::Silent) return rep;  // others refuse everything, so nothing i does changes g
  const std::size_t n = ch.n;
  const std::size_t P = pair_count(n);
  const std::uint64_t tmask = ch.target.mask();
  for (std::uint64_t m = 0; m < ch.networks; ++m) {
    // In punishment every link is severed whatever i does.
    const auto s = ch.state(m, 0);
    for (std::size_t k = 0; k < P; ++k) {
      const std::uint64_t next = (m | (std::uint64_t{1} << k)) & tmask;
      const auto prescribed = ch.state(next, 0);
      for (Agent i = 0; i < n; ++i) {
        const std::uint64_t mine = incident_bits(next, i, n);
        const double base = values.value[i][prescribed];
        // Refusing any nonempty subset of i's prescribed links is observed and punished.
        for (std::uint64_t d = mine; d; d = (d - 1) & mine) {
          const auto dev = ch.state(next & ~d, 1);
          const double gain = values.value[i][dev] - base;
          if (!rep.any_effective || gain > rep.gain) {
            rep.any_effective = true;
            rep.gain = gain;
            rep.agent = i;
            rep.state = s;
            rep.selected = pair_at(k, n);
            rep.severed.clear();
            for (std::uint64_t x = d; x; x &= x - 1) rep.severed.push_back(pair_at(static_cast<std::size_t>(std::countr_zero(x)), n));
          }
        }
      }
    }
  }
  if (!rep.any_effective) rep.gain = 0.0;
  return rep;
}

DeviationReport one_shot_deviation_gain(const Network& target, const TypeVector& types, const PayoffModel& model,
                                        double gamma, std::uint32_t K, ChainProfile profile) {
  const auto ch = build_chain(target, types, model, K, profile);
  return one_shot_deviation_gain(ch, exact_values(ch, gamma));
}

const char* to_string(ThresholdOutcome o) {
  switch (o) {
    case ThresholdOutcome::Interior: return "interior";
    case ThresholdOutcome::AlwaysEquilibrium: return "always-equilibrium";
    case ThresholdOutcome::NeverEquilibrium: return "never-equilibrium";
  }
  return "?";
}

GammaThreshold threshold_gamma(const Network& target, const TypeVector& types, const PayoffModel& model,
                               std::uint32_t K) {
  const auto ch = build_chain(target, types, model, K);
  auto gain = [&](double g) { return one_shot_deviation_gain(ch, exact_values(ch, g)).gain; };
  GammaThreshold r;
  double lo = kGammaSearchLo, hi = kGammaSearchHi;
  double glo = gain(lo), ghi = gain(hi);
  if (ghi > 0.0) {
    r.outcome = ThresholdOutcome::NeverEquilibrium;
    r.lo = r.hi = hi;
    r.gain_lo = r.gain_hi = ghi;
    return r;
  }
  if (glo <= 0.0) {
    r.outcome = ThresholdOutcome::AlwaysEquilibrium;
    r.lo = r.hi = lo;
    r.gain_lo = r.gain_hi = glo;
    return r;
  }
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    const double gm = gain(mid);
    if (gm > 0.0) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
      ghi = gm;
    }
  }
  r.gamma_bar = hi;
  r.lo = lo;
  r.hi = hi;
  r.gain_lo = glo;
  r.gain_hi = ghi;
  const double above = std::min(hi + 1e-4, kGammaSearchHi);
  const double below = std::max(hi - 1e-4, kGammaSearchLo);
  r.verified = gain(above) <= 0.0 && (below <= kGammaSearchLo || gain(below) > 0.0);
  return r;
}

std::optional<std::uint32_t> min_K(const Network& target, const TypeVector& types, const PayoffModel& model,
                                   double gamma, std::uint32_t K_max) {
  if (K_max < 1) throw ArgumentError("K_max must be at least 1");
  auto ok = [&](std::uint32_t K) { return one_shot_deviation_gain(target, types, model, gamma, K).gain <= 0.0; };
  if (!ok(K_max)) return std::nullopt;
  std::uint32_t lo = 0, hi = K_max;  // ok(hi) holds; lo = 0 stands for "not ok"
  while (hi - lo > 1) {
    const std::uint32_t mid = lo + (hi - lo) / 2;
    if (ok(mid)) hi = mid; else lo = mid;
  }
  return hi;
}

std::uint32_t t_star(std::size_t n) {
  if (n < 2) throw ArgumentError("t* needs at least two agents");
  const double P = static_cast<double>(pair_count(n));
  const double q = 1.0 - 1.0 / P;
  std::uint32_t t = 1;
  double bound = P * q;
  while (!(bound < 1.0)) {
    bound *= q;
    ++t;
  }
  return t;
}

double lemma1_lower_bound(double gamma, std::optional<std::uint64_t> M, double W, double u_target, std::size_t n) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ArgumentError("gamma must lie in (0,1)");
  const double P = static_cast<double>(pair_count(n));
  const double q = 1.0 - 1.0 / P;
  const std::uint64_t ts = t_star(n);
  std::optional<std::uint64_t> head_end = ts - 1;
  if (M && *M < ts - 1) head_end = *M;
  double value = W * geometric(gamma, 1, head_end);
  if (!M || *M >= ts) {
    value += u_target * geometric(gamma, ts, M);
    if (q > 0.0) value += P * (W - u_target) * q * geometric(gamma * q, ts, M);
  }
  return value;
}

double BoundComponents::mu_lower(double gamma, std::optional<std::uint64_t> M, Agent i) const {
  return lemma1_lower_bound(gamma, M, W, u_target.at(i), n);
}

BoundComponents bound_components(const Network& target, const TypeVector& types, const PayoffModel& model) {
  const std::size_t n = target.size();
  if (n > kBruteForceMaxAgents) throw SizeError("bound components enumerate networks of at most 6 agents");
  BoundComponents b;
  b.n = n;
  b.t_star = t_star(n);
  const SmallEvaluator ev(model, types);
  const std::size_t P = pair_count(n);
  std::vector<std::uint64_t> adj(n), adj2(n);
  b.W = std::numeric_limits<double>::infinity();
  b.V_max = -std::numeric_limits<double>::infinity();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << P); ++m) {
    ev.rows_from_mask(m, adj.data());
    for (Agent i = 0; i < n; ++i) {
      const double u = ev.payoff(adj.data(), i);
      b.W = std::min(b.W, u);
      b.V_max = std::max(b.V_max, u);
    }
    for (std::size_t k = 0; k < P; ++k) {
      if ((m >> k) & 1U) continue;
      ev.rows_from_mask(m | (std::uint64_t{1} << k), adj2.data());
      const auto l = pair_at(k, n);
      for (Agent i : {l.i, l.j}) b.v_bar = std::max(b.v_bar, std::abs(ev.payoff(adj2.data(), i) - ev.payoff(adj.data(), i)));
    }
  }
  b.A = std::max((b.V_max - b.W) * collector_slack(n), std::numeric_limits<double>::min());
  b.u_target.resize(n);
  ev.rows_from_mask(target.mask(), adj.data());
  for (Agent i = 0; i < n; ++i) b.u_target[i] = ev.payoff(adj.data(), i);
  return b;
}

BoundVerdict theorem1_bound(const BoundComponents& b, double gamma, std::uint32_t K) {
  BoundVerdict v;
  v.value = -std::numeric_limits<double>::infinity();
  for (Agent i = 0; i < b.n; ++i)
    v.value = std::max(v.value, b.v_bar + std::pow(gamma, 1.0 + K) * b.A - gamma * b.mu_lower(gamma, K, i));
  v.certifies = v.value < 0.0;
  return v;
}

double GroupDeviationBound::value(double gamma, std::uint64_t K_prime) const {
  return D + E + static_cast<double>(K_prime) * V_max + std::pow(gamma, static_cast<double>(K_prime)) * F / (1.0 - gamma);
}

GroupDeviationBound group_deviation_bound(const Network& g, const TypeVector& types, const PayoffModel& model) {
  const std::size_t n = g.size();
  if (n > kCoreStabilityMaxAgents) throw SizeError("group deviation bound enumerates coalitions of at most 5 agents");
  const auto comps = bound_components(g, types, model);
  GroupDeviationBound b;
  b.V_max = comps.V_max;
  b.W = comps.W;
  b.t_star = comps.t_star;
  b.D = b.E = (b.V_max - b.W) * collector_slack(n);
  const SmallEvaluator ev(model, types);
  std::vector<std::uint64_t> adj(n);
  b.F = -std::numeric_limits<double>::infinity();
  for (std::uint32_t members = 1; members + 1 < (1U << n); ++members) {
    std::vector<Agent> coalition;
    for (Agent i = 0; i < n; ++i)
      if ((members >> i) & 1U) coalition.push_back(i);
    std::vector<std::size_t> inner;
    for (std::size_t a = 0; a < coalition.size(); ++a)
      for (std::size_t c = a + 1; c < coalition.size(); ++c) inner.push_back(pair_index(coalition[a], coalition[c], n));
    for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << inner.size()); ++sub) {
      std::uint64_t mask = 0;
      for (std::size_t k = 0; k < inner.size(); ++k)
        if ((sub >> k) & 1U) mask |= std::uint64_t{1} << inner[k];
      ev.rows_from_mask(mask, adj.data());
      double worst = std::numeric_limits<double>::infinity();
      for (Agent i : coalition) worst = std::min(worst, ev.payoff(adj.data(), i) - comps.u_target[i]);
      if (worst > b.F) {
        b.F = worst;
        b.F_coalition = coalition;
        b.F_network = Network::from_mask(n, mask);
      }
    }
  }
  return b;
}

std::uint64_t m_of_gamma(const GroupDeviationBound& b, double gamma) {
  if (!(b.F < 0.0)) throw ArgumentError("m_of_gamma requires F < 0 (a core-stable network)");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ArgumentError("gamma must lie in (0,1)");
  if (!(b.value(gamma, 0) < 0.0)) return 0;
  // value() increases in K', so find the last K' below zero.
  std::uint64_t lo = 0, hi = 1;
  while (b.value(gamma, hi) < 0.0) {
    lo = hi;
    if (hi > (std::uint64_t{1} << 61)) return hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (b.value(gamma, mid) < 0.0) lo = mid; else hi = mid;
  }
  return lo;
}

GroupDeviationResult group_deviation_check(const Network& g, const std::vector<Agent>& coalition,
                                           const Network& deviation, std::uint64_t K_prime, double gamma,
                                           std::uint32_t K, const TypeVector& types, const PayoffModel& model) {
  const std::size_t n = g.size();
  if (n > kChainMaxAgents) throw SizeError("group deviation check supports at most 4 agents");
  if (deviation.size() != n) throw ArgumentError("deviation network size mismatch");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ArgumentError("gamma must lie in (0,1)");
  std::vector<bool> inside(n, false);
  for (Agent a : coalition) {
    if (a >= n) throw ArgumentError("coalition member out of range");
    inside[a] = true;
  }
  const auto size = static_cast<std::size_t>(std::count(inside.begin(), inside.end(), true));
  if (size == 0 || size == n) throw ArgumentError("coalition must be a nonempty proper subgroup");
  for (const auto& l : deviation.links())
    if (!inside[l.i] || !inside[l.j]) throw ArgumentError("deviation network links outside the coalition");

  const auto ch = build_chain(g, types, model, K);
  const auto vals = exact_values(ch, gamma);
  const SmallEvaluator ev(model, types);
  const std::size_t P = pair_count(n);
  const double p = 1.0 / static_cast<double>(P);
  const std::uint64_t dmask = deviation.mask();
  const std::uint64_t gmask = g.mask();

  // Q(h): value with the coalition's network h in place this period, links of dmask accruing as selected.
  std::vector<std::uint64_t> subsets;
  for (std::uint64_t h = dmask;; h = (h - 1) & dmask) {
    subsets.push_back(h);
    if (h == 0) break;
  }
  std::sort(subsets.begin(), subsets.end(), [](auto a, auto b) { return std::popcount(a) > std::popcount(b); });
  const std::uint64_t start = K_prime == 0 ? (gmask & dmask) : 0;

  GroupDeviationResult res;
  res.commit.assign(n, 0.0);
  res.comply.assign(n, 0.0);
  std::vector<std::uint64_t> adj(n);
  for (Agent i : coalition) {
    std::unordered_map<std::uint64_t, double> Q;
    for (auto h : subsets) {
      ev.rows_from_mask(h, adj.data());
      const double u = ev.payoff(adj.data(), i);
      double rest = 0.0;
      std::size_t stay = 0;
      for (std::size_t k = 0; k < P; ++k) {
        const auto bit = std::uint64_t{1} << k;
        if ((dmask & bit) && !(h & bit)) rest += p * Q.at(h | bit);
        else ++stay;
      }
      Q[h] = (u + gamma * rest) / (1.0 - gamma * p * static_cast<double>(stay));
    }
    double commit = 0.0;
    for (std::size_t k = 0; k < P; ++k) {
      const auto bit = std::uint64_t{1} << k;
      commit += p * Q.at(start | (dmask & bit));
    }
    res.commit[i] = commit;
    res.comply[i] = K_prime == 0 ? ch.payoff[i][gmask] / (1.0 - gamma)
                                 : std::pow(gamma, static_cast<double>(K_prime)) *
                                       continuation_value(ch, vals, i, ch.state(0, 0));
  }
  bool weak = true, strict = false;
  res.worst_gap = std::numeric_limits<double>::infinity();
  for (Agent i : coalition) {
    const double gap = res.commit[i] - res.comply[i];
    const double tol = 1e-9 * std::max(1.0, std::abs(res.comply[i]));
    if (gap < -tol) weak = false;
    if (gap > tol) strict = true;
    if (gap < res.worst_gap) {
      res.worst_gap = gap;
      res.worst_member = i;
    }
  }
  res.profitable = weak && strict;
  if (n <= kCoreStabilityMaxAgents) {
    const auto b = group_deviation_bound(g, types, model);
    res.bound_value = b.value(gamma, K_prime);
    res.bound_says_unprofitable = b.F < 0.0 && res.bound_value < 0.0;
  }
  return res;
}

std::vector<DeltaPoint> gamma_of_delta(const std::vector<double>& deltas, const Network& target,
                                       const TypeVector& types, PayoffParams params, std::uint32_t K) {
  std::vector<DeltaPoint> out;
  for (double d : deltas) {
    params.delta = d;
    out.push_back({d, threshold_gamma(target, types, PayoffModel::connections(params), K)});
  }
  return out;
}

bool strictly_decreasing(const std::vector<DeltaPoint>& points) {
  for (const auto& p : points)
    if (p.threshold.outcome != ThresholdOutcome::Interior) return false;
  for (std::size_t k = 1; k < points.size(); ++k)
    if (!(points[k].threshold.hi < points[k - 1].threshold.lo)) return false;
  return true;
}

double discounted_payoff(const SimTrace& trace, const Network& initial, const TypeVector& types,
                         const PayoffParams& params, Agent i, double gamma) {
  const auto model = PayoffModel::connections(params);
  const SmallEvaluator ev(model, types);
  std::unordered_map<std::uint64_t, double> cache;
  auto u = [&](const Network& g) {
    const auto m = g.mask();
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, ev.payoff(g, i)).first;
    return it->second;
  };
  Network g = initial;
  double value = 0.0, discount = 1.0;
  for (const auto& r : trace.records) {
    for (const auto& l : r.removed) g.remove(l);
    for (const auto& l : r.added) g.add(l);
    value += discount * u(g);
    discount *= gamma;
  }
  const auto recorded = static_cast<std::uint64_t>(trace.records.size());
  // Periods skipped after certified convergence hold the final network, as does the tail.
  const double held = u(trace.final_network);
  if (trace.periods > recorded) {
    const double k = static_cast<double>(trace.periods - recorded);
    value += discount * held * (1.0 - std::pow(gamma, k)) / (1.0 - gamma);
    discount *= std::pow(gamma, k);
  }
  if (trace.converged) value += discount * held / (1.0 - gamma);
  return value;
}

ProbeResult probe_ic_deviations(const AdmissiblePlan& plan, const TypeVector& truth, const PayoffParams& params,
                                const std::vector<double>& prior, const ProbeConfig& cfg) {
  const std::size_t n = truth.size();
  SimConfig sc;
  sc.n = n;
  sc.gamma = cfg.gamma;
  sc.K = cfg.K;
  sc.J = cfg.J;
  sc.horizon = cfg.horizon;
  sc.initial_network = Network(n);
  sc.stop_when_converged = true;
  const ExperimentationProtocol proto(plan, truth, params, prior, cfg.K, cfg.J);

  ProbeResult res;
  res.max_gain = -std::numeric_limits<double>::infinity();
  for (Agent i = 0; i < n; ++i)
    for (auto t : cfg.deviation_periods) {
      double total = 0.0;
      for (auto seed : cfg.seeds) {
        sc.seed = seed;
        sc.deviations.clear();
        auto p0 = proto.clone();
        const double base = discounted_payoff(run(sc, *p0), sc.initial_network, truth, params, i, cfg.gamma);
        sc.deviations = {DeviationInjection{t, i, std::nullopt, false}};
        auto p1 = proto.clone();
        const double dev = discounted_payoff(run(sc, *p1), sc.initial_network, truth, params, i, cfg.gamma);
        total += dev - base;
        ++res.probes;
      }
      const double gain = cfg.seeds.empty() ? 0.0 : total / static_cast<double>(cfg.seeds.size());
      if (gain > res.max_gain) {
        res.max_gain = gain;
        res.agent = i;
        res.period = t;
      }
    }
  if (res.probes == 0) res.max_gain = 0.0;
  return res;
}

}  // namespace netform
