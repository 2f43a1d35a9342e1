#include "netform/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "netform/error.hpp"

namespace netform {

namespace {

bool near(double x, double y) {
  const double scale = std::max({1.0, std::abs(x), std::abs(y)});
  return std::abs(x - y) <= 1e-12 * scale;
}

// Strict comparison that refuses to decide exact ties.
bool strictly_greater(double x, double y, const char* what) {
  if (near(x, y)) throw DegenerateParameterError(std::string("boundary tie: ") + what);
  return x > y;
}

std::vector<std::uint64_t> rows(const SmallEvaluator& ev, std::uint64_t mask) {
  std::vector<std::uint64_t> adj(ev.size());
  ev.rows_from_mask(mask, adj.data());
  return adj;
}

}  // namespace

void TwoTypeSpec::validate() const {
  if (!(f_alpha > 0.0 && f_beta > 0.0)) throw ConfigError("benefits must be positive");
  if (!(f_alpha > f_beta)) throw ConfigError("two-type spec requires f(alpha) > f(beta)");
  if (n_alpha < 1 || n_beta < 1) throw ConfigError("both type counts must be positive");
  if (!(c > 0.0)) throw ConfigError("link cost must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0,1)");
}

TypeVector TwoTypeSpec::types() const { return TypeVector::from_counts({n_alpha, n_beta}); }

PayoffParams TwoTypeSpec::params() const { return PayoffParams{{f_alpha, f_beta}, c, delta}; }

char case_letter(TwoTypeCase c) { return static_cast<char>('a' + static_cast<int>(c)); }

TwoTypeCase classify_two_type(const TwoTypeSpec& s) {
  s.validate();
  const double fa = s.f_alpha, fb = s.f_beta, d = s.delta, c = s.c;
  const auto na = static_cast<double>(s.n_alpha), nb = static_cast<double>(s.n_beta);
  if (strictly_greater((1 - d) * fb, c, "(1-delta) f(beta) = c")) return TwoTypeCase::a;
  if (strictly_greater((1 - d) * (fa + fb) / 2, c, "(1-delta)(f(alpha)+f(beta))/2 = c")) return TwoTypeCase::b;
  // Welfare change from hanging every β agent on one α hub.
  const double attach = (1 + d * (na - 1)) * fa + (1 + d * (na + nb - 2)) * fb - 2 * c;
  if (strictly_greater((1 - d) * fa, c, "(1-delta) f(alpha) = c")) {
    return strictly_greater(attach, 0.0, "beta attachment welfare = 0") ? TwoTypeCase::c : TwoTypeCase::d;
  }
  const bool attach_pays = strictly_greater(attach, 0.0, "beta attachment welfare = 0");
  if (attach_pays) {
    const double star_all = 2 * (na - 1) * fa + nb * (fa + fb) +
                            d * ((na - 1) * (na - 2) * fa + nb * (nb - 1) * fb + nb * (na - 1) * (fa + fb)) -
                            2 * (na + nb - 1) * c;
    return strictly_greater(star_all, 0.0, "star welfare = 0") ? TwoTypeCase::e : TwoTypeCase::g;
  }
  const double star_alpha = fa * (2 + d * (na - 2)) - 2 * c;
  return strictly_greater(star_alpha, 0.0, "alpha star welfare = 0") ? TwoTypeCase::f : TwoTypeCase::g;
}

EfficientResult efficient_two_type(const TwoTypeSpec& spec) {
  const auto kind = classify_two_type(spec);
  const std::size_t n = spec.n();
  const auto na = static_cast<Agent>(spec.n_alpha);
  EfficientResult r;
  r.network = Network(n);
  r.case_label = std::string(1, case_letter(kind));
  auto& g = r.network;
  auto& p = r.partition;
  auto range = [](Agent lo, Agent hi) {
    std::vector<Agent> v(hi - lo);
    std::iota(v.begin(), v.end(), lo);
    return v;
  };
  auto alpha_clique = [&] {
    for (Agent i = 0; i < na; ++i)
      for (Agent j = i + 1; j < na; ++j) g.add(i, j);
  };
  switch (kind) {
    case TwoTypeCase::a:
      g = Network::complete(n);
      p.core = range(0, static_cast<Agent>(n));
      break;
    case TwoTypeCase::b:
      alpha_clique();
      for (Agent i = 0; i < na; ++i)
        for (Agent j = na; j < n; ++j) g.add(i, j);
      p.core = range(0, na);
      p.periphery1 = range(na, static_cast<Agent>(n));
      break;
    case TwoTypeCase::c:
      alpha_clique();
      for (Agent j = na; j < n; ++j) g.add(0, j);
      p.core = range(0, na);
      p.periphery2 = range(na, static_cast<Agent>(n));
      break;
    case TwoTypeCase::d:
      alpha_clique();
      if (na >= 2) p.core = range(0, na); else p.singletons = range(0, na);
      for (Agent j = na; j < n; ++j) p.singletons.push_back(j);
      break;
    case TwoTypeCase::e:
      for (Agent j = 1; j < n; ++j) g.add(0, j);
      p.core = {0};
      p.periphery2 = range(1, static_cast<Agent>(n));
      break;
    case TwoTypeCase::f:
      if (na >= 2) {
        for (Agent j = 1; j < na; ++j) g.add(0, j);
        p.core = {0};
        p.periphery2 = range(1, na);
        p.singletons = range(na, static_cast<Agent>(n));
      } else {
        p.singletons = range(0, static_cast<Agent>(n));
      }
      break;
    case TwoTypeCase::g:
      p.singletons = range(0, static_cast<Agent>(n));
      break;
  }
  return r;
}

EfficientResult efficient_core_periphery(const TypeVector& types, const PayoffParams& params) {
  types.validate();
  params.validate();
  if (static_cast<std::size_t>(types.type_count) > params.f.size()) throw ConfigError("type outside the domain of f");
  const std::size_t n = types.size();
  const double d = params.delta, c = params.c;
  auto f = [&](Agent i) { return params.f[static_cast<std::size_t>(types[i])]; };

  std::vector<Agent> core, rest;
  for (Agent i = 0; i < n; ++i) {
    if (strictly_greater((1 - d) * f(i), c, "(1-delta) f = c")) core.push_back(i);
    else rest.push_back(i);
  }

  Network base(n);
  Agent hub = 0;
  std::vector<Agent> periphery1, candidates;
  if (!core.empty()) {
    hub = *std::max_element(core.begin(), core.end(), [&](Agent a, Agent b) { return f(a) < f(b) || (f(a) == f(b) && a > b); });
    for (std::size_t a = 0; a < core.size(); ++a)
      for (std::size_t b = a + 1; b < core.size(); ++b) base.add(core[a], core[b]);
    for (Agent i : rest) {
      bool linked = false;
      for (Agent k : core) {
        if (strictly_greater((1 - d) * (f(i) + f(k)) / 2, c, "(1-delta)(f+f')/2 = c")) {
          base.add(i, k);
          linked = true;
        }
      }
      if (linked) periphery1.push_back(i);
      else candidates.push_back(i);
    }
  } else if (n > 0) {
    for (Agent i = 1; i < n; ++i)
      if (f(i) > f(hub)) hub = i;
    for (Agent i = 0; i < n; ++i)
      if (i != hub) candidates.push_back(i);
  }

  // Periphery-II is an upper set of the remaining agents by benefit; pick the cutoff with the best welfare.
  std::vector<double> cutoffs;
  for (Agent i : candidates) cutoffs.push_back(f(i));
  std::sort(cutoffs.begin(), cutoffs.end(), std::greater<>());
  cutoffs.erase(std::unique(cutoffs.begin(), cutoffs.end()), cutoffs.end());
  const auto model = PayoffModel::connections(params);

  Network best = base;
  double best_welfare = total_welfare(model, types, base);
  double runner_up = -std::numeric_limits<double>::infinity();
  std::vector<Agent> best_attached;
  for (double cut : cutoffs) {
    Network g = base;
    std::vector<Agent> attached;
    for (Agent i : candidates)
      if (f(i) >= cut) {
        g.add(hub, i);
        attached.push_back(i);
      }
    const double w = total_welfare(model, types, g);
    if (w > best_welfare) {
      runner_up = best_welfare;
      best_welfare = w;
      best = std::move(g);
      best_attached = std::move(attached);
    } else {
      runner_up = std::max(runner_up, w);
    }
  }
  if (std::isfinite(runner_up) && near(best_welfare, runner_up))
    throw DegenerateParameterError("boundary tie between periphery-II cutoffs");

  EfficientResult r;
  r.network = std::move(best);
  auto& p = r.partition;
  p.periphery1 = periphery1;
  p.periphery2 = best_attached;
  if (!core.empty()) {
    p.core = core;
  } else if (!best_attached.empty()) {
    p.core = {hub};
  }
  std::vector<bool> placed(n, false);
  for (const auto* block : {&p.core, &p.periphery1, &p.periphery2})
    for (Agent i : *block) placed[i] = true;
  for (Agent i = 0; i < n; ++i)
    if (!placed[i]) p.singletons.push_back(i);
  // A lone core agent with nobody attached is really a singleton.
  if (p.core.size() == 1 && r.network.degree(p.core.front()) == 0) {
    p.singletons.push_back(p.core.front());
    std::sort(p.singletons.begin(), p.singletons.end());
    p.core.clear();
  }
  std::ostringstream label;
  label << "core-periphery(core=" << p.core.size() << ",periphery1=" << p.periphery1.size()
        << ",periphery2=" << p.periphery2.size() << ",singletons=" << p.singletons.size() << ")";
  r.case_label = label.str();
  return r;
}

BruteForceResult brute_force_efficient(const TypeVector& types, const PayoffModel& model) {
  const std::size_t n = types.size();
  if (n > kBruteForceMaxAgents)
    throw SizeError("brute-force efficiency supports at most " + std::to_string(kBruteForceMaxAgents) + " agents");
  if (n == 0) throw ArgumentError("no agents");
  const SmallEvaluator ev(model, types);
  const std::uint64_t total = std::uint64_t{1} << pair_count(n);
  std::vector<double> welfare(total);
  std::vector<std::uint64_t> adj(n);
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint64_t m = 0; m < total; ++m) {
    ev.rows_from_mask(m, adj.data());
    welfare[m] = ev.welfare(adj.data());
    best = std::max(best, welfare[m]);
  }
  BruteForceResult r;
  r.max_welfare = best;
  const double tol = 1e-9 * std::max(1.0, std::abs(best));
  std::set<std::uint64_t> seen;
  for (std::uint64_t m = 0; m < total; ++m) {
    if (welfare[m] < best - tol) continue;
    const auto canon = canonical_form(Network::from_mask(n, m), types.types);
    if (seen.insert(canon.mask()).second) r.maximizers.push_back(canon);
  }
  return r;
}

bool contains_canonical(const BruteForceResult& r, const Network& g, const TypeVector& types) {
  const auto canon = canonical_form(g, types.types);
  return std::any_of(r.maximizers.begin(), r.maximizers.end(), [&](const Network& h) { return h == canon; });
}

namespace {

// Best payoff when linking directly to the m most valuable partners and
// reaching everyone else at distance two through one of them.
double ranked_link_value(std::vector<double> partners, double c, double delta) {
  std::sort(partners.begin(), partners.end(), std::greater<>());
  const double all = std::accumulate(partners.begin(), partners.end(), 0.0);
  double best = 0.0, direct = 0.0;
  for (std::size_t m = 1; m <= partners.size(); ++m) {
    direct += partners[m - 1];
    best = std::max(best, direct + delta * (all - direct) - static_cast<double>(m) * c);
  }
  return best;
}

}  // namespace

double max_attainable_payoff(int type, const TwoTypeSpec& s) {
  s.validate();
  if (type != 0 && type != 1) throw ArgumentError("type must be 0 (alpha) or 1 (beta)");
  const double fa = s.f_alpha, fb = s.f_beta, d = s.delta, c = s.c;
  const auto na = static_cast<double>(s.n_alpha), nb = static_cast<double>(s.n_beta);
  const bool alpha = type == 0;
  if (alpha && s.n_alpha == 1) {
    // The closed forms below pair the α agent with another α; a lone α only has β partners.
    return ranked_link_value(std::vector<double>(s.n_beta, fb), c, d);
  }
  if (strictly_greater((1 - d) * fb, c, "(1-delta) f(beta) = c"))
    return alpha ? (na - 1) * fa + nb * fb - (na + nb - 1) * c : na * fa + (nb - 1) * fb - (na + nb - 1) * c;
  if (strictly_greater((1 - d) * fa, c, "(1-delta) f(alpha) = c"))
    return alpha ? (na - 1) * fa + d * nb * fb - (na - 1) * c : na * fa + d * (nb - 1) * fb - na * c;
  const double one_link = alpha ? fa + d * ((na - 2) * fa + nb * fb) - c : fa + d * ((na - 1) * fa + (nb - 1) * fb) - c;
  return strictly_greater(one_link, 0.0, "single-link payoff = 0") ? one_link : 0.0;
}

double brute_force_max_payoff(int type, const TwoTypeSpec& spec) {
  spec.validate();
  const auto types = spec.types();
  const std::size_t n = types.size();
  if (n > kBruteForceMaxAgents) throw SizeError("brute-force payoff search supports at most 6 agents");
  const SmallEvaluator ev(PayoffModel::connections(spec.params()), types);
  const Agent who = type == 0 ? 0 : static_cast<Agent>(spec.n_alpha);
  std::vector<std::uint64_t> adj(n);
  double best = 0.0;  // the empty network is always available
  // Agents of a type are interchangeable, so one representative suffices.
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << pair_count(n)); ++m) {
    ev.rows_from_mask(m, adj.data());
    best = std::max(best, ev.payoff(adj.data(), who));
  }
  return best;
}

std::optional<Blocking> is_core_stable(const Network& g, const TypeVector& types, const PayoffModel& model) {
  const std::size_t n = types.size();
  if (n > kCoreStabilityMaxAgents)
    throw SizeError("core-stability search supports at most " + std::to_string(kCoreStabilityMaxAgents) + " agents");
  if (g.size() != n) throw ArgumentError("network size does not match type vector");
  const SmallEvaluator ev(model, types);
  const auto base_rows = rows(ev, g.mask());
  std::vector<double> u(n);
  for (Agent i = 0; i < n; ++i) u[i] = ev.payoff(base_rows.data(), i);

  std::vector<std::uint64_t> adj(n);
  for (std::uint32_t members = 1; members < (1U << n); ++members) {
    std::vector<Agent> coalition;
    for (Agent i = 0; i < n; ++i)
      if ((members >> i) & 1U) coalition.push_back(i);
    std::vector<std::size_t> inner;
    for (std::size_t a = 0; a < coalition.size(); ++a)
      for (std::size_t b = a + 1; b < coalition.size(); ++b) inner.push_back(pair_index(coalition[a], coalition[b], n));
    for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << inner.size()); ++sub) {
      std::uint64_t mask = 0;
      for (std::size_t k = 0; k < inner.size(); ++k)
        if ((sub >> k) & 1U) mask |= std::uint64_t{1} << inner[k];
      ev.rows_from_mask(mask, adj.data());
      bool weak = true, strict = false;
      for (Agent i : coalition) {
        const double v = ev.payoff(adj.data(), i);
        const double tol = 1e-12 * std::max(1.0, std::abs(u[i]));
        if (v < u[i] - tol) {
          weak = false;
          break;
        }
        if (v > u[i] + tol) strict = true;
      }
      if (weak && strict) return Blocking{coalition, Network::from_mask(n, mask)};
    }
  }
  return std::nullopt;
}

bool core_stable_conditions(const TwoTypeSpec& spec) {
  const auto kind = classify_two_type(spec);
  switch (kind) {
    case TwoTypeCase::a:
    case TwoTypeCase::d:
    case TwoTypeCase::g:
      return true;
    case TwoTypeCase::b:
      return spec.f_beta >= spec.c;
    case TwoTypeCase::c:
    case TwoTypeCase::e: {
      // The α hub carries every β link; it blocks alone if that leaves it below zero.
      const auto eff = efficient_two_type(spec);
      return connections_payoff(spec.params(), spec.types(), eff.network, 0) >= 0.0;
    }
    case TwoTypeCase::f:
      return spec.f_alpha >= spec.c;
  }
  throw ConsistencyError("unreachable two-type case");
}

std::vector<Network> sustainable_set(const TypeVector& types, const PayoffModel& model) {
  const std::size_t n = types.size();
  if (n > kSustainableMaxAgents)
    throw SizeError("sustainable set enumeration supports at most " + std::to_string(kSustainableMaxAgents) + " agents");
  const SmallEvaluator ev(model, types);
  std::vector<Network> out;
  std::vector<std::uint64_t> adj(n);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << pair_count(n)); ++m) {
    ev.rows_from_mask(m, adj.data());
    bool all_positive = true;
    for (Agent i = 0; i < n && all_positive; ++i) all_positive = ev.payoff(adj.data(), i) > 1e-12;
    if (all_positive) out.push_back(Network::from_mask(n, m));
  }
  return out;
}

bool is_superset(const std::vector<Network>& big, const std::vector<Network>& small) {
  std::set<std::uint64_t> masks;
  for (const auto& g : big) masks.insert(g.mask());
  return std::all_of(small.begin(), small.end(), [&](const Network& g) { return masks.count(g.mask()) > 0; });
}

}  // namespace netform
