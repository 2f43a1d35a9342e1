#include <algorithm>
#include <cmath>
#include <numeric>

#include "netform/error.hpp"
#include "netform/game.hpp"

namespace netform {

Beliefs::Beliefs(TypeVector truth, std::vector<double> prior)
    : truth_(std::move(truth)), prior_(std::move(prior)), known_(truth_.size() * truth_.size(), false) {
  if (static_cast<int>(prior_.size()) != truth_.type_count) throw ConfigError("prior size does not match type set");
  double mass = 0.0;
  for (double p : prior_) {
    if (p < 0.0) throw ConfigError("prior probabilities must be nonnegative");
    mass += p;
  }
  if (std::abs(mass - 1.0) > 1e-9) throw ConfigError("prior must sum to one");
  for (std::size_t i = 0; i < truth_.size(); ++i) known_[i * truth_.size() + i] = true;
}

bool Beliefs::knows(Agent i, Agent j) const {
  if (i >= size() || j >= size()) throw ArgumentError("agent index out of range");
  return known_[static_cast<std::size_t>(i) * size() + j];
}

double Beliefs::probability(Agent i, Agent j, int theta) const {
  if (theta < 0 || theta >= truth_.type_count) throw ArgumentError("type outside the type set");
  if (knows(i, j)) return truth_[j] == theta ? 1.0 : 0.0;
  return prior_[static_cast<std::size_t>(theta)];
}

bool Beliefs::complete_within(const std::vector<bool>& members) const {
  for (Agent i = 0; i < size(); ++i)
    for (Agent j = 0; j < size(); ++j)
      if (members[i] && members[j] && !knows(i, j)) return false;
  return true;
}

void Beliefs::learn(Agent i, Agent j) {
  if (i >= size() || j >= size()) throw ArgumentError("agent index out of range");
  known_[static_cast<std::size_t>(i) * size() + j] = true;
  known_[static_cast<std::size_t>(j) * size() + i] = true;
}

Beliefs belief_update(const Beliefs& beliefs, const BeliefEvent& event) {
  Beliefs next = beliefs;
  // Strategies on the path do not depend on private types before types are
  // revealed by links, so a bare signal carries no information.
  if (event.link) next.learn(event.link->i, event.link->j);
  return next;
}

namespace {

Network star_on(std::span<const Agent> members, Agent centre, std::size_t n) {
  Network g(n);
  for (Agent a : members)
    if (a != centre) g.add(centre, a);
  return g;
}

Network wheel_on(std::span<const Agent> members, std::size_t n) {
  Network g(n);
  const std::size_t m = members.size();
  if (m == 2) g.add(members[0], members[1]);
  if (m >= 3)
    for (std::size_t k = 0; k < m; ++k) g.add(members[k], members[(k + 1) % m]);
  return g;
}

TypeVector embed(std::span<const Agent> members, std::span<const int> member_types, std::size_t n, int type_count) {
  TypeVector tv{std::vector<int>(n, 0), type_count};
  for (std::size_t k = 0; k < members.size(); ++k) tv.types[members[k]] = member_types[k];
  return tv;
}

}  // namespace

AdmissiblePlan star_wheel_plan() {
  AdmissiblePlan plan;
  plan.name = "star-or-wheel";
  plan.r = [](std::span<const Agent> members, std::span<const int> types, std::size_t n) {
    std::vector<Agent> alphas;
    for (std::size_t k = 0; k < members.size(); ++k)
      if (types[k] == 0) alphas.push_back(members[k]);
    if (alphas.size() >= 2) return star_on(members, alphas.front(), n);
    return wheel_on(members, n);
  };
  // Every agent is linked in r, so the reward network never has to reward anyone.
  plan.r_prime = plan.r;
  return plan;
}

bool is_partial_equilibrium(const Network& g, std::span<const Agent> members, const TypeVector& types,
                            const PayoffParams& params) {
  Network h = g;
  for (Agent i : members) {
    const double u = connections_payoff(params, types, g, i);
    if (!(u > 0.0)) return false;
    for (Agent j : g.neighbors(i)) {
      h.remove(i, j);
      const bool better = connections_payoff(params, types, h, i) > u;
      h.add(i, j);
      if (better) return false;
    }
  }
  return true;
}

AdmissibilityReport check_admissible(const AdmissiblePlan& plan, std::span<const Agent> members, int type_count,
                                     const PayoffParams& params, std::size_t n, std::size_t samples,
                                     std::uint64_t seed) {
  if (type_count < 1) throw ArgumentError("type set must be nonempty");
  if (static_cast<std::size_t>(type_count) > params.f.size()) throw ConfigError("type outside the domain of f");
  const std::size_t m = members.size();
  std::vector<bool> inside(n, false);
  for (Agent a : members) {
    if (a >= n) throw ArgumentError("member index out of range");
    inside[a] = true;
  }

  auto check_one = [&](const std::vector<int>& tv, AdmissibilityReport& rep) {
    const auto types = embed(members, tv, n, type_count);
    const Network r = plan.r(members, tv, n);
    const Network rp = plan.r_prime(members, tv, n);
    for (const auto* net : {&r, &rp})
      for (const auto& l : net->links())
        if (!inside[l.i] || !inside[l.j]) {
          rep = {false, tv, "plan links an agent outside the member set"};
          return false;
        }
    std::vector<Agent> singles;
    for (Agent a : members) {
      if (r.degree(a) == 0) {
        singles.push_back(a);
        continue;
      }
      if (!(connections_payoff(params, types, r, a) > 0.0)) {
        rep = {false, tv, "agent " + std::to_string(a) + " has a nonpositive payoff in r"};
        return false;
      }
    }
    if (!singles.empty() && !is_partial_equilibrium(rp, singles, types, params)) {
      rep = {false, tv, "r' is not a partial equilibrium network for the singletons of r"};
      return false;
    }
    return true;
  };

  AdmissibilityReport rep;
  std::vector<int> tv(m, 0);
  if (m <= kExhaustiveAdmissibilityMax) {
    while (true) {
      if (!check_one(tv, rep)) return rep;
      std::size_t k = 0;
      while (k < m && ++tv[k] == type_count) tv[k++] = 0;
      if (k == m) break;
    }
    return rep;
  }
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    for (auto& t : tv) t = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(type_count)));
    if (!check_one(tv, rep)) return rep;
  }
  return rep;
}

std::vector<Network> ic_criterion_set(std::span<const AdmissiblePlan> plans, const TypeVector& types,
                                      const PayoffParams& params) {
  const std::size_t n = types.size();
  std::vector<Agent> members(n);
  std::iota(members.begin(), members.end(), 0);
  std::vector<Network> out;
  for (const auto& plan : plans) {
    if (!check_admissible(plan, members, types.type_count, params, n).admissible) continue;
    const Network r = plan.r(members, types.types, n);
    bool positive = true;
    for (Agent i = 0; i < n && positive; ++i) positive = connections_payoff(params, types, r, i) > 0.0;
    if (positive && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  return out;
}

const char* to_string(IcPhase p) {
  switch (p) {
    case IcPhase::X0: return "X0";
    case IcPhase::X1: return "X1";
    case IcPhase::T: return "T";
    case IcPhase::EC: return "EC";
    case IcPhase::EP: return "EP";
  }
  return "?";
}

namespace {

// Members that failed to form or keep a required link they had the chance to hold.
std::vector<bool> failed_required(const std::vector<bool>& members, const Network& required, const IcObservation& obs) {
  std::vector<bool> out(members.size(), false);
  for (const auto& l : required.links()) {
    if (!members[l.i] || !members[l.j]) continue;
    const bool possible = obs.prev.has(l) || l == obs.selected;
    if (possible && !obs.now.has(l)) out[l.i] = out[l.j] = true;
  }
  return out;
}

std::vector<bool> linked_outside(const std::vector<bool>& members, const Network& now) {
  std::vector<bool> out(members.size(), false);
  for (const auto& l : now.links())
    if (members[l.i] != members[l.j]) {
      if (members[l.i]) out[l.i] = true;
      if (members[l.j]) out[l.j] = true;
    }
  return out;
}

std::vector<bool> remove_marked(std::vector<bool> members, const std::vector<bool>& a, const std::vector<bool>& b) {
  for (std::size_t i = 0; i < members.size(); ++i)
    if (a[i] || b[i]) members[i] = false;
  return members;
}

bool any(const std::vector<bool>& v) { return std::find(v.begin(), v.end(), true) != v.end(); }

bool holds_within(const std::vector<bool>& members, const Network& designated, const Network& now) {
  for (const auto& l : now.links())
    if ((members[l.i] || members[l.j]) && !designated.has(l)) return false;
  for (const auto& l : designated.links())
    if (!now.has(l)) return false;
  return true;
}

}  // namespace

IcState monitor_update_ic(const IcState& prev, const IcObservation& obs, const IcTargets& targets, std::uint32_t K,
                          std::uint32_t J) {
  const auto& members = prev.nonsolitary;
  const std::vector<bool> none(members.size(), false);
  IcState next = prev;
  switch (prev.phase) {
    case IcPhase::X0: {
      const Network clique = [&] {
        Network g(members.size());
        for (Agent i = 0; i < members.size(); ++i)
          for (Agent j = i + 1; j < members.size(); ++j)
            if (members[i] && members[j]) g.add(i, j);
        return g;
      }();
      next.nonsolitary = remove_marked(members, failed_required(members, clique, obs), none);
      next.counter = 0;
      next.phase = obs.beliefs.complete_within(next.nonsolitary) ? IcPhase::T : IcPhase::X0;
      break;
    }
    case IcPhase::X1:
      next.nonsolitary = remove_marked(members, failed_required(members, targets.r_prime, obs), linked_outside(members, obs.now));
      next.phase = IcPhase::T;
      next.counter = 0;
      break;
    case IcPhase::T:
      if (holds_within(members, targets.r_prime, obs.now)) {
        next.counter = prev.counter + 1;
        if (next.counter >= J) {
          next.phase = IcPhase::EC;
          next.counter = 0;
        }
      } else {
        next.nonsolitary =
            remove_marked(members, failed_required(members, targets.r_prime, obs), linked_outside(members, obs.now));
        next.counter = 0;
      }
      break;
    case IcPhase::EC: {
      // Exploitation works like y_{g,K}: a designated link missing, a foreign
      // link inside the group, or a link leaving the group starts punishment.
      bool deviation = any(failed_required(members, targets.r, obs)) || any(linked_outside(members, obs.now));
      for (const auto& l : obs.now.links())
        if (members[l.i] && members[l.j] && !targets.r.has(l)) deviation = true;
      if (deviation) {
        next.phase = IcPhase::EP;
        next.counter = 1;
      }
      break;
    }
    case IcPhase::EP:
      if (prev.counter >= K) {
        next.phase = IcPhase::EC;
        next.counter = 0;
      } else {
        next.counter = prev.counter + 1;
      }
      break;
  }
  return next;
}

bool strategy_sic(const IcState& signal, bool members_admissible, const IcTargets& targets, ActionContext ctx, Link ij) {
  if (!(ctx.omega || ctx.zeta) || !members_admissible) return false;
  if (!signal.nonsolitary[ij.i] || !signal.nonsolitary[ij.j]) return false;
  switch (signal.phase) {
    case IcPhase::X0: return true;
    case IcPhase::X1:
    case IcPhase::T: return targets.r_prime.has(ij);
    case IcPhase::EC: return targets.r.has(ij);
    case IcPhase::EP: return false;
  }
  return false;
}

ExperimentationProtocol::ExperimentationProtocol(AdmissiblePlan plan, TypeVector truth, PayoffParams params,
                                                 std::vector<double> prior, std::uint32_t K, std::uint32_t J)
    : plan_(std::move(plan)), truth_(std::move(truth)), params_(std::move(params)), prior_(std::move(prior)), K_(K), J_(J) {
  truth_.validate();
  params_.validate();
  if (K_ == 0 || J_ == 0) throw ConfigError("K and J must be positive");
  reset(Network(truth_.size()));
}

void ExperimentationProtocol::reset(const Network& initial) {
  if (initial.size() != truth_.size()) throw ConfigError("initial network size does not match type vector");
  state_ = IcState{IcPhase::X0, std::vector<bool>(truth_.size(), true), 0};
  beliefs_ = Beliefs(truth_, prior_);
  for (const auto& l : initial.links()) beliefs_.learn(l.i, l.j);
  period_ = 0;
  entered_t_.reset();
  complete_at_t_ = false;
  refresh_targets();
}

void ExperimentationProtocol::refresh_targets() {
  std::vector<Agent> members;
  std::vector<int> types;
  for (Agent i = 0; i < truth_.size(); ++i)
    if (state_.nonsolitary[i]) {
      members.push_back(i);
      types.push_back(truth_[i]);
    }
  const std::size_t n = truth_.size();
  targets_.r = plan_.r(members, types, n);
  targets_.r_prime = plan_.r_prime(members, types, n);
  auto it = admissible_cache_.find(state_.nonsolitary);
  if (it == admissible_cache_.end())
    it = admissible_cache_
             .emplace(state_.nonsolitary, !members.empty() && check_admissible(plan_, members, truth_.type_count, params_, n).admissible)
             .first;
  admissible_ = it->second;
}

bool ExperimentationProtocol::consent(const Network& g, Link selected, Agent i, Agent j) const {
  const Link ij(i, j);
  return strategy_sic(state_, admissible_, targets_, ActionContext{ij == selected, g.has(ij)}, ij);
}

void ExperimentationProtocol::observe(const Network& prev, Link selected, const Network& now) {
  ++period_;
  for (const auto& l : now.links()) beliefs_ = belief_update(beliefs_, BeliefEvent{l});
  const auto before = state_.nonsolitary;
  state_ = monitor_update_ic(state_, IcObservation{prev, selected, now, beliefs_}, targets_, K_, J_);
  if (state_.phase == IcPhase::T && !entered_t_) {
    entered_t_ = period_;
    complete_at_t_ = beliefs_.complete_within(state_.nonsolitary);
  }
  if (state_.nonsolitary != before) refresh_targets();
}

std::string ExperimentationProtocol::signal_label() const {
  std::string s = to_string(state_.phase);
  s += '{';
  bool first = true;
  for (Agent i = 0; i < state_.nonsolitary.size(); ++i)
    if (state_.nonsolitary[i]) {
      if (!first) s += ' ';
      s += std::to_string(i);
      first = false;
    }
  return s + '}';
}

}  // namespace netform
