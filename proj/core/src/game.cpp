#include "netform/game.hpp"

#include <algorithm>
#include <ostream>

#include "netform/error.hpp"

namespace netform {

Link select_pair(Rng& rng, std::size_t n) {
  if (n < 2) throw ConfigError("pair selection needs at least two agents");
  return pair_at(static_cast<std::size_t>(rng.uniform_index(pair_count(n))), n);
}

bool strategy_sc(const Network& target, const CpState& signal, ActionContext ctx, Link ij) {
  return signal.phase == CpPhase::C && (ctx.omega || ctx.zeta) && target.has(ij);
}

CpState monitor_update_cp(CpState prev, bool detected_deviation, std::uint32_t K) {
  if (K == 0) throw ArgumentError("punishment length K must be positive");
  if (prev.phase == CpPhase::C) return detected_deviation ? CpState{CpPhase::P, 0} : CpState{};
  if (prev.elapsed + 1 >= K) return CpState{};
  return CpState{CpPhase::P, prev.elapsed + 1};
}

bool detect_deviation(const Network& target, const Network& prev, Link selected, const Network& now) {
  if (target.size() != prev.size() || prev.size() != now.size()) throw ArgumentError("network size mismatch");
  for (const auto& l : now.links())
    if (!prev.has(l) && l != selected)
      throw ConsistencyError("link " + std::to_string(l.i) + "-" + std::to_string(l.j) + " appeared without selection");
  for (const auto& l : now.links())
    if (!target.has(l)) return true;
  for (const auto& l : prev.links())
    if (target.has(l) && !now.has(l)) return true;
  return target.has(selected) && !now.has(selected);
}

CooperationProtocol::CooperationProtocol(Network target, std::uint32_t K) : target_(std::move(target)), K_(K) {
  if (K_ == 0) throw ConfigError("punishment length K must be positive");
}

void CooperationProtocol::reset(const Network& initial) {
  if (initial.size() != target_.size()) throw ConfigError("initial network size does not match target");
  state_ = CpState{};
}

bool CooperationProtocol::consent(const Network& g, Link selected, Agent i, Agent j) const {
  const Link ij(i, j);
  return strategy_sc(target_, state_, ActionContext{ij == selected, g.has(ij)}, ij);
}

void CooperationProtocol::observe(const Network& prev, Link selected, const Network& now) {
  const bool detected = state_.phase == CpPhase::C && detect_deviation(target_, prev, selected, now);
  state_ = monitor_update_cp(state_, detected, K_);
}

std::string CooperationProtocol::signal_label() const {
  return state_.phase == CpPhase::C ? "C" : "P" + std::to_string(state_.elapsed);
}

void SimConfig::validate() const {
  if (n < 2) throw ConfigError("at least two agents are required");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in (0,1)");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in [0,1)");
  if (K < 1) throw ConfigError("K must be at least 1");
  if (J < 1) throw ConfigError("J must be at least 1");
  if (horizon < 1) throw ConfigError("horizon must be at least 1");
  if (initial_network.size() != n) throw ConfigError("initial network size does not match n");
  for (const auto& d : deviations) {
    if (d.agent >= n || (d.partner && (*d.partner >= n || *d.partner == d.agent)))
      throw ConfigError("deviation injection refers to an invalid agent");
    if (d.t < 1) throw ConfigError("deviation injection period must be at least 1");
  }
}

StepOutcome step(const Network& g, Protocol& protocol, Rng& rng, double epsilon,
                 std::span<const DeviationInjection> injections) {
  const std::size_t n = g.size();
  const Link phi = select_pair(rng, n);

  // Trembling agents draw a fresh uniform action for every admissible partner, in index order.
  std::vector<std::vector<std::pair<Agent, bool>>> noise(n);
  std::vector<bool> trembling(n, false);
  if (epsilon > 0.0) {
    for (Agent i = 0; i < n; ++i) trembling[i] = rng.bernoulli(epsilon);
    for (Agent i = 0; i < n; ++i) {
      if (!trembling[i]) continue;
      auto partners = g.neighbors(i);
      if (phi.contains(i) && !g.has(phi)) {
        partners.push_back(phi.other(i));
        std::sort(partners.begin(), partners.end());
      }
      for (Agent j : partners) noise[i].emplace_back(j, rng.coin());
    }
  }

  auto act = [&](Agent i, Agent j) {
    for (const auto& inj : injections)
      if (inj.agent == i && (!inj.partner || *inj.partner == j)) return inj.consent;
    if (trembling[i]) {
      for (const auto& [k, bit] : noise[i])
        if (k == j) return bit;
      return false;
    }
    return protocol.consent(g, phi, i, j);
  };

  Network next(n);
  auto candidates = g.links();
  if (!g.has(phi)) candidates.push_back(phi);
  for (const auto& l : candidates)
    if (act(l.i, l.j) && act(l.j, l.i)) next.add(l);
  protocol.observe(g, phi, next);
  return StepOutcome{phi, std::move(next)};
}

SimTrace run(const SimConfig& config, Protocol& protocol) {
  config.validate();
  Rng rng(config.seed);
  Network g = config.initial_network;
  protocol.reset(g);

  auto schedule = config.deviations;
  std::stable_sort(schedule.begin(), schedule.end(),
                   [](const DeviationInjection& a, const DeviationInjection& b) { return a.t < b.t; });
  std::size_t cursor = 0;

  SimTrace trace;
  std::optional<std::uint64_t> since;
  for (std::uint64_t t = 1; t <= config.horizon; ++t) {
    const std::size_t begin = cursor;
    while (cursor < schedule.size() && schedule[cursor].t == t) ++cursor;
    auto out = step(g, protocol, rng, config.epsilon,
                    std::span<const DeviationInjection>(schedule.data() + begin, cursor - begin));
    const bool at = out.next == protocol.designated();
    if (config.record_trace) {
      TraceRecord rec;
      rec.t = t;
      rec.pair = out.pair;
      rec.signal = protocol.signal_label();
      rec.added = out.next.minus(g);
      rec.removed = g.minus(out.next);
      rec.at_target = at;
      trace.records.push_back(std::move(rec));
    }
    if (at) ++trace.occupied;
    if (at && protocol.cooperating()) {
      if (!since) since = t;
    } else {
      since.reset();
    }
    g = std::move(out.next);
    trace.periods = t;
    const bool pending = cursor < schedule.size();
    if (config.stop_when_converged && config.epsilon == 0.0 && since && !pending) {
      trace.occupied += config.horizon - t;
      trace.periods = config.horizon;
      break;
    }
  }
  // Without trembles the designated network is a fixed point once held in the cooperative phase.
  trace.converged = since.has_value() && config.epsilon == 0.0;
  if (trace.converged) {
    trace.convergence_period = since;
    trace.limit = protocol.designated();
  }
  trace.final_network = g;
  trace.occupancy = static_cast<double>(trace.occupied) / static_cast<double>(config.horizon);
  return trace;
}

void write_trace_csv(std::ostream& out, const SimTrace& trace) {
  out << "t,pair,signal,edge_delta\n";
  for (const auto& r : trace.records) {
    out << r.t << ',' << r.pair.i << '-' << r.pair.j << ',' << r.signal << ',';
    bool first = true;
    for (const auto& l : r.added) {
      out << (first ? "" : ";") << '+' << l.i << '-' << l.j;
      first = false;
    }
    for (const auto& l : r.removed) {
      out << (first ? "" : ";") << '-' << l.i << '-' << l.j;
      first = false;
    }
    out << '\n';
  }
}

}  // namespace netform
