#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netform/graph.hpp"
#include "netform/payoff.hpp"
#include "netform/rng.hpp"

namespace netform {

Link select_pair(Rng& rng, std::size_t n);

// ---------------------------------------------------------------------------
// Complete information: the y_{g,K} monitor and the strategy ŝ_c.

enum class CpPhase { C, P };

struct CpState {
  CpPhase phase = CpPhase::C;
  std::uint32_t elapsed = 0;
  friend bool operator==(const CpState&, const CpState&) = default;
};

struct ActionContext {
  bool omega = false;  // the pair is the one selected this period
  bool zeta = false;   // the link exists at the start of the period
};

bool strategy_sc(const Network& target, const CpState& signal, ActionContext ctx, Link ij);
CpState monitor_update_cp(CpState prev, bool detected_deviation, std::uint32_t K);
bool detect_deviation(const Network& target, const Network& prev, Link selected, const Network& now);

// A public monitor together with the strategy profile that reads it.
class Protocol {
public:
  virtual ~Protocol() = default;

  virtual void reset(const Network& initial) = 0;
  // Agent i's consent toward j, for admissible j (linked or selected).
  virtual bool consent(const Network& g, Link selected, Agent i, Agent j) const = 0;
  virtual void observe(const Network& prev, Link selected, const Network& now) = 0;
  virtual std::string signal_label() const = 0;
  // True when the signal says "hold the designated network".
  virtual bool cooperating() const = 0;
  virtual const Network& designated() const = 0;
  virtual std::unique_ptr<Protocol> clone() const = 0;
};

class CooperationProtocol final : public Protocol {
public:
  CooperationProtocol(Network target, std::uint32_t K);

  void reset(const Network& initial) override;
  bool consent(const Network& g, Link selected, Agent i, Agent j) const override;
  void observe(const Network& prev, Link selected, const Network& now) override;
  std::string signal_label() const override;
  bool cooperating() const override { return state_.phase == CpPhase::C; }
  const Network& designated() const override { return target_; }
  std::unique_ptr<Protocol> clone() const override { return std::make_unique<CooperationProtocol>(*this); }

  const CpState& state() const { return state_; }

private:
  Network target_;
  std::uint32_t K_;
  CpState state_;
};

// Everyone refuses every link; the trivial equilibrium.
class SilentProtocol final : public Protocol {
public:
  explicit SilentProtocol(std::size_t n) : empty_(n) {}

  void reset(const Network&) override {}
  bool consent(const Network&, Link, Agent, Agent) const override { return false; }
  void observe(const Network&, Link, const Network&) override {}
  std::string signal_label() const override { return "-"; }
  bool cooperating() const override { return true; }
  const Network& designated() const override { return empty_; }
  std::unique_ptr<Protocol> clone() const override { return std::make_unique<SilentProtocol>(*this); }

private:
  Network empty_;
};

// ---------------------------------------------------------------------------
// Simulation engine.

// Forces agent's consent toward partner (or toward every admissible partner).
struct DeviationInjection {
  std::uint64_t t = 0;
  Agent agent = 0;
  std::optional<Agent> partner;
  bool consent = false;
};

struct SimConfig {
  std::size_t n = 0;
  double gamma = 0.9;
  std::uint32_t K = 1;
  std::uint32_t J = 1;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  Network initial_network;
  std::uint64_t horizon = 1000;
  std::vector<DeviationInjection> deviations;
  bool record_trace = true;
  // Stop once convergence is certified; the remaining periods count as occupied.
  bool stop_when_converged = false;

  void validate() const;
};

struct TraceRecord {
  std::uint64_t t = 0;
  Link pair;
  std::string signal;
  std::vector<Link> added;
  std::vector<Link> removed;
  bool at_target = false;
};

struct SimTrace {
  std::vector<TraceRecord> records;
  std::optional<std::uint64_t> convergence_period;
  Network limit;          // designated network at convergence
  Network final_network;
  std::uint64_t periods = 0;
  std::uint64_t occupied = 0;  // periods with g(t) equal to the designated network
  double occupancy = 0.0;
  bool converged = false;
};

struct StepOutcome {
  Link pair;
  Network next;
};

// One period: selection, consents (with trembles and injections), severances, monitor update.
StepOutcome step(const Network& g, Protocol& protocol, Rng& rng, double epsilon,
                 std::span<const DeviationInjection> injections);

SimTrace run(const SimConfig& config, Protocol& protocol);

void write_trace_csv(std::ostream& out, const SimTrace& trace);

// ---------------------------------------------------------------------------
// Incomplete information: beliefs, the y_ic monitor and ŝ_ic.

class Beliefs {
public:
  Beliefs() = default;
  Beliefs(TypeVector truth, std::vector<double> prior);

  bool knows(Agent i, Agent j) const;
  // B_i's probability that agent j has type theta.
  double probability(Agent i, Agent j, int theta) const;
  bool complete_within(const std::vector<bool>& members) const;
  const std::vector<double>& prior() const { return prior_; }
  std::size_t size() const { return truth_.size(); }

  void learn(Agent i, Agent j);

private:
  TypeVector truth_;
  std::vector<double> prior_;
  std::vector<bool> known_;  // row-major n x n
};

struct BeliefEvent {
  std::optional<Link> link;  // a link formed or held this period; empty means a bare signal
};

Beliefs belief_update(const Beliefs& beliefs, const BeliefEvent& event);

// r maps the types of a member set to a network on those members; r_prime
// is the reward network for r's singletons.
struct AdmissiblePlan {
  using Map = std::function<Network(std::span<const Agent> members, std::span<const int> member_types, std::size_t n)>;
  Map r;
  Map r_prime;
  std::string name;
};

// Star with the lowest-index α (type 0) centre if at least two α agents, wheel otherwise.
AdmissiblePlan star_wheel_plan();

bool is_partial_equilibrium(const Network& g, std::span<const Agent> members, const TypeVector& types,
                            const PayoffParams& params);

struct AdmissibilityReport {
  bool admissible = true;
  std::vector<int> counterexample;  // member types of the first failing vector
  std::string reason;
};

inline constexpr std::size_t kExhaustiveAdmissibilityMax = 8;

AdmissibilityReport check_admissible(const AdmissiblePlan& plan, std::span<const Agent> members, int type_count,
                                     const PayoffParams& params, std::size_t n, std::size_t samples = 4096,
                                     std::uint64_t seed = 1);

// Networks r(θ̄) that some admissible plan designates for the whole agent set
// with every agent earning a positive payoff; the γ→1 criterion set under ŝ_ic.
std::vector<Network> ic_criterion_set(std::span<const AdmissiblePlan> plans, const TypeVector& types,
                                      const PayoffParams& params);

enum class IcPhase { X0, X1, T, EC, EP };
const char* to_string(IcPhase p);

struct IcState {
  IcPhase phase = IcPhase::X0;
  std::vector<bool> nonsolitary;
  std::uint32_t counter = 0;
};

// Networks the plan designates for the current non-solitary set.
struct IcTargets {
  Network r;
  Network r_prime;
};

struct IcObservation {
  const Network& prev;
  Link selected;
  const Network& now;
  const Beliefs& beliefs;  // after this period's updates
};

IcState monitor_update_ic(const IcState& prev, const IcObservation& obs, const IcTargets& targets, std::uint32_t K,
                          std::uint32_t J);

bool strategy_sic(const IcState& signal, bool members_admissible, const IcTargets& targets, ActionContext ctx, Link ij);

class ExperimentationProtocol final : public Protocol {
public:
  ExperimentationProtocol(AdmissiblePlan plan, TypeVector truth, PayoffParams params, std::vector<double> prior,
                          std::uint32_t K, std::uint32_t J);

  void reset(const Network& initial) override;
  bool consent(const Network& g, Link selected, Agent i, Agent j) const override;
  void observe(const Network& prev, Link selected, const Network& now) override;
  std::string signal_label() const override;
  bool cooperating() const override { return state_.phase == IcPhase::EC; }
  const Network& designated() const override { return targets_.r; }
  std::unique_ptr<Protocol> clone() const override { return std::make_unique<ExperimentationProtocol>(*this); }

  const IcState& state() const { return state_; }
  const Beliefs& beliefs() const { return beliefs_; }
  bool members_admissible() const { return admissible_; }
  // First period whose signal entered phase T, if any.
  std::optional<std::uint64_t> entered_transition() const { return entered_t_; }
  bool complete_when_entering_transition() const { return complete_at_t_; }

private:
  void refresh_targets();

  AdmissiblePlan plan_;
  TypeVector truth_;
  PayoffParams params_;
  std::vector<double> prior_;
  std::uint32_t K_, J_;
  IcState state_;
  Beliefs beliefs_;
  IcTargets targets_;
  bool admissible_ = false;
  std::map<std::vector<bool>, bool> admissible_cache_;
  std::uint64_t period_ = 0;
  std::optional<std::uint64_t> entered_t_;
  bool complete_at_t_ = false;
};

}  // namespace netform
