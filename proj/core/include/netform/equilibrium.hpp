#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netform/game.hpp"
#include "netform/graph.hpp"
#include "netform/payoff.hpp"

namespace netform {

enum class ChainProfile { Cooperation, Silent };

inline constexpr std::size_t kChainMaxAgents = 4;

// Joint (network, monitor) chain under a fixed profile. Phase 0 is C,
// phase k + 1 is the k-th punishment period.
struct ChainModel {
  std::size_t n = 0;
  std::uint32_t K = 1;
  Network target;
  ChainProfile profile = ChainProfile::Cooperation;
  std::size_t networks = 0;
  std::size_t phases = 0;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> kernel;
  std::vector<std::vector<double>> payoff;  // [agent][network mask]

  std::size_t state_count() const { return networks * phases; }
  std::uint32_t state(std::uint64_t mask, std::size_t phase) const {
    return static_cast<std::uint32_t>(mask * phases + phase);
  }
  std::uint64_t mask_of(std::uint32_t s) const { return s / phases; }
  std::size_t phase_of(std::uint32_t s) const { return s % phases; }
};

ChainModel build_chain(const Network& target, const TypeVector& types, const PayoffModel& model, std::uint32_t K,
                       ChainProfile profile = ChainProfile::Cooperation);

struct ValueTable {
  std::vector<std::vector<double>> value;  // [agent][state]
  double residual = 0.0;
  std::size_t sweeps = 0;
};

ValueTable exact_values(const ChainModel& chain, double gamma);

// Expected value of the next state, the quantity an agent compares when choosing this period's action.
double continuation_value(const ChainModel& chain, const ValueTable& values, Agent i, std::uint32_t state);

struct DeviationReport {
  double gain = 0.0;  // max over effective one-shot deviations; 0 when none exist
  bool any_effective = false;
  Agent agent = 0;
  std::uint32_t state = 0;
  Link selected;
  std::vector<Link> severed;
};

DeviationReport one_shot_deviation_gain(const ChainModel& chain, const ValueTable& values);
DeviationReport one_shot_deviation_gain(const Network& target, const TypeVector& types, const PayoffModel& model,
                                        double gamma, std::uint32_t K,
                                        ChainProfile profile = ChainProfile::Cooperation);

enum class ThresholdOutcome { Interior, AlwaysEquilibrium, NeverEquilibrium };
const char* to_string(ThresholdOutcome o);

struct GammaThreshold {
  ThresholdOutcome outcome = ThresholdOutcome::Interior;
  double gamma_bar = 0.0;
  double lo = 0.0;  // gain > 0 here
  double hi = 0.0;  // gain <= 0 here
  double gain_lo = 0.0;
  double gain_hi = 0.0;
  bool verified = false;  // gain checked at gamma_bar +/- 1e-4
};

inline constexpr double kGammaSearchLo = 1e-4;
inline constexpr double kGammaSearchHi = 1.0 - 1e-6;

GammaThreshold threshold_gamma(const Network& target, const TypeVector& types, const PayoffModel& model,
                               std::uint32_t K);
// Smallest K in [1, K_max] whose profile is an equilibrium at gamma.
std::optional<std::uint32_t> min_K(const Network& target, const TypeVector& types, const PayoffModel& model,
                                   double gamma, std::uint32_t K_max);

// ---------------------------------------------------------------------------
// Bound-based certification.

std::uint32_t t_star(std::size_t n);

// Lower bound on the expected payoff within M cooperation periods; M empty means infinitely many.
double lemma1_lower_bound(double gamma, std::optional<std::uint64_t> M, double W, double u_target, std::size_t n);

struct BoundComponents {
  std::size_t n = 0;
  double v_bar = 0.0;
  double W = 0.0;
  double V_max = 0.0;
  double A = 0.0;
  std::uint32_t t_star = 1;
  std::vector<double> u_target;

  double mu_lower(double gamma, std::optional<std::uint64_t> M, Agent i) const;
};

BoundComponents bound_components(const Network& target, const TypeVector& types, const PayoffModel& model);

struct BoundVerdict {
  double value = 0.0;  // worst agent's v̄ + γ^{1+K}A − γ μ_C(γ,K)
  bool certifies = false;
};

BoundVerdict theorem1_bound(const BoundComponents& b, double gamma, std::uint32_t K);

struct GroupDeviationBound {
  double V_max = 0.0;
  double W = 0.0;
  double F = 0.0;
  double D = 0.0;
  double E = 0.0;
  std::uint32_t t_star = 1;
  std::vector<Agent> F_coalition;
  Network F_network;

  double value(double gamma, std::uint64_t K_prime) const;
};

GroupDeviationBound group_deviation_bound(const Network& g, const TypeVector& types, const PayoffModel& model);
std::uint64_t m_of_gamma(const GroupDeviationBound& bound, double gamma);

struct GroupDeviationResult {
  bool profitable = false;
  Agent worst_member = 0;
  double worst_gap = 0.0;  // commit minus comply for the worst-off member
  std::vector<double> commit;
  std::vector<double> comply;
  double bound_value = 0.0;
  bool bound_says_unprofitable = false;
};

GroupDeviationResult group_deviation_check(const Network& g, const std::vector<Agent>& coalition,
                                           const Network& deviation, std::uint64_t K_prime, double gamma,
                                           std::uint32_t K, const TypeVector& types, const PayoffModel& model);

struct DeltaPoint {
  double delta = 0.0;
  GammaThreshold threshold;
};

std::vector<DeltaPoint> gamma_of_delta(const std::vector<double>& deltas, const Network& target,
                                       const TypeVector& types, PayoffParams params, std::uint32_t K);
bool strictly_decreasing(const std::vector<DeltaPoint>& points);

// ---------------------------------------------------------------------------
// Incomplete information: finite menu of one-period refusals, evaluated by simulation.

struct ProbeConfig {
  double gamma = 0.95;
  std::uint32_t K = 10;
  std::uint32_t J = 5;
  std::uint64_t horizon = 2000;
  std::vector<std::uint64_t> seeds;
  std::vector<std::uint64_t> deviation_periods;
};

struct ProbeResult {
  double max_gain = 0.0;
  Agent agent = 0;
  std::uint64_t period = 0;
  std::size_t probes = 0;
};

double discounted_payoff(const SimTrace& trace, const Network& initial, const TypeVector& types,
                         const PayoffParams& params, Agent i, double gamma);

ProbeResult probe_ic_deviations(const AdmissiblePlan& plan, const TypeVector& truth, const PayoffParams& params,
                                const std::vector<double>& prior, const ProbeConfig& config);

}  // namespace netform
