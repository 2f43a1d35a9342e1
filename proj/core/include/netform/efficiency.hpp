#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "netform/graph.hpp"
#include "netform/payoff.hpp"

namespace netform {

struct TwoTypeSpec {
  double f_alpha = 2.0;
  double f_beta = 1.0;
  std::size_t n_alpha = 1;
  std::size_t n_beta = 1;
  double c = 1.0;
  double delta = 0.5;

  void validate() const;
  std::size_t n() const { return n_alpha + n_beta; }
  // Type 0 is α, type 1 is β; α agents come first.
  TypeVector types() const;
  PayoffParams params() const;
};

enum class TwoTypeCase { a, b, c, d, e, f, g };
char case_letter(TwoTypeCase c);

// Raises DegenerateParameterError when an inequality holds with equality.
TwoTypeCase classify_two_type(const TwoTypeSpec& spec);

struct Partition {
  std::vector<Agent> core;
  std::vector<Agent> periphery1;
  std::vector<Agent> periphery2;
  std::vector<Agent> singletons;
};

struct EfficientResult {
  Network network;
  std::string case_label;
  Partition partition;
};

EfficientResult efficient_two_type(const TwoTypeSpec& spec);
EfficientResult efficient_core_periphery(const TypeVector& types, const PayoffParams& params);

struct BruteForceResult {
  double max_welfare = 0.0;
  std::vector<Network> maximizers;  // canonical forms under type-respecting relabeling
};

inline constexpr std::size_t kBruteForceMaxAgents = 6;

BruteForceResult brute_force_efficient(const TypeVector& types, const PayoffModel& model);
bool contains_canonical(const BruteForceResult& r, const Network& g, const TypeVector& types);

// Maximum one-period payoff of a type (0 = α, 1 = β) over all networks.
double max_attainable_payoff(int type, const TwoTypeSpec& spec);
// Exhaustive counterpart over every network and every agent of the type.
double brute_force_max_payoff(int type, const TwoTypeSpec& spec);

struct Blocking {
  std::vector<Agent> coalition;
  Network deviation;  // on the full agent set, links only inside coalition
};

inline constexpr std::size_t kCoreStabilityMaxAgents = 5;

// Empty optional means core-stable.
std::optional<Blocking> is_core_stable(const Network& g, const TypeVector& types, const PayoffModel& model);
bool core_stable_conditions(const TwoTypeSpec& spec);

inline constexpr std::size_t kSustainableMaxAgents = 5;

// Networks in which every agent earns a strictly positive one-period payoff.
std::vector<Network> sustainable_set(const TypeVector& types, const PayoffModel& model);
bool is_superset(const std::vector<Network>& big, const std::vector<Network>& small);

}  // namespace netform
