#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "netform/graph.hpp"

namespace netform {

// Types are indices into the benefit table f; Θ = {0, ..., type_count - 1}.
struct TypeVector {
  std::vector<int> types;
  int type_count = 1;

  std::size_t size() const { return types.size(); }
  int operator[](std::size_t i) const { return types[i]; }
  void validate() const;

  static TypeVector homogeneous(std::size_t n);
  // counts[t] agents of type t, laid out in type order.
  static TypeVector from_counts(const std::vector<std::size_t>& counts);
};

struct PayoffParams {
  std::vector<double> f;  // benefit per type
  double c = 1.0;
  double delta = 0.5;

  void validate() const;
};

struct TableEntry {
  Network component;           // the component shape on agents 0..k-1
  std::optional<Agent> position;  // which vertex of the shape; empty means any
  double value = 0.0;
};

// Payoffs given per component shape, up to relabeling.
struct PayoffTable {
  std::vector<TableEntry> entries;
};

PayoffTable example1_table(double v);

class PayoffModel {
public:
  static PayoffModel connections(PayoffParams params);
  static PayoffModel table(PayoffTable table);

  bool is_connections() const { return std::holds_alternative<PayoffParams>(impl_); }
  const PayoffParams& params() const;
  const PayoffTable& table() const;

private:
  std::variant<PayoffParams, PayoffTable> impl_;
};

double one_period_payoff(const PayoffModel& model, const TypeVector& types, const Network& g, Agent i);
std::vector<double> all_payoffs(const PayoffModel& model, const TypeVector& types, const Network& g);
double total_welfare(const PayoffModel& model, const TypeVector& types, const Network& g);
double discounted_constant_value(double u, double gamma);

// Connections-model payoff from BFS layers, exposed for callers that already hold them.
double connections_payoff(const PayoffParams& params, const TypeVector& types, const Network& g, Agent i);

// Allocation-free evaluator for networks of at most 64 agents held as one
// adjacency word per agent. Used by the enumeration oracles.
class SmallEvaluator {
public:
  SmallEvaluator(const PayoffModel& model, const TypeVector& types);

  std::size_t size() const { return n_; }
  double payoff(const std::uint64_t* adj, Agent i) const;
  double payoff(const Network& g, Agent i) const;
  double welfare(const std::uint64_t* adj) const;

  // adjacency rows for the pair mask (pair order as in pair_at)
  void rows_from_mask(std::uint64_t mask, std::uint64_t* adj) const;

private:
  PayoffModel model_;
  TypeVector types_;
  std::size_t n_;
  std::vector<double> benefit_;
  std::vector<Link> pairs_;
};

}  // namespace netform
