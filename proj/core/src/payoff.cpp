#include "netform/payoff.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "netform/error.hpp"

namespace netform {

void TypeVector::validate() const {
  if (type_count < 1) throw ConfigError("type count must be positive");
  for (int t : types)
    if (t < 0 || t >= type_count) throw ConfigError("type index outside the type set");
}

TypeVector TypeVector::homogeneous(std::size_t n) { return TypeVector{std::vector<int>(n, 0), 1}; }

TypeVector TypeVector::from_counts(const std::vector<std::size_t>& counts) {
  TypeVector tv;
  tv.type_count = static_cast<int>(counts.size());
  for (std::size_t t = 0; t < counts.size(); ++t) tv.types.insert(tv.types.end(), counts[t], static_cast<int>(t));
  return tv;
}

void PayoffParams::validate() const {
  if (f.empty()) throw ConfigError("benefit table f is empty");
  for (double x : f)
    if (!(x > 0.0)) throw ConfigError("benefits f must be positive");
  if (!(c > 0.0)) throw ConfigError("link cost c must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("spatial discount delta must lie in (0,1)");
}

PayoffTable example1_table(double v) {
  PayoffTable t;
  t.entries.push_back({Network::from_links(2, std::vector<Link>{{0, 1}}), std::nullopt, 2.0 * v});
  t.entries.push_back({Network::from_links(3, std::vector<Link>{{0, 1}, {1, 2}}), std::nullopt, 0.0});
  t.entries.push_back({Network::complete(3), std::nullopt, v});
  return t;
}

PayoffModel PayoffModel::connections(PayoffParams params) {
  params.validate();
  PayoffModel m;
  m.impl_ = std::move(params);
  return m;
}

PayoffModel PayoffModel::table(PayoffTable table) {
  PayoffModel m;
  m.impl_ = std::move(table);
  return m;
}

const PayoffParams& PayoffModel::params() const {
  if (!is_connections()) throw ArgumentError("payoff model is not the connections model");
  return std::get<PayoffParams>(impl_);
}

const PayoffTable& PayoffModel::table() const {
  if (is_connections()) throw ArgumentError("payoff model is not a table");
  return std::get<PayoffTable>(impl_);
}

double connections_payoff(const PayoffParams& params, const TypeVector& types, const Network& g, Agent i) {
  const auto bfs = bfs_layers(g, i);
  double value = 0.0;
  double discount = 1.0;
  for (std::size_t k = 1; k < bfs.layers.size(); ++k) {
    double layer = 0.0;
    const auto& bits = bfs.layers[k];
    for (std::size_t w = 0; w < bits.size(); ++w) {
      std::uint64_t x = bits[w];
      while (x) {
        const auto j = w * 64 + static_cast<std::size_t>(std::countr_zero(x));
        layer += params.f[static_cast<std::size_t>(types[j])];
        x &= x - 1;
      }
    }
    value += discount * layer;
    discount *= params.delta;
  }
  return value - static_cast<double>(g.degree(i)) * params.c;
}

namespace {

bool isomorphic_at(const Network& local, Agent li, const TableEntry& e) {
  const std::size_t k = local.size();
  std::vector<Agent> p(k);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (e.position && p[li] != *e.position) continue;
    bool ok = true;
    for (Agent a = 0; a < k && ok; ++a)
      for (Agent b = a + 1; b < k && ok; ++b) ok = local.has(a, b) == e.component.has(p[a], p[b]);
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

double table_payoff(const PayoffTable& table, const Network& g, Agent i) {
  const auto comp = component_of(g, i);
  if (comp.size() == 1) return 0.0;
  if (comp.size() > 8) throw SizeError("table payoff: component larger than 8 agents");
  Network local(comp.size());
  Agent li = 0;
  for (Agent a = 0; a < comp.size(); ++a) {
    if (comp[a] == i) li = a;
    for (Agent b = a + 1; b < comp.size(); ++b)
      if (g.has(comp[a], comp[b])) local.add(a, b);
  }
  const auto m = local.link_count();
  for (const auto& e : table.entries) {
    if (e.component.size() != comp.size() || e.component.link_count() != m) continue;
    if (isomorphic_at(local, li, e)) return e.value;
  }
  throw ConfigError("payoff table has no entry for component " + to_string(local));
}

}  // namespace

double one_period_payoff(const PayoffModel& model, const TypeVector& types, const Network& g, Agent i) {
  if (i >= g.size()) throw ArgumentError("agent index out of range");
  if (types.size() != g.size()) throw ArgumentError("type vector size does not match network");
  if (model.is_connections()) {
    const auto& p = model.params();
    for (int t : types.types)
      if (t < 0 || static_cast<std::size_t>(t) >= p.f.size()) throw ConfigError("type outside the domain of f");
    return connections_payoff(p, types, g, i);
  }
  return table_payoff(model.table(), g, i);
}

std::vector<double> all_payoffs(const PayoffModel& model, const TypeVector& types, const Network& g) {
  std::vector<double> u(g.size());
  for (Agent i = 0; i < g.size(); ++i) u[i] = one_period_payoff(model, types, g, i);
  return u;
}

double total_welfare(const PayoffModel& model, const TypeVector& types, const Network& g) {
  const auto u = all_payoffs(model, types, g);
  return std::accumulate(u.begin(), u.end(), 0.0);
}

double discounted_constant_value(double u, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ArgumentError("time discount gamma must lie in (0,1)");
  return u / (1.0 - gamma);
}

SmallEvaluator::SmallEvaluator(const PayoffModel& model, const TypeVector& types)
    : model_(model), types_(types), n_(types.size()) {
  if (n_ > 64) throw SizeError("SmallEvaluator: at most 64 agents");
  if (model_.is_connections()) {
    const auto& p = model_.params();
    benefit_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto t = static_cast<std::size_t>(types_[i]);
      if (t >= p.f.size()) throw ConfigError("type outside the domain of f");
      benefit_[i] = p.f[t];
    }
  }
  if (n_ >= 2)
    for (std::size_t k = 0; k < pair_count(n_); ++k) pairs_.push_back(pair_at(k, n_));
}

void SmallEvaluator::rows_from_mask(std::uint64_t mask, std::uint64_t* adj) const {
  std::fill(adj, adj + n_, 0);
  while (mask) {
    const auto k = static_cast<std::size_t>(std::countr_zero(mask));
    const auto& l = pairs_[k];
    adj[l.i] |= std::uint64_t{1} << l.j;
    adj[l.j] |= std::uint64_t{1} << l.i;
    mask &= mask - 1;
  }
}

double SmallEvaluator::payoff(const std::uint64_t* adj, Agent i) const {
  if (!model_.is_connections()) {
    Network g(n_);
    for (Agent a = 0; a < n_; ++a)
      for (Agent b = a + 1; b < n_; ++b)
        if ((adj[a] >> b) & 1U) g.add(a, b);
    return table_payoff(model_.table(), g, i);
  }
  const auto& p = model_.params();
  std::uint64_t visited = std::uint64_t{1} << i;
  std::uint64_t frontier = visited;
  double value = 0.0;
  double discount = 1.0;
  while (true) {
    std::uint64_t next = 0;
    for (std::uint64_t x = frontier; x; x &= x - 1) next |= adj[std::countr_zero(x)];
    next &= ~visited;
    if (!next) break;
    visited |= next;
    double layer = 0.0;
    for (std::uint64_t x = next; x; x &= x - 1) layer += benefit_[static_cast<std::size_t>(std::countr_zero(x))];
    value += discount * layer;
    discount *= p.delta;
    frontier = next;
  }
  return value - static_cast<double>(std::popcount(adj[i])) * p.c;
}

double SmallEvaluator::payoff(const Network& g, Agent i) const {
  std::vector<std::uint64_t> adj(n_);
  rows_from_mask(g.mask(), adj.data());
  return payoff(adj.data(), i);
}

double SmallEvaluator::welfare(const std::uint64_t* adj) const {
  double total = 0.0;
  for (Agent i = 0; i < n_; ++i) total += payoff(adj, i);
  return total;
}

}  // namespace netform
