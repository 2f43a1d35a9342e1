#include "netform/graph.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "netform/error.hpp"

namespace netform {

namespace {

std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

bool test_bit(const std::uint64_t* row, std::size_t k) { return (row[k >> 6] >> (k & 63)) & 1U; }

template <typename F>
void for_each_bit(const std::vector<std::uint64_t>& bits, F&& f) {
  for (std::size_t w = 0; w < bits.size(); ++w) {
    std::uint64_t x = bits[w];
    while (x) {
      f(static_cast<Agent>(w * 64 + static_cast<std::size_t>(std::countr_zero(x))));
      x &= x - 1;
    }
  }
}

}  // namespace

std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

std::size_t pair_index(Agent i, Agent j, std::size_t n) {
  if (i == j || i >= n || j >= n) throw ArgumentError("pair_index: invalid pair");
  if (i > j) std::swap(i, j);
  return static_cast<std::size_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
}

Link pair_at(std::size_t index, std::size_t n) {
  if (index >= pair_count(n)) throw ArgumentError("pair_at: index out of range");
  Agent i = 0;
  std::size_t row = n - 1;
  while (index >= row) {
    index -= row;
    ++i;
    --row;
  }
  return Link(i, static_cast<Agent>(i + 1 + index));
}

Network::Network(std::size_t n) : n_(n), words_(words_for(n)), bits_(n * words_for(n), 0) {}

Network Network::from_links(std::size_t n, std::span<const Link> links) {
  Network g(n);
  for (const auto& l : links) g.add(l.i, l.j);
  return g;
}

Network Network::complete(std::size_t n) {
  Network g(n);
  for (Agent i = 0; i < n; ++i)
    for (Agent j = i + 1; j < n; ++j) g.add(i, j);
  return g;
}

Network Network::from_mask(std::size_t n, std::uint64_t mask) {
  if (pair_count(n) > 64) throw SizeError("from_mask: more than 64 pairs");
  Network g(n);
  std::size_t k = 0;
  for (Agent i = 0; i < n; ++i)
    for (Agent j = i + 1; j < n; ++j, ++k)
      if ((mask >> k) & 1U) g.add(i, j);
  return g;
}

std::uint64_t Network::mask() const {
  if (pair_count(n_) > 64) throw SizeError("mask: more than 64 pairs");
  std::uint64_t m = 0;
  std::size_t k = 0;
  for (Agent i = 0; i < n_; ++i)
    for (Agent j = i + 1; j < n_; ++j, ++k)
      if (has(i, j)) m |= std::uint64_t{1} << k;
  return m;
}

void Network::check(Agent i, Agent j) const {
  if (i >= n_ || j >= n_) throw ArgumentError("agent index out of range");
  if (i == j) throw ArgumentError("self-loops are not allowed");
}

bool Network::has(Agent i, Agent j) const {
  check(i, j);
  return test_bit(row(i), j);
}

void Network::add(Agent i, Agent j) { set(i, j, true); }
void Network::remove(Agent i, Agent j) { set(i, j, false); }

void Network::set(Agent i, Agent j, bool present) {
  check(i, j);
  const std::uint64_t bi = std::uint64_t{1} << (i & 63);
  const std::uint64_t bj = std::uint64_t{1} << (j & 63);
  if (present) {
    row_mut(i)[j >> 6] |= bj;
    row_mut(j)[i >> 6] |= bi;
  } else {
    row_mut(i)[j >> 6] &= ~bj;
    row_mut(j)[i >> 6] &= ~bi;
  }
}

std::size_t Network::degree(Agent i) const {
  if (i >= n_) throw ArgumentError("agent index out of range");
  std::size_t d = 0;
  for (std::size_t w = 0; w < words_; ++w) d += static_cast<std::size_t>(std::popcount(row(i)[w]));
  return d;
}

std::size_t Network::link_count() const {
  std::size_t total = 0;
  for (auto w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total / 2;
}

std::vector<Agent> Network::neighbors(Agent i) const {
  if (i >= n_) throw ArgumentError("agent index out of range");
  std::vector<Agent> out;
  const auto* r = row(i);
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t x = r[w];
    while (x) {
      out.push_back(static_cast<Agent>(w * 64 + static_cast<std::size_t>(std::countr_zero(x))));
      x &= x - 1;
    }
  }
  return out;
}

std::vector<Link> Network::links() const {
  std::vector<Link> out;
  for (Agent i = 0; i < n_; ++i)
    for (Agent j : neighbors(i))
      if (j > i) out.emplace_back(i, j);
  return out;
}

std::vector<Link> Network::minus(const Network& other) const {
  if (other.n_ != n_) throw ArgumentError("network size mismatch");
  std::vector<Link> out;
  for (const auto& l : links())
    if (!other.has(l.i, l.j)) out.push_back(l);
  return out;
}

bool Network::subset_of(const Network& other) const {
  if (other.n_ != n_) throw ArgumentError("network size mismatch");
  for (std::size_t k = 0; k < bits_.size(); ++k)
    if (bits_[k] & ~other.bits_[k]) return false;
  return true;
}

BfsLayers bfs_layers(const Network& g, Agent source) {
  const std::size_t n = g.size();
  if (source >= n) throw ArgumentError("distances: agent index out of range");
  const std::size_t words = g.words();
  BfsLayers out;
  std::vector<std::uint64_t> visited(words, 0), frontier(words, 0), next(words, 0);
  frontier[source >> 6] |= std::uint64_t{1} << (source & 63);
  visited = frontier;
  while (true) {
    out.layers.push_back(frontier);
    std::fill(next.begin(), next.end(), 0);
    bool any = false;
    for_each_bit(frontier, [&](Agent v) {
      const auto* r = g.row(v);
      for (std::size_t w = 0; w < words; ++w) next[w] |= r[w];
    });
    for (std::size_t w = 0; w < words; ++w) {
      next[w] &= ~visited[w];
      visited[w] |= next[w];
      any = any || next[w] != 0;
    }
    if (!any) break;
    frontier.swap(next);
  }
  out.unreached.assign(words, 0);
  for (std::size_t w = 0; w < words; ++w) out.unreached[w] = ~visited[w];
  if (n % 64 != 0) out.unreached[words - 1] &= (std::uint64_t{1} << (n % 64)) - 1;
  return out;
}

std::vector<std::uint32_t> distances(const Network& g, Agent i) {
  auto bfs = bfs_layers(g, i);
  std::vector<std::uint32_t> d(g.size(), kUnreachable);
  for (std::size_t k = 0; k < bfs.layers.size(); ++k)
    for_each_bit(bfs.layers[k], [&](Agent v) { d[v] = static_cast<std::uint32_t>(k); });
  return d;
}

std::vector<Agent> component_of(const Network& g, Agent i) {
  auto bfs = bfs_layers(g, i);
  std::vector<Agent> out;
  for (const auto& layer : bfs.layers) for_each_bit(layer, [&](Agent v) { out.push_back(v); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Agent>> components(const Network& g) {
  std::vector<std::vector<Agent>> out;
  std::vector<bool> seen(g.size(), false);
  for (Agent i = 0; i < g.size(); ++i) {
    if (seen[i] || g.degree(i) == 0) continue;
    auto comp = component_of(g, i);
    for (Agent v : comp) seen[v] = true;
    out.push_back(std::move(comp));
  }
  return out;
}

NetworkClass classify(const Network& g) {
  NetworkClass c;
  const auto comps = components(g);
  const std::size_t m = g.link_count();
  c.empty = m == 0;
  c.connected = comps.size() == 1 && comps.front().size() == g.size();
  // Every link is a bridge exactly when each component is a tree.
  std::size_t members = 0;
  for (const auto& comp : comps) members += comp.size();
  c.minimal = m + comps.size() == members;
  c.minimally_connected = c.connected && c.minimal;
  return c;
}

NetworkStats stats(const Network& g) {
  NetworkStats s;
  const std::size_t n = g.size();
  const std::size_t words = g.words();
  s.links = g.link_count();
  if (n == 0) return s;

  std::vector<std::uint64_t> tri(n, 0);
  double local_sum = 0.0;
  std::size_t deg2 = 0;
  std::uint64_t triads = 0;
  std::uint64_t closed2 = 0;  // each triangle counted twice per vertex
  for (Agent v = 0; v < n; ++v) {
    const auto nb = g.neighbors(v);
    const std::uint64_t d = nb.size();
    if (d < 2) continue;
    std::uint64_t t = 0;
    const auto* rv = g.row(v);
    for (Agent u : nb) {
      const auto* ru = g.row(u);
      for (std::size_t w = 0; w < words; ++w) t += static_cast<std::uint64_t>(std::popcount(rv[w] & ru[w]));
    }
    closed2 += t;
    const std::uint64_t pairs = d * (d - 1) / 2;
    triads += pairs;
    local_sum += static_cast<double>(t / 2) / static_cast<double>(pairs);
    ++deg2;
  }
  s.alcc = local_sum / static_cast<double>(n);
  s.alcc_deg2 = deg2 ? local_sum / static_cast<double>(deg2) : 0.0;
  const std::uint64_t triangles = closed2 / 6;
  const std::uint64_t open = triads - 3 * triangles;
  s.gcc = triangles + open ? static_cast<double>(triangles) / static_cast<double>(triangles + open) : 0.0;
  s.transitivity = triads ? 3.0 * static_cast<double>(triangles) / static_cast<double>(triads) : 0.0;

  const auto comps = components(g);
  std::vector<bool> in_largest(n, false);
  const std::vector<Agent>* largest = nullptr;
  for (const auto& comp : comps)
    if (!largest || comp.size() > largest->size()) largest = &comp;
  if (largest) {
    s.largest_component = largest->size();
    for (Agent v : *largest) in_largest[v] = true;
  } else {
    s.largest_component = 1;
  }

  // histogram[d] counts ordered pairs at finite distance d >= 1
  std::vector<std::uint64_t> histogram;
  for (Agent v = 0; v < n; ++v) {
    if (g.degree(v) == 0) continue;
    const auto bfs = bfs_layers(g, v);
    if (histogram.size() < bfs.layers.size()) histogram.resize(bfs.layers.size(), 0);
    for (std::size_t k = 1; k < bfs.layers.size(); ++k)
      for (auto w : bfs.layers[k]) histogram[k] += static_cast<std::uint64_t>(std::popcount(w));
    if (in_largest[v]) s.diameter = std::max<std::uint32_t>(s.diameter, static_cast<std::uint32_t>(bfs.layers.size() - 1));
  }
  std::uint64_t total = 0;
  for (auto& h : histogram) {
    h /= 2;
    total += h;
  }
  if (total > 0) {
    // Linear interpolation between order statistics of the sorted distances.
    const double pos = 0.9 * static_cast<double>(total - 1);
    const auto lo_rank = static_cast<std::uint64_t>(pos);
    const double frac = pos - static_cast<double>(lo_rank);
    auto value_at = [&](std::uint64_t rank) {
      std::uint64_t seen = 0;
      for (std::size_t d = 1; d < histogram.size(); ++d) {
        seen += histogram[d];
        if (rank < seen) return static_cast<double>(d);
      }
      return static_cast<double>(histogram.size() - 1);
    };
    const double lo = value_at(lo_rank);
    const double hi = lo_rank + 1 < total ? value_at(lo_rank + 1) : lo;
    s.p90_distance = lo + frac * (hi - lo);
  }
  return s;
}

Network canonical_form(const Network& g, std::span<const int> colors) {
  const std::size_t n = g.size();
  if (n > 8) throw SizeError("canonical_form: at most 8 agents");
  if (colors.size() != n) throw ArgumentError("canonical_form: color count mismatch");
  // Order agents by color so that permutations within blocks preserve colors.
  std::vector<Agent> slots(n);
  std::iota(slots.begin(), slots.end(), 0);
  std::stable_sort(slots.begin(), slots.end(), [&](Agent a, Agent b) { return colors[a] < colors[b]; });
  std::vector<std::size_t> block_start;
  for (std::size_t k = 0; k < n; ++k)
    if (k == 0 || colors[slots[k]] != colors[slots[k - 1]]) block_start.push_back(k);
  block_start.push_back(n);

  std::vector<Agent> perm = slots;  // perm[k] = original agent placed at position k
  std::uint64_t best = ~std::uint64_t{0};
  std::vector<Agent> best_perm = perm;
  std::vector<Agent> pos(n);

  auto evaluate = [&] {
    for (std::size_t k = 0; k < n; ++k) pos[perm[k]] = static_cast<Agent>(k);
    std::uint64_t m = 0;
    for (const auto& l : g.links()) m |= std::uint64_t{1} << pair_index(pos[l.i], pos[l.j], n);
    if (m < best) {
      best = m;
      best_perm = perm;
    }
  };
  // Odometer over per-block permutations.
  std::function<void(std::size_t)> recurse = [&](std::size_t b) {
    if (b + 1 == block_start.size()) {
      evaluate();
      return;
    }
    auto first = perm.begin() + static_cast<std::ptrdiff_t>(block_start[b]);
    auto last = perm.begin() + static_cast<std::ptrdiff_t>(block_start[b + 1]);
    std::sort(first, last);
    do {
      recurse(b + 1);
    } while (std::next_permutation(first, last));
  };
  recurse(0);
  return Network::from_mask(n, best);
}

Network canonical_form(const Network& g) {
  std::vector<int> colors(g.size(), 0);
  return canonical_form(g, colors);
}

Network read_edge_list(std::istream& in, std::size_t n_hint) {
  std::vector<Link> links;
  std::size_t n = n_hint;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      // "# agents: N" declares isolated trailing agents.
      std::istringstream comment(line.substr(hash + 1));
      std::string key;
      std::size_t declared = 0;
      if (comment >> key && key == "agents:" && comment >> declared) n = std::max(n, declared);
      line.erase(hash);
    }
    std::istringstream ls(line);
    long long a = 0, b = 0;
    if (!(ls >> a)) continue;
    std::string rest;
    if (!(ls >> b) || (ls >> rest) || a < 0 || b < 0)
      throw ConfigError("edge list line " + std::to_string(lineno) + ": expected two nonnegative indices");
    if (a == b) throw ConfigError("edge list line " + std::to_string(lineno) + ": self-loop");
    links.emplace_back(static_cast<Agent>(a), static_cast<Agent>(b));
    n = std::max<std::size_t>(n, static_cast<std::size_t>(std::max(a, b)) + 1);
  }
  return Network::from_links(n, links);
}

void write_edge_list(std::ostream& out, const Network& g) {
  out << "# agents: " << g.size() << '\n';
  for (const auto& l : g.links()) out << l.i << ' ' << l.j << '\n';
}

std::string to_string(const Network& g) {
  std::string s = "{";
  bool first = true;
  for (const auto& l : g.links()) {
    if (!first) s += ',';
    s += std::to_string(l.i) + "-" + std::to_string(l.j);
    first = false;
  }
  return s + "}";
}

}  // namespace netform
