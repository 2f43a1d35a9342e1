#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace netform {

using Agent = std::uint32_t;

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

struct Link {
  Agent i = 0;
  Agent j = 0;

  Link() = default;
  Link(Agent a, Agent b) : i(a < b ? a : b), j(a < b ? b : a) {}

  bool contains(Agent a) const { return a == i || a == j; }
  Agent other(Agent a) const { return a == i ? j : i; }
  friend bool operator==(const Link&, const Link&) = default;
  friend auto operator<=>(const Link&, const Link&) = default;
};

std::size_t pair_count(std::size_t n);
// Pairs are numbered (0,1),(0,2),...,(0,n-1),(1,2),...
std::size_t pair_index(Agent i, Agent j, std::size_t n);
Link pair_at(std::size_t index, std::size_t n);

// Undirected simple graph stored as adjacency bit rows.
class Network {
public:
  Network() = default;
  explicit Network(std::size_t n);

  static Network from_links(std::size_t n, std::span<const Link> links);
  static Network complete(std::size_t n);
  // Bit k of mask is pair_at(k, n). Requires pair_count(n) <= 64.
  static Network from_mask(std::size_t n, std::uint64_t mask);

  std::size_t size() const { return n_; }
  std::size_t words() const { return words_; }
  std::size_t link_count() const;

  bool has(Agent i, Agent j) const;
  void add(Agent i, Agent j);
  void remove(Agent i, Agent j);
  void set(Agent i, Agent j, bool present);
  void add(Link l) { add(l.i, l.j); }
  void remove(Link l) { remove(l.i, l.j); }
  bool has(Link l) const { return has(l.i, l.j); }

  std::size_t degree(Agent i) const;
  std::vector<Agent> neighbors(Agent i) const;
  std::vector<Link> links() const;
  std::uint64_t mask() const;
  bool empty() const { return link_count() == 0; }

  const std::uint64_t* row(Agent i) const { return bits_.data() + static_cast<std::size_t>(i) * words_; }

  // Links of this network not present in other.
  std::vector<Link> minus(const Network& other) const;
  bool subset_of(const Network& other) const;

  friend bool operator==(const Network&, const Network&) = default;

private:
  void check(Agent i, Agent j) const;
  std::uint64_t* row_mut(Agent i) { return bits_.data() + static_cast<std::size_t>(i) * words_; }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Breadth-first layers from a source: layers[d] holds the agents at distance d.
struct BfsLayers {
  std::vector<std::vector<std::uint64_t>> layers;
  std::vector<std::uint64_t> unreached;
};

BfsLayers bfs_layers(const Network& g, Agent source);

std::vector<std::uint32_t> distances(const Network& g, Agent i);

// Maximal connected sets of non-singleton agents, ordered by smallest member.
std::vector<std::vector<Agent>> components(const Network& g);

// The component containing i, including i itself when i is a singleton.
std::vector<Agent> component_of(const Network& g, Agent i);

struct NetworkClass {
  bool empty = false;
  bool connected = false;
  bool minimal = false;
  bool minimally_connected = false;
};

NetworkClass classify(const Network& g);

struct NetworkStats {
  double alcc = 0.0;       // mean local clustering, degree < 2 counted as 0
  double alcc_deg2 = 0.0;  // mean over agents of degree >= 2 only
  double gcc = 0.0;        // triangles / (triangles + open triads)
  double transitivity = 0.0;
  std::uint32_t diameter = 0;
  double p90_distance = 0.0;
  std::size_t largest_component = 0;
  std::size_t links = 0;
};

NetworkStats stats(const Network& g);

// Relabel to the lexicographically smallest pair mask over permutations that
// keep every agent inside its color class. Requires size() <= 8.
Network canonical_form(const Network& g, std::span<const int> colors);
Network canonical_form(const Network& g);

Network read_edge_list(std::istream& in, std::size_t n_hint = 0);
void write_edge_list(std::ostream& out, const Network& g);
std::string to_string(const Network& g);

}  // namespace netform
