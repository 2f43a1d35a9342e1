#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "netform/graph.hpp"
#include "netform/payoff.hpp"

namespace netform {

struct MyopicConfig {
  std::size_t n = 0;
  PayoffParams params;
  std::vector<std::size_t> type_counts;
  std::uint64_t horizon = 0;  // 0 selects n(n-1)
  std::uint64_t seed = 0;

  void validate() const;
  std::uint64_t effective_horizon() const;
  TypeVector types() const;
};

// Marginal one-period payoff to each endpoint from link ij, holding the rest of g fixed.
struct LinkMarginals {
  double to_i = 0.0;
  double to_j = 0.0;
};

LinkMarginals link_marginals(const Network& g, const TypeVector& types, const PayoffParams& params, Link ij);

// Keep or form ij iff both marginals are >= 0 and one is > 0; nothing else changes.
Network myopic_step(const Network& g, const TypeVector& types, const PayoffParams& params, Link ij);

struct MyopicResult {
  Network network;
  NetworkStats stats;
  std::uint64_t formed = 0;
  std::uint64_t severed = 0;
};

MyopicResult myopic_run(const MyopicConfig& config);

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

MeanStderr mean_stderr(const std::vector<double>& xs);

}  // namespace netform
