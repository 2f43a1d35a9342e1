#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "netform/game.hpp"
#include "netform/payoff.hpp"

namespace netform::cli {

// A parsed run configuration. Fields not used by a mode are ignored.
struct RunConfig {
  nlohmann::json raw;
  std::size_t n = 0;
  TypeVector types;
  PayoffModel model = PayoffModel::connections({{1.0}, 1.0, 0.5});
  std::optional<PayoffParams> params;  // set for the connections model
  std::vector<std::size_t> type_counts;
  double gamma = 0.9;
  std::uint32_t K = 1;
  std::uint32_t J = 1;
  double epsilon = 0.0;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> horizon;
  Network initial;
  std::optional<Network> target;  // resolved target network for foresighted runs
  std::vector<DeviationInjection> deviations;
  bool stop_when_converged = false;
  std::vector<double> prior;
  bool record_trace = true;
};

// Parses JSON text; errors carry the line of the offending key.
RunConfig parse_config(const std::string& text, const std::string& source);
RunConfig load_config(const std::string& path);

// "a..b" or a single integer.
std::vector<std::uint64_t> parse_seed_range(const std::string& s);

Network parse_links(const nlohmann::json& j, std::size_t n);

}  // namespace netform::cli
