#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "netform/graph.hpp"

namespace netform::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Summaries carry 6 significant digits.
double r6(double x);

nlohmann::json links_json(const Network& g);
nlohmann::json stats_json(const NetworkStats& s);
nlohmann::json manifest(const std::string& command, const nlohmann::json& config, const nlohmann::json& seeds,
                        const std::vector<std::string>& outputs);

void write_text(const std::string& path, const std::string& text);

}  // namespace netform::cli
