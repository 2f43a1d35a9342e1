#include "report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "netform/error.hpp"

namespace netform::cli {

double r6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return std::strtod(buf, nullptr);
}

nlohmann::json links_json(const Network& g) {
  auto out = nlohmann::json::array();
  for (const auto& l : g.links()) out.push_back({l.i, l.j});
  return out;
}

nlohmann::json stats_json(const NetworkStats& s) {
  return {{"alcc", r6(s.alcc)},
          {"alcc_degree2", r6(s.alcc_deg2)},
          {"gcc", r6(s.gcc)},
          {"transitivity", r6(s.transitivity)},
          {"diameter", s.diameter},
          {"p90_distance", r6(s.p90_distance)},
          {"largest_component", s.largest_component},
          {"links", s.links}};
}

nlohmann::json manifest(const std::string& command, const nlohmann::json& config, const nlohmann::json& seeds,
                        const std::vector<std::string>& outputs) {
  return {{"command", command}, {"config", config}, {"seeds", seeds}, {"version", kToolVersion}, {"outputs", outputs}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

}  // namespace netform::cli
