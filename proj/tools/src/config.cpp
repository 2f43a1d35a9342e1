#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "netform/efficiency.hpp"
#include "netform/error.hpp"

namespace netform::cli {

using nlohmann::json;

namespace {

std::size_t line_of_key(const std::string& text, const std::string& key) {
  const auto pos = text.find('"' + key + '"');
  if (pos == std::string::npos) return 0;
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

class Reader {
public:
  Reader(const json& root, const std::string& text, const std::string& source)
      : root_(root), text_(text), source_(source) {}

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    const auto line = line_of_key(text_, key);
    std::ostringstream os;
    os << source_;
    if (line) os << ':' << line;
    os << ": " << key << ": " << what;
    throw ConfigError(os.str());
  }

  template <class T>
  T get(const json& obj, const std::string& key) const {
    try {
      return obj.at(key).get<T>();
    } catch (const json::out_of_range&) {
      fail(key, "missing required field");
    } catch (const json::type_error& e) {
      fail(key, std::string("wrong type (") + e.what() + ")");
    }
  }

  template <class T>
  std::optional<T> opt(const json& obj, const std::string& key) const {
    if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
    return get<T>(obj, key);
  }

  Network links(const json& obj, const std::string& key, std::size_t n) const {
    try {
      return parse_links(obj.at(key), n);
    } catch (const Error& e) {
      fail(key, e.what());
    }
  }

private:
  const json& root_;
  const std::string& text_;
  const std::string& source_;
};

}  // namespace

Network parse_links(const json& j, std::size_t n) {
  if (!j.is_array()) throw ConfigError("expected an array of [i, j] pairs");
  Network g(n);
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
      throw ConfigError("each link must be a pair of agent indices");
    const auto a = e[0].get<std::size_t>(), b = e[1].get<std::size_t>();
    if (a >= n || b >= n || a == b) throw ConfigError("link endpoint out of range or self-loop");
    g.add(static_cast<Agent>(a), static_cast<Agent>(b));
  }
  return g;
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": " + e.what());
  }
  if (!root.is_object()) throw ConfigError(source + ": top level must be an object");
  const Reader rd(root, text, source);
  RunConfig cfg;
  cfg.raw = root;
  cfg.n = rd.get<std::size_t>(root, "agents");
  if (cfg.n < 2) rd.fail("agents", "at least two agents are required");

  if (auto counts = rd.opt<std::vector<std::size_t>>(root, "type_counts")) {
    std::size_t total = 0;
    for (auto c : *counts) total += c;
    if (total != cfg.n) rd.fail("type_counts", "counts must sum to agents");
    cfg.type_counts = *counts;
    cfg.types = TypeVector::from_counts(*counts);
  } else if (auto ty = rd.opt<std::vector<int>>(root, "types")) {
    if (ty->size() != cfg.n) rd.fail("types", "one type per agent is required");
    cfg.types.types = *ty;
    cfg.types.type_count = 1 + *std::max_element(ty->begin(), ty->end());
    try {
      cfg.types.validate();
    } catch (const Error& e) {
      rd.fail("types", e.what());
    }
    cfg.type_counts.assign(static_cast<std::size_t>(cfg.types.type_count), 0);
    for (int t : *ty) ++cfg.type_counts[static_cast<std::size_t>(t)];
  } else {
    cfg.types = TypeVector::homogeneous(cfg.n);
    cfg.type_counts = {cfg.n};
  }

  const auto payoff = rd.get<json>(root, "payoff");
  const auto kind = payoff.value("model", std::string("connections"));
  if (kind == "connections") {
    PayoffParams p;
    p.f = rd.get<std::vector<double>>(payoff, "f");
    p.c = rd.get<double>(payoff, "c");
    p.delta = rd.get<double>(payoff, "delta");
    try {
      p.validate();
    } catch (const Error& e) {
      rd.fail("payoff", e.what());
    }
    if (static_cast<int>(p.f.size()) < cfg.types.type_count) rd.fail("f", "one benefit per type is required");
    cfg.params = p;
    cfg.model = PayoffModel::connections(p);
  } else if (kind == "example1") {
    if (cfg.n != 3) rd.fail("model", "example1 is defined for three agents");
    cfg.model = PayoffModel::table(example1_table(payoff.value("v", 1.0)));
  } else {
    rd.fail("model", "unknown payoff model '" + kind + "'");
  }

  cfg.gamma = rd.opt<double>(root, "gamma").value_or(cfg.gamma);
  if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0)) rd.fail("gamma", "must lie in (0,1)");
  cfg.K = rd.opt<std::uint32_t>(root, "K").value_or(cfg.K);
  if (cfg.K == 0) rd.fail("K", "must be positive");
  cfg.J = rd.opt<std::uint32_t>(root, "J").value_or(cfg.J);
  if (cfg.J == 0) rd.fail("J", "must be positive");
  cfg.epsilon = rd.opt<double>(root, "epsilon").value_or(0.0);
  if (!(cfg.epsilon >= 0.0 && cfg.epsilon < 1.0)) rd.fail("epsilon", "must lie in [0,1)");
  cfg.seed = rd.opt<std::uint64_t>(root, "seed");
  cfg.horizon = rd.opt<std::uint64_t>(root, "horizon");
  cfg.stop_when_converged = rd.opt<bool>(root, "stop_when_converged").value_or(false);
  cfg.record_trace = rd.opt<bool>(root, "record_trace").value_or(true);
  cfg.initial = root.contains("initial_network") ? rd.links(root, "initial_network", cfg.n) : Network(cfg.n);

  if (root.contains("target")) {
    const auto& t = root.at("target");
    if (t.is_string()) {
      const auto s = t.get<std::string>();
      if (s == "complete") cfg.target = Network::complete(cfg.n);
      else if (s == "empty") cfg.target = Network(cfg.n);
      else if (s == "efficient") {
        if (!cfg.params) rd.fail("target", "an efficient target needs the connections model");
        cfg.target = efficient_core_periphery(cfg.types, *cfg.params).network;
      } else {
        rd.fail("target", "unknown target '" + s + "'");
      }
    } else {
      cfg.target = rd.links(root, "target", cfg.n);
    }
  }

  if (root.contains("deviations")) {
    const auto list = rd.get<json>(root, "deviations");
    if (!list.is_array()) rd.fail("deviations", "expected an array");
    for (const auto& d : list) {
      DeviationInjection inj;
      inj.t = rd.get<std::uint64_t>(d, "t");
      inj.agent = rd.get<Agent>(d, "agent");
      inj.partner = rd.opt<Agent>(d, "partner");
      inj.consent = rd.opt<bool>(d, "consent").value_or(false);
      if (inj.agent >= cfg.n || (inj.partner && *inj.partner >= cfg.n)) rd.fail("deviations", "agent out of range");
      cfg.deviations.push_back(inj);
    }
  }
  cfg.prior = rd.opt<std::vector<double>>(root, "prior").value_or(std::vector<double>{});
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::vector<std::uint64_t> parse_seed_range(const std::string& s) {
  auto num = [&](const std::string& x) {
    if (x.empty() || x.find_first_not_of("0123456789") != std::string::npos)
      throw ConfigError("bad seed range '" + s + "'");
    return std::stoull(x);
  };
  const auto dots = s.find("..");
  if (dots == std::string::npos) return {num(s)};
  const auto a = num(s.substr(0, dots)), b = num(s.substr(dots + 2));
  if (b < a) throw ConfigError("seed range end precedes start");
  std::vector<std::uint64_t> out;
  for (auto x = a; x <= b; ++x) out.push_back(x);
  return out;
}

}  // namespace netform::cli
