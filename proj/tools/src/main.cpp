#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "config.hpp"
#include "netform/baseline.hpp"
#include "netform/efficiency.hpp"
#include "netform/equilibrium.hpp"
#include "netform/error.hpp"
#include "report.hpp"

using nlohmann::json;
namespace fs = std::filesystem;
using namespace netform;
using namespace netform::cli;

namespace {

std::size_t thread_cap() {
  std::size_t cap = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NETFORM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) cap = static_cast<std::size_t>(v);
  }
  return cap;
}

// Runs job(k) for k in [0, count) over a small pool; results are indexed, so order is fixed.
template <class Job>
void parallel_for(std::size_t count, Job job) {
  const std::size_t workers = std::min(thread_cap(), count);
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) job(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t k; (k = next++) < count;) {
        try {
          job(k);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

struct Output {
  std::string dir;
  std::vector<std::string> files;

  std::string path(const std::string& name) {
    files.push_back(name);
    return (fs::path(dir) / name).string();
  }
};

void emit(const json& summary, Output& out, const std::string& command, const json& config, const json& seeds,
          double seconds) {
  json doc = summary;
  if (!out.dir.empty()) {
    const auto summary_path = out.path("summary.json");
    doc["manifest"] = manifest(command, config, seeds, out.files);
    write_text(summary_path, doc.dump(2) + "\n");
    // Wall-clock lives in a sidecar so the primary outputs reproduce byte for byte.
    write_text((fs::path(out.dir) / "timing.json").string(), json{{"wall_clock_seconds", seconds}}.dump(2) + "\n");
  } else {
    doc["manifest"] = manifest(command, config, seeds, out.files);
  }
  std::cout << doc.dump(2) << "\n";
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ArgumentError("bad number '" + tok + "' in list '" + s + "'");
    }
  }
  return out;
}

std::vector<std::size_t> parse_counts(const std::string& s) {
  std::vector<std::size_t> out;
  for (double x : parse_list(s)) {
    if (x < 0 || x != static_cast<double>(static_cast<std::size_t>(x))) throw ArgumentError("counts must be whole numbers");
    out.push_back(static_cast<std::size_t>(x));
  }
  return out;
}

json partition_json(const Partition& p) {
  return {{"core", p.core}, {"periphery1", p.periphery1}, {"periphery2", p.periphery2}, {"singletons", p.singletons}};
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string mode;
  std::string config;
  std::string seeds;
  std::string out;
  std::optional<std::uint64_t> horizon;
  std::optional<double> epsilon;
};

json foresighted_summary(const SimTrace& tr, std::uint64_t seed) {
  json j{{"seed", seed},
         {"converged", tr.converged},
         {"periods", tr.periods},
         {"occupancy", r6(tr.occupancy)},
         {"final_links", links_json(tr.final_network)}};
  j["convergence_period"] = tr.convergence_period ? json(*tr.convergence_period) : json(nullptr);
  return j;
}

int cmd_simulate(const SimulateArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  auto cfg = load_config(a.config);
  if (a.horizon) cfg.horizon = a.horizon;
  if (a.epsilon) cfg.epsilon = *a.epsilon;
  std::vector<std::uint64_t> seeds;
  if (!a.seeds.empty()) seeds = parse_seed_range(a.seeds);
  else if (cfg.seed) seeds = {*cfg.seed};
  else throw ConfigError(a.config + ": seed: missing (set \"seed\" or pass --seeds)");

  Output out{a.out, {}};
  if (!out.dir.empty()) fs::create_directories(out.dir);
  json snapshot = cfg.raw;
  if (a.horizon) snapshot["horizon"] = *a.horizon;
  if (a.epsilon) snapshot["epsilon"] = *a.epsilon;
  json runs = json::array();
  std::vector<json> per(seeds.size());

  if (a.mode == "myopic") {
    if (!cfg.params) throw ConfigError(a.config + ": payoff: myopic runs need the connections model");
    std::vector<NetworkStats> st(seeds.size());
    parallel_for(seeds.size(), [&](std::size_t k) {
      MyopicConfig mc;
      mc.n = cfg.n;
      mc.params = *cfg.params;
      mc.type_counts = cfg.type_counts;
      mc.horizon = cfg.horizon.value_or(0);
      mc.seed = seeds[k];
      const auto r = myopic_run(mc);
      st[k] = r.stats;
      per[k] = {{"seed", seeds[k]}, {"stats", stats_json(r.stats)}, {"formed", r.formed}, {"severed", r.severed}};
      if (!out.dir.empty()) {
        std::ostringstream os;
        write_edge_list(os, r.network);
        write_text((fs::path(out.dir) / ("network_" + std::to_string(seeds[k]) + ".edges")).string(), os.str());
      }
    });
    if (!out.dir.empty())
      for (auto s : seeds) out.files.push_back("network_" + std::to_string(s) + ".edges");
    auto agg = [&](auto field) {
      std::vector<double> xs;
      for (const auto& s : st) xs.push_back(static_cast<double>(field(s)));
      const auto m = mean_stderr(xs);
      return json{{"mean", r6(m.mean)}, {"stderr", r6(m.stderr_)}};
    };
    json summary{{"mode", "myopic"}, {"runs", per}};
    summary["aggregate"] = {{"alcc", agg([](auto& s) { return s.alcc; })},
                            {"gcc", agg([](auto& s) { return s.gcc; })},
                            {"diameter", agg([](auto& s) { return s.diameter; })},
                            {"p90_distance", agg([](auto& s) { return s.p90_distance; })}};
    emit(summary, out, "simulate --mode myopic", snapshot, seeds,
         std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return 0;
  }

  if (a.mode != "foresighted" && a.mode != "incomplete") throw ArgumentError("unknown mode '" + a.mode + "'");
  SimConfig base;
  base.n = cfg.n;
  base.gamma = cfg.gamma;
  base.K = cfg.K;
  base.J = cfg.J;
  base.epsilon = cfg.epsilon;
  base.initial_network = cfg.initial;
  base.horizon = cfg.horizon.value_or(base.horizon);
  base.deviations = cfg.deviations;
  base.stop_when_converged = cfg.stop_when_converged;
  base.record_trace = cfg.record_trace;

  std::unique_ptr<Protocol> proto;
  if (a.mode == "foresighted") {
    if (!cfg.target) throw ConfigError(a.config + ": target: missing (required for foresighted runs)");
    proto = std::make_unique<CooperationProtocol>(*cfg.target, cfg.K);
  } else {
    if (!cfg.params) throw ConfigError(a.config + ": payoff: incomplete-information runs need the connections model");
    auto prior = cfg.prior;
    if (prior.empty()) prior.assign(static_cast<std::size_t>(cfg.types.type_count), 1.0 / cfg.types.type_count);
    proto = std::make_unique<ExperimentationProtocol>(star_wheel_plan(), cfg.types, *cfg.params, prior, cfg.K, cfg.J);
  }

  std::vector<std::string> csv(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t k) {
    SimConfig sc = base;
    sc.seed = seeds[k];
    auto p = proto->clone();
    const auto tr = run(sc, *p);
    per[k] = foresighted_summary(tr, seeds[k]);
    if (auto* ic = dynamic_cast<ExperimentationProtocol*>(p.get())) {
      per[k]["entered_transition"] = ic->entered_transition() ? json(*ic->entered_transition()) : json(nullptr);
      per[k]["types_known_at_transition"] = ic->complete_when_entering_transition();
      per[k]["limit_links"] = links_json(tr.limit);
    }
    if (!out.dir.empty()) {
      std::ostringstream os;
      write_trace_csv(os, tr);
      csv[k] = os.str();
    }
  });
  if (!out.dir.empty())
    for (std::size_t k = 0; k < seeds.size(); ++k)
      write_text(out.path("trace_" + std::to_string(seeds[k]) + ".csv"), csv[k]);
  json summary{{"mode", a.mode}, {"runs", per}};
  summary["converged"] = std::all_of(per.begin(), per.end(), [](const json& r) { return r["converged"].get<bool>(); });
  emit(summary, out, "simulate --mode " + a.mode, snapshot, seeds,
       std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  return 0;
}

// ---------------------------------------------------------------------------

struct EfficientArgs {
  bool two_type = false;
  double f_alpha = 0, f_beta = 0, c = 0, delta = 0;
  std::size_t na = 0, nb = 0;
  std::string f, counts;
  bool brute = false;
  bool with_stats = false;
  std::string edges_out;
};

int cmd_efficient(const EfficientArgs& a) {
  if (a.brute) {
    const std::size_t n = a.two_type ? a.na + a.nb : [&] {
      std::size_t t = 0;
      for (auto c : parse_counts(a.counts)) t += c;
      return t;
    }();
    if (n > kBruteForceMaxAgents)
      throw SizeError("brute-force search supports at most " + std::to_string(kBruteForceMaxAgents) + " agents");
  }
  TypeVector types;
  PayoffParams params;
  EfficientResult res;
  json inputs;
  if (a.two_type) {
    TwoTypeSpec spec{a.f_alpha, a.f_beta, a.na, a.nb, a.c, a.delta};
    spec.validate();
    res = efficient_two_type(spec);
    types = spec.types();
    params = spec.params();
    inputs = {{"f_alpha", a.f_alpha}, {"f_beta", a.f_beta}, {"na", a.na}, {"nb", a.nb}, {"c", a.c}, {"delta", a.delta}};
  } else {
    if (a.f.empty() || a.counts.empty()) throw ArgumentError("pass --two-type or both --f and --counts");
    params = PayoffParams{parse_list(a.f), a.c, a.delta};
    params.validate();
    const auto counts = parse_counts(a.counts);
    if (counts.size() != params.f.size()) throw ArgumentError("--f and --counts must have the same length");
    types = TypeVector::from_counts(counts);
    res = efficient_core_periphery(types, params);
    inputs = {{"f", params.f}, {"counts", counts}, {"c", a.c}, {"delta", a.delta}};
  }
  const auto& g = res.network;
  json summary{{"case", res.case_label},
               {"agents", g.size()},
               {"link_count", g.link_count()},
               {"partition", partition_json(res.partition)},
               {"welfare", r6(total_welfare(PayoffModel::connections(params), types, g))}};
  if (g.size() <= 64) summary["links"] = links_json(g);
  if (a.with_stats) summary["stats"] = stats_json(stats(g));
  if (a.brute) {
    const auto bf = brute_force_efficient(types, PayoffModel::connections(params));
    summary["brute_force"] = {{"max_welfare", r6(bf.max_welfare)},
                              {"closed_form_is_maximizer", contains_canonical(bf, g, types)}};
  }
  Output out;
  if (!a.edges_out.empty()) {
    std::ostringstream os;
    write_edge_list(os, g);
    write_text(a.edges_out, os.str());
    out.files.push_back(a.edges_out);
  }
  summary["manifest"] = manifest("efficient", inputs, nullptr, out.files);
  std::cout << summary.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct ModelArgs {
  bool example1 = false;
  double v = 1.0;
  std::string config;
  std::string f, counts;
  double c = 0, delta = 0;
};

struct Resolved {
  TypeVector types;
  PayoffModel model = PayoffModel::connections({{1.0}, 1.0, 0.5});
  std::optional<Network> target;
  json inputs;
};

Resolved resolve_model(const ModelArgs& a) {
  Resolved r;
  if (a.example1) {
    r.types = TypeVector::homogeneous(3);
    r.model = PayoffModel::table(example1_table(a.v));
    r.target = Network::complete(3);
    r.inputs = {{"example1", true}, {"v", a.v}};
  } else if (!a.config.empty()) {
    auto cfg = load_config(a.config);
    r.types = cfg.types;
    r.model = cfg.model;
    r.target = cfg.target;
    r.inputs = cfg.raw;
  } else {
    if (a.f.empty()) throw ArgumentError("pass --example1, --config, or --f/--counts/--c/--delta");
    PayoffParams p{parse_list(a.f), a.c, a.delta};
    p.validate();
    const auto counts = a.counts.empty() ? std::vector<std::size_t>{} : parse_counts(a.counts);
    if (counts.size() != p.f.size()) throw ArgumentError("--f and --counts must have the same length");
    r.types = TypeVector::from_counts(counts);
    r.model = PayoffModel::connections(p);
    r.inputs = {{"f", p.f}, {"counts", counts}, {"c", p.c}, {"delta", p.delta}};
  }
  return r;
}

int cmd_stability(const ModelArgs& m, const std::string& network_path) {
  auto r = resolve_model(m);
  Network g;
  if (!network_path.empty()) {
    std::ifstream in(network_path);
    if (!in) throw ConfigError("cannot open network file " + network_path);
    g = read_edge_list(in, r.types.size());
  } else if (r.target) {
    g = *r.target;
  } else {
    throw ArgumentError("pass --network or a config with a target");
  }
  if (g.size() != r.types.size()) throw ArgumentError("network size does not match the agent count");
  if (g.size() > kCoreStabilityMaxAgents)
    throw SizeError("core-stability search supports at most " + std::to_string(kCoreStabilityMaxAgents) + " agents");
  const auto block = is_core_stable(g, r.types, r.model);
  json summary{{"core_stable", !block.has_value()}, {"links", links_json(g)}};
  if (block) summary["blocking"] = {{"coalition", block->coalition}, {"deviation", links_json(block->deviation)}};
  else summary["blocking"] = nullptr;
  summary["manifest"] = manifest("stability", r.inputs, nullptr, {});
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_equilibrium(const ModelArgs& m, double gamma, std::uint32_t K, bool threshold) {
  auto r = resolve_model(m);
  if (!r.target) throw ArgumentError("a target network is required");
  if (r.target->size() > kChainMaxAgents)
    throw SizeError("exact certification supports at most " + std::to_string(kChainMaxAgents) + " agents");
  const auto& tgt = *r.target;
  const auto dev = one_shot_deviation_gain(tgt, r.types, r.model, gamma, K);
  json summary{{"equilibrium", dev.gain <= 0.0}, {"gamma", gamma}, {"K", K}, {"max_gain", r6(dev.gain)}};
  if (dev.any_effective && dev.gain > 0.0)
    summary["witness"] = {{"agent", dev.agent}, {"selected", {dev.selected.i, dev.selected.j}}};
  const auto b = bound_components(tgt, r.types, r.model);
  const auto v = theorem1_bound(b, gamma, K);
  summary["bound"] = {{"value", r6(v.value)}, {"certifies", v.certifies}, {"v_bar", r6(b.v_bar)},
                      {"W", r6(b.W)},         {"A", r6(b.A)},             {"t_star", b.t_star}};
  if (threshold) {
    const auto t = threshold_gamma(tgt, r.types, r.model, K);
    summary["threshold"] = {{"outcome", to_string(t.outcome)}, {"gamma_bar", r6(t.gamma_bar)},
                            {"bracket", {r6(t.lo), r6(t.hi)}},  {"verified", t.verified}};
  }
  summary["manifest"] = manifest("equilibrium", r.inputs, nullptr, {});
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_stats(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open edge list " + path);
  const auto g = read_edge_list(in);
  json summary{{"agents", g.size()}, {"stats", stats_json(stats(g))}};
  summary["manifest"] = manifest("stats", {{"file", path}}, nullptr, {});
  std::cout << summary.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"netform: network formation with foresighted agents"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "run the formation process");
  s->add_option("--mode", sim.mode, "foresighted | myopic | incomplete")
      ->required()
      ->check(CLI::IsMember({"foresighted", "myopic", "incomplete"}));
  s->add_option("--config", sim.config, "JSON config")->required();
  s->add_option("--seeds", sim.seeds, "seed or range a..b");
  s->add_option("--out", sim.out, "output directory");
  s->add_option("--horizon", sim.horizon, "override horizon");
  s->add_option("--epsilon", sim.epsilon, "override tremble probability");

  EfficientArgs eff;
  auto* e = app.add_subcommand("efficient", "strongly efficient network");
  e->add_flag("--two-type", eff.two_type);
  e->add_option("--f-alpha", eff.f_alpha);
  e->add_option("--f-beta", eff.f_beta);
  e->add_option("--na", eff.na);
  e->add_option("--nb", eff.nb);
  e->add_option("--f", eff.f, "comma-separated benefits per type");
  e->add_option("--counts", eff.counts, "comma-separated agents per type");
  e->add_option("--c", eff.c)->required();
  e->add_option("--delta", eff.delta)->required();
  e->add_flag("--brute-force", eff.brute, "check against exhaustive search (at most 6 agents)");
  e->add_flag("--stats", eff.with_stats, "include network statistics");
  e->add_option("--edges-out", eff.edges_out, "write the edge list here");

  auto add_model = [](CLI::App* sub, ModelArgs& m) {
    sub->add_flag("--example1", m.example1, "three-agent table model");
    sub->add_option("--v", m.v, "value scale for --example1");
    sub->add_option("--config", m.config);
    sub->add_option("--f", m.f);
    sub->add_option("--counts", m.counts);
    sub->add_option("--c", m.c);
    sub->add_option("--delta", m.delta);
  };

  ModelArgs stab_model;
  std::string network_path;
  auto* st = app.add_subcommand("stability", "core-stability verdict with a blocking witness");
  add_model(st, stab_model);
  st->add_option("--network", network_path, "edge-list file");

  ModelArgs eq_model;
  double gamma = 0.9;
  std::uint32_t K = 1;
  bool threshold = false;
  auto* eq = app.add_subcommand("equilibrium", "exact one-shot-deviation certification");
  add_model(eq, eq_model);
  eq->add_option("--gamma", gamma)->required();
  eq->add_option("--K", K)->required()->check(CLI::PositiveNumber);
  eq->add_flag("--threshold", threshold, "also search for the gamma threshold");

  std::string stats_path;
  auto* sa = app.add_subcommand("stats", "statistics of an edge-list file");
  sa->add_option("file", stats_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return 2;
  }

  try {
    if (*s) return cmd_simulate(sim);
    if (*e) return cmd_efficient(eff);
    if (*st) return cmd_stability(stab_model, network_path);
    if (*eq) return cmd_equilibrium(eq_model, gamma, K, threshold);
    if (*sa) return cmd_stats(stats_path);
  } catch (const SizeError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 3;
  } catch (const ConfigError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const ArgumentError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const DegenerateParameterError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "internal error: " << ex.what() << "\n";
    return 1;
  }
  return 1;
}
