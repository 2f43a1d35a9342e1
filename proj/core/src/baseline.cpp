#include "netform/baseline.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "netform/error.hpp"
#include "netform/game.hpp"
#include "netform/rng.hpp"

namespace netform {

void MyopicConfig::validate() const {
  if (n < 2) throw ConfigError("myopic run needs at least two agents");
  params.validate();
  std::size_t total = 0;
  for (auto c : type_counts) total += c;
  if (total != n) throw ConfigError("type counts must sum to n");
  if (type_counts.size() != params.f.size()) throw ConfigError("one benefit value per type is required");
  if (horizon != 0 && horizon < n * (n - 1)) throw ConfigError("horizon must be at least n(n-1)");
}

std::uint64_t MyopicConfig::effective_horizon() const { return horizon == 0 ? n * (n - 1) : horizon; }

TypeVector MyopicConfig::types() const { return TypeVector::from_counts(type_counts); }

namespace {

using Bits = std::vector<std::uint64_t>;

class MarginalEngine {
public:
  MarginalEngine(const TypeVector& types, const PayoffParams& params, std::size_t n, std::size_t words)
      : params_(params), n_(n), words_(words), type_masks_(params.f.size(), Bits(words, 0)) {
    for (Agent a = 0; a < n; ++a) type_masks_[types[a]][a / 64] |= std::uint64_t{1} << (a % 64);
  }

  // g must already lack the link ij.
  LinkMarginals compute(const Network& g, Agent i, Agent j) {
    layers(g, i, li_);
    layers(g, j, lj_);
    return {gain(li_, lj_), gain(lj_, li_)};
  }

private:
  void layers(const Network& g, Agent s, std::vector<Bits>& out) {
    out.clear();
    Bits visited(words_, 0), frontier(words_, 0);
    frontier[s / 64] |= std::uint64_t{1} << (s % 64);
    visited = frontier;
    std::size_t seen = 1, fsize = 1;
    while (fsize) {
      out.push_back(frontier);
      Bits next(words_, 0);
      if (fsize <= n_ - seen) {
        for (std::size_t w = 0; w < words_; ++w)
          for (std::uint64_t b = frontier[w]; b; b &= b - 1) {
            const auto* r = g.row(static_cast<Agent>(w * 64 + std::countr_zero(b)));
            for (std::size_t k = 0; k < words_; ++k) next[k] |= r[k];
          }
        for (std::size_t k = 0; k < words_; ++k) next[k] &= ~visited[k];
      } else {
        for (Agent u = 0; u < n_; ++u) {
          if ((visited[u / 64] >> (u % 64)) & 1U) continue;
          const auto* r = g.row(u);
          for (std::size_t k = 0; k < words_; ++k)
            if (r[k] & frontier[k]) {
              next[u / 64] |= std::uint64_t{1} << (u % 64);
              break;
            }
        }
      }
      fsize = 0;
      for (std::size_t k = 0; k < words_; ++k) {
        visited[k] |= next[k];
        fsize += static_cast<std::size_t>(std::popcount(next[k]));
      }
      seen += fsize;
      frontier.swap(next);
    }
  }

  double value_of(const Bits& set, double weight) const {
    double v = 0.0;
    for (std::size_t t = 0; t < type_masks_.size(); ++t) {
      std::size_t cnt = 0;
      for (std::size_t k = 0; k < words_; ++k) cnt += static_cast<std::size_t>(std::popcount(set[k] & type_masks_[t][k]));
      v += weight * params_.f[t] * static_cast<double>(cnt);
    }
    return v;
  }

  // Value to the owner of `own` of adding the link to the owner of `other`, minus its cost.
  double gain(const std::vector<Bits>& own, const std::vector<Bits>& other) const {
    double before = 0.0, after = 0.0, w = 1.0;
    for (std::size_t d = 1; d < own.size(); ++d, w *= params_.delta) before += value_of(own[d], w);
    // With the link, distance d is reached through own layer d or other layer d-1.
    Bits reached = own[0], layer(words_);
    w = 1.0;
    const std::size_t depth = std::max(own.size(), other.size() + 1);
    for (std::size_t d = 1; d < depth; ++d, w *= params_.delta) {
      bool any = false;
      for (std::size_t k = 0; k < words_; ++k) {
        std::uint64_t x = 0;
        if (d < own.size()) x |= own[d][k];
        if (d - 1 < other.size()) x |= other[d - 1][k];
        x &= ~reached[k];
        layer[k] = x;
        reached[k] |= x;
        any = any || x;
      }
      if (any) after += value_of(layer, w);
    }
    return after - before - params_.c;
  }

  const PayoffParams& params_;
  std::size_t n_;
  std::size_t words_;
  std::vector<Bits> type_masks_;
  std::vector<Bits> li_, lj_;
};

bool keeps(const LinkMarginals& m) { return m.to_i >= 0.0 && m.to_j >= 0.0 && (m.to_i > 0.0 || m.to_j > 0.0); }

}  // namespace

LinkMarginals link_marginals(const Network& g, const TypeVector& types, const PayoffParams& params, Link ij) {
  if (types.size() != g.size()) throw ArgumentError("type vector size does not match network");
  Network h = g;
  h.remove(ij);
  MarginalEngine eng(types, params, g.size(), g.words());
  return eng.compute(h, ij.i, ij.j);
}

Network myopic_step(const Network& g, const TypeVector& types, const PayoffParams& params, Link ij) {
  Network h = g;
  h.set(ij.i, ij.j, keeps(link_marginals(g, types, params, ij)));
  return h;
}

MyopicResult myopic_run(const MyopicConfig& config) {
  config.validate();
  const auto types = config.types();
  Network g(config.n);
  MarginalEngine eng(types, config.params, config.n, g.words());
  Rng rng(config.seed);
  MyopicResult res;
  const auto horizon = config.effective_horizon();
  for (std::uint64_t t = 0; t < horizon; ++t) {
    const Link ij = select_pair(rng, config.n);
    const bool had = g.has(ij);
    if (had) g.remove(ij);
    const bool keep = keeps(eng.compute(g, ij.i, ij.j));
    if (keep) g.add(ij);
    if (keep && !had) ++res.formed;
    if (!keep && had) ++res.severed;
  }
  res.stats = stats(g);
  res.network = std::move(g);
  return res;
}

MeanStderr mean_stderr(const std::vector<double>& xs) {
  MeanStderr r;
  if (xs.empty()) return r;
  for (double x : xs) r.mean += x;
  r.mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return r;
  double ss = 0.0;
  for (double x : xs) ss += (x - r.mean) * (x - r.mean);
  r.stderr_ = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  return r;
}

}  // namespace netform
