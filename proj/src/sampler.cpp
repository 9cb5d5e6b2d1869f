#include "hfree/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>
#include <utility>
#include <vector>

#include "hfree/errors.hpp"
#include "hfree/partitions.hpp"

namespace hfree {
namespace {

std::vector<Edge> candidate_pairs(int n) {
  std::vector<Edge> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
  return pairs;
}

void check_config(const ChainConfig& cfg) {
  if (cfg.n < 0)
    throw PreconditionError("sampler: host size must be nonnegative");
  const int total = cfg.n * (cfg.n - 1) / 2;
  if (cfg.m < 0 || cfg.m > total)
    throw PreconditionError("sampler: edge count out of range");
  if (cfg.h.edge_count() < 1)
    throw PreconditionError("sampler: pattern graph must have an edge");
}

// One uniform draw of an m-edge graph (partial Fisher-Yates over the pair
// list), accepted iff it avoids the pattern.  Consumes randomness only for
// the subset choice, so an early containment bail-out keeps the stream
// aligned.
std::optional<Graph> try_uniform_draw(Rng& rng, const ChainConfig& cfg,
                                      const std::vector<Edge>& pairs,
                                      std::vector<int>& scratch) {
  const auto total = static_cast<std::uint64_t>(pairs.size());
  scratch.resize(pairs.size());
  std::iota(scratch.begin(), scratch.end(), 0);
  for (int t = 0; t < cfg.m; ++t) {
    const auto j = static_cast<std::size_t>(t) +
                   static_cast<std::size_t>(
                       rng.below(total - static_cast<std::uint64_t>(t)));
    std::swap(scratch[static_cast<std::size_t>(t)], scratch[j]);
  }
  Graph g(cfg.n);
  for (int t = 0; t < cfg.m; ++t) {
    const Edge e = pairs[static_cast<std::size_t>(scratch[static_cast<std::size_t>(t)])];
    g.add_edge(e.u, e.v);
    if (contains_subgraph_through_edge(g, cfg.h, e.u, e.v)) return std::nullopt;
  }
  return g;
}

std::optional<Graph> rejection_with(Rng& rng, const ChainConfig& cfg,
                                    long max_tries,
                                    const std::vector<Edge>& pairs) {
  std::vector<int> scratch;
  for (long t = 0; t < max_tries; ++t) {
    if (auto g = try_uniform_draw(rng, cfg, pairs, scratch)) return g;
  }
  return std::nullopt;
}

// Greedy starting graph: subgraphs of a balanced complete multipartite
// graph with one class fewer than the pattern's chromatic number can never
// contain the pattern, so those edges go in first without any checks; past
// them, remaining pairs are tried in order with a containment check each.
Graph initial_state(const ChainConfig& cfg) {
  Graph g(cfg.n);
  int added = 0;
  const int classes = chromatic_number(cfg.h) - 1;
  if (classes >= 2) {
    for (int u = 0; u < cfg.n && added < cfg.m; ++u)
      for (int v = u + 1; v < cfg.n && added < cfg.m; ++v)
        if (u % classes != v % classes) {
          g.add_edge(u, v);
          ++added;
        }
  }
  for (int u = 0; u < cfg.n && added < cfg.m; ++u)
    for (int v = u + 1; v < cfg.n && added < cfg.m; ++v) {
      if (g.has_edge(u, v)) continue;
      g.add_edge(u, v);
      if (contains_subgraph_through_edge(g, cfg.h, u, v))
        g.remove_edge(u, v);
      else
        ++added;
    }
  if (added < cfg.m)
    throw PreconditionError(
        "sampler: no pattern-free starting graph with the requested edge "
        "count was found");
  return g;
}

double wilson_z() { return 1.959963984540054; }

FractionEstimate pooled_estimate(long obtained, long successes,
                                 long failures) {
  FractionEstimate est;
  est.samples = obtained;
  est.successes = successes;
  est.failures = failures;
  if (obtained == 0) {
    est.point = 0.0;
    est.ci_low = 0.0;
    est.ci_high = 1.0;
    return est;
  }
  const double z = wilson_z();
  const double n = static_cast<double>(obtained);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half =
      (z / denom) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  est.point = p;
  est.ci_low = std::max(0.0, centre - half);
  est.ci_high = std::min(1.0, centre + half);
  return est;
}

}  // namespace

std::optional<Graph> sample_rejection(const ChainConfig& cfg,
                                      long max_tries) {
  check_config(cfg);
  if (cfg.method != SampleMethod::rejection)
    throw PreconditionError("sampler: configuration is not set to rejection");
  if (max_tries < 1)
    throw PreconditionError("sampler: need at least one rejection try");
  const auto pairs = candidate_pairs(cfg.n);
  Rng rng(cfg.seed);
  return rejection_with(rng, cfg, max_tries, pairs);
}

EdgeSwapChain::EdgeSwapChain(const ChainConfig& cfg)
    : EdgeSwapChain(cfg, Rng(cfg.seed)) {}

EdgeSwapChain::EdgeSwapChain(const ChainConfig& cfg, Rng rng)
    : h_(cfg.h), rng_(rng), thin_(cfg.thin) {
  check_config(cfg);
  if (cfg.method != SampleMethod::edge_swap)
    throw PreconditionError("sampler: configuration is not set to edge-swap");
  if (cfg.burn_in < 1 || cfg.thin < 1)
    throw PreconditionError(
        "sampler: edge-swap needs burn_in >= 1 and thin >= 1");
  g_ = initial_state(cfg);
  pairs_ = candidate_pairs(cfg.n);
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (g_.has_edge(pairs_[i].u, pairs_[i].v))
      present_.push_back(static_cast<int>(i));
    else
      absent_.push_back(static_cast<int>(i));
  }
  for (long t = 0; t < cfg.burn_in; ++t) step();
}

const Graph& EdgeSwapChain::next() {
  for (long t = 0; t < thin_; ++t) step();
  return g_;
}

void EdgeSwapChain::step() {
  if (present_.empty() || absent_.empty()) return;  // single-state space
  const auto pi = static_cast<std::size_t>(
      rng_.below(static_cast<std::uint64_t>(present_.size())));
  const auto ai = static_cast<std::size_t>(
      rng_.below(static_cast<std::uint64_t>(absent_.size())));
  const Edge out = pairs_[static_cast<std::size_t>(present_[pi])];
  const Edge in = pairs_[static_cast<std::size_t>(absent_[ai])];
  g_.remove_edge(out.u, out.v);
  g_.add_edge(in.u, in.v);
  if (contains_subgraph_through_edge(g_, h_, in.u, in.v)) {
    g_.remove_edge(in.u, in.v);
    g_.add_edge(out.u, out.v);
  } else {
    std::swap(present_[pi], absent_[ai]);
  }
}

FractionEstimate estimate_grk_fraction(const ChainConfig& cfg, int r, int k,
                                       long samples, int chains,
                                       long max_tries) {
  check_config(cfg);
  if (r < 1)
    throw PreconditionError("sampler: need at least one colour class");
  if (k < 0)
    throw PreconditionError("sampler: degree cap must be nonnegative");
  if (samples < 0)
    throw PreconditionError("sampler: sample count must be nonnegative");
  if (chains < 1)
    throw PreconditionError("sampler: need at least one chain");
  if (cfg.method == SampleMethod::rejection && max_tries < 1)
    throw PreconditionError("sampler: need at least one rejection try");
  if (cfg.method == SampleMethod::edge_swap) {
    if (cfg.burn_in < 1 || cfg.thin < 1)
      throw PreconditionError(
          "sampler: edge-swap needs burn_in >= 1 and thin >= 1");
    initial_state(cfg);  // fail fast before any worker starts
  }

  const auto pairs = candidate_pairs(cfg.n);
  struct ChainResult {
    long obtained = 0;
    long successes = 0;
    long failures = 0;
  };
  std::vector<ChainResult> results(static_cast<std::size_t>(chains));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chains));

  const auto run_chain = [&](int chain) {
    const std::size_t at = static_cast<std::size_t>(chain);
    try {
      long share = samples / chains + (chain < samples % chains ? 1 : 0);
      if (share == 0) return;
      ChainResult& out = results[at];
      const auto classify = [&](const Graph& g) {
        ++out.obtained;
        if (in_grk(g, r, k)) ++out.successes;
      };
      if (cfg.method == SampleMethod::rejection) {
        Rng rng = Rng::derive(cfg.seed, static_cast<std::uint64_t>(chain));
        for (long s = 0; s < share; ++s) {
          if (auto g = rejection_with(rng, cfg, max_tries, pairs))
            classify(*g);
          else
            ++out.failures;
        }
      } else {
        EdgeSwapChain walker(
            cfg, Rng::derive(cfg.seed, static_cast<std::uint64_t>(chain)));
        for (long s = 0; s < share; ++s) classify(walker.next());
      }
    } catch (...) {
      errors[at] = std::current_exception();
    }
  };

  if (chains == 1) {
    run_chain(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(chains));
    for (int c = 0; c < chains; ++c) pool.emplace_back(run_chain, c);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  long obtained = 0;
  long successes = 0;
  long failures = 0;
  for (const ChainResult& cr : results) {
    obtained += cr.obtained;
    successes += cr.successes;
    failures += cr.failures;
  }
  return pooled_estimate(obtained, successes, failures);
}

}  // namespace hfree
