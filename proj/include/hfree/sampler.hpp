#pragma once

// Approximately uniform sampling from the m-edge pattern-free graphs on [n]
// at sizes beyond exact enumeration: exact rejection from the uniform m-edge
// graph, and a Metropolis edge-swap chain for when rejection is hopeless.
// All randomness flows from the single seed in the configuration.

#include <cstdint>
#include <optional>

#include "hfree/graph.hpp"
#include "hfree/rng.hpp"

namespace hfree {

enum class SampleMethod { rejection, edge_swap };

// One sampling experiment: draw m-edge graphs on [n] avoiding h.  burn_in
// and thin steer the edge-swap chain (both must be >= 1 there) and are
// ignored by rejection.
struct ChainConfig {
  int n = 0;
  int m = 0;
  Graph h;
  long burn_in = 1;
  long thin = 1;
  std::uint64_t seed = 0;
  SampleMethod method = SampleMethod::rejection;
};

// Draws uniform m-edge graphs until one avoids the pattern; that draw is an
// exactly uniform member of the family.  Returns nothing when max_tries
// draws in a row all contained the pattern (the signal to switch methods).
std::optional<Graph> sample_rejection(const ChainConfig& cfg, long max_tries);

// Metropolis chain on the pattern-free m-edge graphs: each step swaps one
// uniformly chosen present edge for one uniformly chosen absent pair and
// accepts iff the result still avoids the pattern.  The proposal is
// symmetric, so the stationary distribution is uniform on the chain's
// communicating class.  Construction runs burn_in steps from a greedily
// built starting graph (failure to build one throws); each next() advances
// thin further steps.
class EdgeSwapChain {
 public:
  explicit EdgeSwapChain(const ChainConfig& cfg);
  // Same chain driven by an externally derived stream (per-chain seeding).
  EdgeSwapChain(const ChainConfig& cfg, Rng rng);

  const Graph& current() const { return g_; }
  const Graph& next();

 private:
  void step();

  Graph g_;
  Graph h_;
  Rng rng_;
  long thin_;
  std::vector<Edge> pairs_;    // all candidate pairs, lexicographic
  std::vector<int> present_;   // indices into pairs_: edges of g_
  std::vector<int> absent_;    // indices into pairs_: non-edges of g_
};

// Monte Carlo estimate of the probability that a uniform pattern-free
// m-edge graph admits an r-colouring with within-class degrees at most k.
// `samples` is the number of draws actually obtained; `failures` counts
// abandoned rejection draws.  The interval is a 95% Wilson interval.
struct FractionEstimate {
  long samples = 0;
  long successes = 0;
  long failures = 0;
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
};

// Pools draws from `chains` independent chains, one per worker thread, each
// seeded by (cfg.seed, chain index).  Results depend only on the
// configuration, never on scheduling.  max_tries applies per rejection draw.
FractionEstimate estimate_grk_fraction(const ChainConfig& cfg, int r, int k,
                                       long samples, int chains = 8,
                                       long max_tries = 1000);

}  // namespace hfree
