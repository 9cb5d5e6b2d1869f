#pragma once

// Exact labeled enumeration over small hosts: how many m-edge graphs on [n]
// avoid a fixed pattern H, how many admit an r-colouring with every
// within-class degree at most k, and the overlap between the two families.
// Counts are exact big integers; nothing is reduced modulo isomorphism.

#include <optional>
#include <vector>

#include "hfree/graph.hpp"
#include "hfree/numeric.hpp"

namespace hfree {

// Tuning knobs for the enumerator.  `limit` caps the host size (the search
// space is 2^C(n,2)); `threads` spreads disjoint edge-prefix chunks over a
// worker pool.  Results are independent of the thread count.
struct CensusOptions {
  int limit = 8;
  int threads = 1;
};

// One row of a census: all counts refer to graphs on vertex set [n] with
// exactly m edges.  `fraction` is h_free_and_grk / h_free and is absent when
// no m-edge graph avoids the pattern.
struct CensusResult {
  int n = 0;
  int m = 0;
  BigInt total;           // C(n(n-1)/2, m)
  BigInt h_free;          // graphs with no copy of the pattern
  BigInt in_grk;          // graphs admitting a colouring within the degree cap
  BigInt h_free_and_grk;  // graphs with both properties
  std::optional<Rat> fraction;
};

// Number of m-edge graphs on [n] containing no copy of h.  Requires
// n <= opts.limit, 0 <= m <= C(n,2), and a pattern with at least one edge.
BigInt count_h_free(int n, int m, const Graph& h, const CensusOptions& opts = {});

// Full census row at one edge count: the pattern-avoiding count, the
// bounded-monochromatic-degree count for (r, k), their overlap, and the
// conditional fraction.  Preconditions as count_h_free plus r >= 1, k >= 0.
CensusResult census_structure(int n, int m, const Graph& h, int r, int k,
                              const CensusOptions& opts = {});

// Census rows for every edge count in m_range (deduplicated, emitted in
// ascending m).  One enumeration pass serves the whole sweep.
std::vector<CensusResult> census_sweep(int n, const Graph& h, int r, int k,
                                       const std::vector<int>& m_range,
                                       const CensusOptions& opts = {});

}  // namespace hfree
