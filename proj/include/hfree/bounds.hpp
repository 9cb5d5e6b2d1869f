#pragma once

// Numeric evaluators for the probabilistic toolbox — containment-event
// bounds for uniform random m-subsets, a hypergeometric tail bound, an
// extremal bound for complete multipartite hosts, a subgraph density
// inequality checker, and a Monte Carlo probe for dense tuple clusters —
// together with the exact small-scale oracles that verify them.

#include <cstdint>
#include <optional>
#include <vector>

#include "hfree/graph.hpp"
#include "hfree/numeric.hpp"

namespace hfree {

// Family {B_i} of subsets of an omega_size-element ground set, each subset a
// bitmask over elements 0..omega_size-1.  Duplicates are distinct members.
struct SubsetFamily {
  int omega_size = 0;
  std::vector<std::uint64_t> sets;
};

// Terms of the containment bound for a uniform random m-subset R: with
// p = m/N, mu sums p^|B_i| and delta sums p^|B_i ∪ B_j| over ordered pairs
// of distinct intersecting members.  For any q in [0,1],
// Pr(no B_i lands inside R) <= bound = 2·exp(-q·mu + q²·delta/2); q_star is
// the optimizing choice mu/(mu+delta).
struct JansonTerms {
  double mu = 0.0;
  double delta = 0.0;
  double q = 0.0;
  double q_star = 0.0;
  double bound = 0.0;
};

JansonTerms janson_bound(const SubsetFamily& fam, int m, double q);

// Lower bound for the same event.  The `literal` mode evaluates
//   prod(1 - ((1+eta)m/N)^|B_i|) - exp(+eta²m/4)
// exactly as printed in the source statement; that error term grows with m
// and makes the bound vacuous, so the default `corrected` mode flips the
// exponent's sign, which is the only falsifiable reading.  Requires
// 0 < eta < 1 and m <= floor(N/2).
enum class HarrisMode { literal, corrected };

double harris_bound(const SubsetFamily& fam, int m, double eta,
                    HarrisMode mode = HarrisMode::corrected);

// Pr(|R ∩ A| <= k·m/N - t) <= exp(-t² / (2·k·m/N)) for a uniform m-subset R
// of an N-set and a fixed k-element A.  Returns the right-hand side; 1 when
// t = 0, and 0 when k·m = 0 with t > 0 (the event is then impossible).
double hypergeom_lower_tail(int big_n, int m, int k_size, double t);

// Exact Pr(no B_i lands inside R) by enumeration of all C(N, m) subsets.
// The oracle for the two bounds above; requires omega_size <= 20.
Rat verify_bound_exact(const SubsetFamily& fam, int m);

// Extremal bound e(K_r(n)) - n²/s² for subgraphs of the balanced complete
// r-partite host K_r(n) avoiding K_r(s), kept exact as a rational and
// floored for integer comparisons.  When r·n <= 12, `exhaustive` holds the
// true extremal number, computed exactly: copies of K_r(s) inside the host
// always consist of one s-subset per class, so the search space is
// structured enough for an exact optimum at that scale.
struct TuranPartiteBound {
  Rat exact;
  long floor_value = 0;
  std::optional<long> exhaustive;
};

TuranPartiteBound turan_partite_bound(int n, int r, int s);

// Checks n^v · p^e >= C^(e-1) · n² · p for every subgraph shape (v, e)
// realizable inside h with at least one edge, under the precondition
// p >= C · n^(-1/m2) with m2 the maximum subgraph edge density of h.  Only
// the vertex and edge counts enter the inequality, so scanning realizable
// (v, e) classes covers the entire subgraph lattice.
struct DensityClassCheck {
  int vertices = 0;
  int edges = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct DensityReport {
  bool all_hold = false;
  std::vector<DensityClassCheck> classes;
};

DensityReport density_inequality_check(const Graph& h, double c, double p,
                                       long n);

// Fraction of tuples (W_1, ..., W_z) of d-element subsets W_i of U_i whose
// window catches more than lambda·d^z members of the tuple set: exact
// enumeration when the tuple-subset space has at most 10^6 elements, seeded
// Monte Carlo over `trials` draws otherwise.  alpha_cut reports alpha^d,
// the scale the fraction is meant to be compared against.
struct DsetsReport {
  double fraction = 0.0;
  double alpha_cut = 0.0;
  bool exhaustive = false;
  long long evaluated = 0;
};

DsetsReport dsets_probe(const std::vector<int>& u_sizes,
                        const std::vector<std::vector<int>>& tuples, int d,
                        double alpha, double lambda, long trials,
                        std::uint64_t seed = 0);

}  // namespace hfree
