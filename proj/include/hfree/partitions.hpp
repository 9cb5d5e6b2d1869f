#pragma once

#include <optional>
#include <vector>

#include "hfree/graph.hpp"
#include "hfree/numeric.hpp"

namespace hfree {

// Ordered partition of {0, ..., n-1} into r labeled classes (a colouring of
// the vertex set; classes may be empty).  Serialized form: the length-n
// array of class indices.
class Partition {
 public:
  Partition(int r, std::vector<int> assign);

  static Partition from_classes(int n,
                                const std::vector<std::vector<int>>& classes);

  int n() const { return int(assign_.size()); }
  int r() const { return r_; }
  int class_of(int v) const { return assign_[v]; }
  bool same_class(int u, int v) const { return assign_[u] == assign_[v]; }
  const std::vector<int>& assignment() const { return assign_; }
  long class_size(int i) const { return sizes_[i]; }
  std::vector<std::vector<int>> classes() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  int r_;
  std::vector<int> assign_;
  std::vector<long> sizes_;
};

// Whether every class size lies in [(1/r - gamma) n, (1/r + gamma) n].
// Exact rational comparison.  Requires 0 < gamma < 1/r.
bool is_balanced(const Partition& p, const Rat& gamma);

// Number of cross-class pairs e(P) = sum_{i<j} |V_i| |V_j|.
long partition_edge_count(const Partition& p);

// e(P) together with the side of the two-sided size bound that applies at
// this gamma: balanced partitions are tested against the lower bound
//   e(P) >= (1 - 2 r gamma)(1 - 1/r) n^2 / 2,
// unbalanced ones against the upper bound
//   e(P) <= (1 - gamma^2 / 3) ex(n, r).
// Both checks are exact and asymptotic in spirit: they can fail at tiny n.
struct PartitionEdgeReport {
  long edges = 0;
  bool balanced = false;
  bool bound_holds = false;
};
PartitionEdgeReport partition_edge_report(const Partition& p, const Rat& gamma);

// Subgraph of G keeping only edges inside a class of p.  Requires matching
// vertex counts.
Graph mono_graph(const Graph& g, const Partition& p);

// A colouring of G into r classes where every vertex has at most k
// neighbours of its own colour, when one exists.
struct GrkWitness {
  Partition partition;
  int mono_max_degree = 0;
};

// Branch-and-bound search for such a colouring: vertices in descending
// degree order, classes introduced in first-use order, pruning as soon as a
// within-class degree exceeds k.  Deterministic first witness.  Requires
// r >= 1 and k >= 0.
std::optional<GrkWitness> in_grk(const Graph& g, int r, int k);

// Number of m-edge graphs G with mono_graph(G, p) exactly b: the cross
// edges are free, so this is C(e(P), m - e(b)).  The count is 0 when m is
// out of range.  Throws InputError when b has a cross-class edge.
BigInt count_gpb(const Partition& p, const Graph& b, long m);

// Edge count of the balanced complete r-partite graph on n vertices (the
// n mod r larger classes come first).  Requires r >= 1.
long ex_turan(long n, int r);

}  // namespace hfree
