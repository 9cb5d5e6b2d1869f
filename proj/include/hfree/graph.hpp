#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hfree/errors.hpp"

namespace hfree {

// Subset of the vertex range [0, 64) as a bitmask.
using VertexMask = std::uint64_t;

struct Edge {
  int u = 0;  // u < v always
  int v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using EdgeList = std::vector<Edge>;

// Simple undirected graph on vertices 0..n-1, adjacency kept as one 64-bit
// mask per vertex.  Value semantics; cheap to copy at these sizes.  Mutation
// is only meant for construction: operations treat graphs as immutable, so a
// fully built Graph can be shared across threads freely.
class Graph {
 public:
  static constexpr int kMaxVertices = 64;

  Graph() = default;
  explicit Graph(int n);

  static Graph from_edges(int n, const EdgeList& edges);

  // Fixture factories.
  static Graph complete(int n);
  static Graph cycle(int n);
  static Graph path(int n);  // n vertices, n-1 edges
  static Graph star(int leaves);
  static Graph complete_multipartite(const std::vector<int>& class_sizes);
  static Graph petersen();

  int vertex_count() const { return n_; }
  int edge_count() const { return edge_count_; }

  bool has_edge(int u, int v) const { return (adj_[u] >> v) & 1u; }
  void add_edge(int u, int v);
  void remove_edge(int u, int v);

  VertexMask neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return __builtin_popcountll(adj_[v]); }
  int max_degree() const;

  VertexMask vertex_mask() const {
    return n_ == 64 ? ~0ull : (1ull << n_) - 1;
  }

  // Edges in lexicographic (u, v) order.
  EdgeList edges() const;

  // Copy with vertex v removed and the remaining vertices relabelled to keep
  // a contiguous range.
  Graph without_vertex(int v) const;
  Graph without_edge(int u, int v) const;
  // Copy with all edges from `centre` to `leaves` removed (vertices kept).
  Graph without_star(int centre, VertexMask leaves) const;

  // Induced subgraph on `keep`, relabelled to 0..popcount-1.
  Graph induced(VertexMask keep) const;
  // Number of edges inside `keep`, without building the subgraph.
  int induced_edge_count(VertexMask keep) const;

  int component_count() const;
  bool connected() const;
  bool has_cycle() const { return edge_count_ > n_ - component_count(); }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_pair(int u, int v) const;

  int n_ = 0;
  int edge_count_ = 0;
  std::array<VertexMask, kMaxVertices> adj_{};
};

// All unordered pairs of [0, n) in lexicographic order; the position of a
// pair in this list is the edge index used by census and sampler code.
std::vector<Edge> all_pairs(int n);

// graph6 codec, bit-exact: header byte n+63 (n <= 62 only), upper-triangle
// adjacency bits in column order (0,1),(0,2),(1,2),(0,3),... packed MSB-first
// into 6-bit groups, each +63.
Graph parse_graph6(std::string_view text);
std::string encode_graph6(const Graph& g);

// True when an injective map V(pattern) -> V(host) sends every pattern edge
// to a host edge (subgraph containment, not induced).
bool contains_subgraph(const Graph& host, const Graph& pattern);

// Containment restricted to embeddings that cover the host edge (u, v) by
// some pattern edge.  Used for incremental checks: if host minus (u,v) is
// pattern-free, this decides containment for the whole host.
bool contains_subgraph_through_edge(const Graph& host, const Graph& pattern,
                                    int u, int v);

// Length of a shortest cycle; nullopt for forests ("infinity").
std::optional<int> girth(const Graph& g);

// True when the vertices can be properly coloured with at most k colours.
bool k_colorable(const Graph& g, int k);

// Exact chromatic number: iterative deepening on k_colorable below a greedy
// upper bound.  0 for the empty graph, 1 for nonempty edgeless graphs.
int chromatic_number(const Graph& g);

}  // namespace hfree
