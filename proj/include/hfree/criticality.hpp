#pragma once

#include <bit>
#include <map>
#include <optional>
#include <vector>

#include "hfree/graph.hpp"

namespace hfree {

// Star subgraph of a host graph: a centre with a nonempty set of leaves.
struct Star {
  int centre = 0;
  VertexMask leaves = 0;

  int edge_count() const { return std::popcount(leaves); }
  VertexMask vertex_set() const { return leaves | (1ull << centre); }

  friend bool operator==(const Star&, const Star&) = default;
};

enum class CriticalClass {
  not_vertex_critical,
  vertex_critical,
  simple,
  plain,
};

const char* to_string(CriticalClass c);

struct CriticalityReport {
  int chi = 0;
  std::vector<int> critical_vertices;
  std::map<int, int> crit_per_vertex;
  std::optional<int> crit_h;        // min crit(v); absent without critical stars
  std::vector<Star> critical_stars; // all minimal stars, centre asc then leaf-set lex
  CriticalClass classification = CriticalClass::not_vertex_critical;
};

struct EdgeCriticality {
  bool edge_critical = false;
  EdgeList witnesses;  // every single edge whose removal drops chi by one
};

// Whether some single-edge deletion drops the chromatic number ("contains a
// critical edge"), with all witnesses.  Requires at least one edge.
EdgeCriticality is_edge_critical(const Graph& h);

// Vertices v with chi(H - v) = chi(H) - 1.  H is vertex-critical when this
// is nonempty.  Requires a nonempty graph.
std::vector<int> critical_vertices(const Graph& h);

// Smallest number of edges at v whose removal drops the chromatic number.
// Requires v to be a critical vertex (and chi >= 2 so stars exist).
int crit_of_vertex(const Graph& h, int v);

// All minimal stars S (centred at critical vertices) with
// chi(H \ S) = chi(H) - 1.  With min_size_only, keeps only stars with
// exactly crit(H) edges.  Requires H vertex-critical.
std::vector<Star> critical_stars(const Graph& h, bool min_size_only = false);

// Strongest of plain > simple > vertex-critical > not-vertex-critical that
// holds for H, by enumerating all (chi-1)-colourings of V(H) up to colour
// permutation.  Requires a nonempty graph.
CriticalClass classify_vertex_critical(const Graph& h);

// One-stop aggregate of everything above.  Requires a nonempty graph.
CriticalityReport criticality_report(const Graph& h);

}  // namespace hfree
