#include "hfree/criticality.hpp"

#include <optional>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"

using namespace hfree;
using testutil::exhaustive_chi;
using testutil::for_each_graph;
using testutil::random_graph;
using testutil::union_find_has_cycle;

namespace {

// Independent oracle for the whole classification pipeline: exhaustive
// chromatic numbers, every leaf subset, every colouring (no canonical
// pruning), union-find cycle checks.
struct OracleReport {
  int chi = 0;
  std::vector<int> cvs;
  std::optional<int> crit;
  bool vertex_critical = false;
  bool simple_ok = false;
  bool plain_ok = false;
  CriticalClass label() const {
    if (!vertex_critical) return CriticalClass::not_vertex_critical;
    if (!crit) return CriticalClass::vertex_critical;
    if (plain_ok) return CriticalClass::plain;
    if (simple_ok) return CriticalClass::simple;
    return CriticalClass::vertex_critical;
  }
};

std::optional<int> oracle_crit_of_vertex(const Graph& h, int v, int chi) {
  std::vector<int> nb;
  for (int w = 0; w < h.vertex_count(); ++w)
    if (h.has_edge(v, w)) nb.push_back(w);
  std::optional<int> best;
  for (unsigned pick = 1; pick < (1u << nb.size()); ++pick) {
    VertexMask leaves = 0;
    for (std::size_t i = 0; i < nb.size(); ++i)
      if ((pick >> i) & 1u) leaves |= 1ull << nb[i];
    if (exhaustive_chi(h.without_star(v, leaves)) == chi - 1) {
      const int size = __builtin_popcount(pick);
      if (!best || size < *best) best = size;
    }
  }
  return best;
}

OracleReport oracle_report(const Graph& h) {
  OracleReport rep;
  rep.chi = exhaustive_chi(h);
  const int n = h.vertex_count();
  for (int v = 0; v < n; ++v)
    if (exhaustive_chi(h.without_vertex(v)) == rep.chi - 1) rep.cvs.push_back(v);
  rep.vertex_critical = !rep.cvs.empty();
  if (!rep.vertex_critical) return rep;
  for (int v : rep.cvs) {
    const auto c = oracle_crit_of_vertex(h, v, rep.chi);
    if (c && (!rep.crit || *c < *rep.crit)) rep.crit = c;
  }
  if (!rep.crit) return rep;  // single-vertex corner

  const int r = rep.chi - 1;
  rep.simple_ok = rep.plain_ok = true;
  std::vector<int> colour(n, 0);
  while (true) {
    Graph b(n);
    for (const Edge& e : h.edges())
      if (colour[e.u] == colour[e.v]) b.add_edge(e.u, e.v);
    const bool cyc = union_find_has_cycle(b);
    int maxdeg = 0;
    for (int v = 0; v < n; ++v) maxdeg = std::max(maxdeg, b.degree(v));
    if (!cyc && maxdeg < *rep.crit) rep.simple_ok = false;
    bool pair_found = false;
    for (int u = 0; u < n && !pair_found; ++u)
      for (int v = u + 1; v < n && !pair_found; ++v)
        if (b.degree(u) == *rep.crit && b.degree(v) == *rep.crit &&
            !b.has_edge(u, v))
          pair_found = true;
    const bool star_exact = b.edge_count() == *rep.crit && maxdeg == *rep.crit;
    if (!(cyc || star_exact || maxdeg > *rep.crit || pair_found))
      rep.plain_ok = false;

    int i = 0;
    while (i < n && ++colour[i] == r) colour[i++] = 0;
    if (i == n) break;
  }
  return rep;
}

void check_against_oracle(const Graph& g) {
  const OracleReport want = oracle_report(g);
  const CriticalityReport got = criticality_report(g);
  CHECK(got.chi == want.chi);
  CHECK(got.critical_vertices == want.cvs);
  CHECK(got.crit_h == want.crit);
  CHECK(got.classification == want.label());
  // The implication chain itself, straight from the oracle's flags.
  if (want.plain_ok && want.crit) CHECK(want.simple_ok);
  if (want.simple_ok && want.crit) CHECK(want.vertex_critical);
  for (int v : want.cvs) {
    const auto c = oracle_crit_of_vertex(g, v, want.chi);
    if (c) CHECK(crit_of_vertex(g, v) == *c);
  }
  // An edge-critical graph always classifies as plain.
  if (g.edge_count() > 0 && is_edge_critical(g).edge_critical) {
    CHECK(got.classification == CriticalClass::plain);
  }
}

}  // namespace

TEST_CASE("criticality fixtures: cliques, odd cycles, wheels") {
  for (const Graph& g : {Graph::complete(3), Graph::complete(4),
                         Graph::complete(5), Graph::cycle(5), Graph::cycle(7)}) {
    CAPTURE(g.vertex_count());
    const EdgeCriticality ec = is_edge_critical(g);
    CHECK(ec.edge_critical);
    CHECK(ec.witnesses == g.edges());  // fully edge-critical
    const CriticalityReport rep = criticality_report(g);
    CHECK(rep.crit_h == 1);
    CHECK(rep.classification == CriticalClass::plain);
    CHECK(int(rep.critical_vertices.size()) == g.vertex_count());
  }

  // Odd wheel: hub plus C_5, chi = 4, fully edge-critical.
  Graph wheel = Graph::cycle(5);
  {
    Graph w(6);
    for (const Edge& e : wheel.edges()) w.add_edge(e.u, e.v);
    for (int v = 0; v < 5; ++v) w.add_edge(v, 5);
    wheel = w;
  }
  CHECK(chromatic_number(wheel) == 4);
  CHECK(is_edge_critical(wheel).witnesses.size() == 10);
  CHECK(criticality_report(wheel).classification == CriticalClass::plain);
}

TEST_CASE("criticality fixtures: negatives and partial witnesses") {
  // Even cycles are neither vertex- nor edge-critical.
  CHECK_FALSE(is_edge_critical(Graph::cycle(6)).edge_critical);
  CHECK(classify_vertex_critical(Graph::cycle(6)) ==
        CriticalClass::not_vertex_critical);

  // The Petersen graph keeps chi = 3 under any single deletion.
  CHECK_FALSE(is_edge_critical(Graph::petersen()).edge_critical);
  CHECK(classify_vertex_critical(Graph::petersen()) ==
        CriticalClass::not_vertex_critical);
  CHECK_THROWS_AS(critical_stars(Graph::petersen()), PreconditionError);

  // Diamond (K_4 minus an edge): only the edge between the two degree-3
  // vertices is a witness.
  const Graph diamond = Graph::complete(4).without_edge(0, 1);
  const EdgeCriticality ec = is_edge_critical(diamond);
  CHECK(ec.edge_critical);
  CHECK(ec.witnesses == EdgeList{{2, 3}});
  CHECK(critical_vertices(diamond) == std::vector<int>{2, 3});
  CHECK(criticality_report(diamond).crit_h == 1);
  CHECK(criticality_report(diamond).classification == CriticalClass::plain);

  CHECK_THROWS_AS(is_edge_critical(Graph(3)), PreconditionError);
  CHECK_THROWS_AS(criticality_report(Graph(0)), PreconditionError);
  CHECK_THROWS_AS(crit_of_vertex(Graph::petersen(), 0), PreconditionError);
}

TEST_CASE("criticality fixtures: K_{1,2,3} in full") {
  const Graph h = Graph::complete_multipartite({1, 2, 3});
  const CriticalityReport rep = criticality_report(h);
  CHECK(rep.chi == 3);
  CHECK(rep.critical_vertices == std::vector<int>{0});
  CHECK(rep.crit_h == 2);
  // Two minimal critical stars at the singleton: toward the 2-class and
  // toward the 3-class.
  REQUIRE(rep.critical_stars.size() == 2);
  CHECK(rep.critical_stars[0] == Star{0, 0b000110});
  CHECK(rep.critical_stars[1] == Star{0, 0b111000});
  CHECK(rep.classification == CriticalClass::plain);
  CHECK_FALSE(is_edge_critical(h).edge_critical);

  const auto min_only = critical_stars(h, /*min_size_only=*/true);
  REQUIRE(min_only.size() == 1);
  CHECK(min_only[0] == Star{0, 0b000110});
}

TEST_CASE("criticality fixtures: small degenerate graphs") {
  // K_2: both endpoints critical, single-edge stars, plain.
  const CriticalityReport k2 = criticality_report(Graph::complete(2));
  CHECK(k2.chi == 2);
  CHECK(k2.crit_h == 1);
  CHECK(k2.critical_stars == std::vector<Star>{{0, 0b10}, {1, 0b01}});
  CHECK(k2.classification == CriticalClass::plain);
  CHECK(is_edge_critical(Graph::complete(2)).edge_critical);

  // P_3: the middle vertex is critical with crit = 2; B under the unique
  // 1-colouring is exactly K_{1,2}.
  const CriticalityReport p3 = criticality_report(Graph::path(3));
  CHECK(p3.critical_vertices == std::vector<int>{1});
  CHECK(p3.crit_h == 2);
  CHECK(p3.critical_stars == std::vector<Star>{{1, 0b101}});
  CHECK(p3.classification == CriticalClass::plain);

  // Single vertex: vertex-critical by the letter of the definition (chi
  // drops 1 -> 0) but there is no star, hence no stronger label.
  const CriticalityReport k1 = criticality_report(Graph(1));
  CHECK(k1.chi == 1);
  CHECK(k1.critical_vertices == std::vector<int>{0});
  CHECK_FALSE(k1.crit_h.has_value());
  CHECK(k1.critical_stars.empty());
  CHECK(k1.classification == CriticalClass::vertex_critical);

  // Edgeless graphs with more vertices are not vertex-critical.
  CHECK(classify_vertex_critical(Graph(3)) == CriticalClass::not_vertex_critical);
}

TEST_CASE("criticality: exhaustive oracle agreement on <= 5 vertices") {
  for (int n = 1; n <= 5; ++n) {
    for_each_graph(n, check_against_oracle);
  }
}

TEST_CASE("criticality: oracle agreement on random 6- and 7-vertex graphs") {
  Rng rng(71);
  int done = 0;
  while (done < 60) {
    const int n = 6 + int(rng.below(2));
    const Graph g = random_graph(rng, n, 0.2 + 0.6 * rng.unit());
    if (exhaustive_chi(g) > 5) continue;  // keep the oracle loop tractable
    check_against_oracle(g);
    ++done;
  }
}

TEST_CASE("criticality: edge-critical iff vertex-critical with crit 1") {
  Rng rng(73);
  for (int iter = 0; iter < 150; ++iter) {
    const Graph g = random_graph(rng, 2 + int(rng.below(5)), rng.unit());
    if (g.edge_count() == 0) continue;
    const CriticalityReport rep = criticality_report(g);
    const bool lhs = is_edge_critical(g).edge_critical;
    const bool rhs =
        !rep.critical_vertices.empty() && rep.crit_h && *rep.crit_h == 1;
    CHECK(lhs == rhs);
  }
}
