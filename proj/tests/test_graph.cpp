#include "hfree/graph.hpp"

#include <functional>
#include <string>
#include <vector>

#include "doctest.h"
#include "hfree/rng.hpp"
#include "test_util.hpp"

using namespace hfree;

namespace {

// Reference graph6 encoder used as an independent oracle: writes the upper
// triangle in column order as a literal '0'/'1' string, pads, then packs.
std::string reference_graph6(const Graph& g) {
  const int n = g.vertex_count();
  std::string bits;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) bits.push_back(g.has_edge(i, j) ? '1' : '0');
  while (bits.size() % 6 != 0) bits.push_back('0');
  std::string out(1, static_cast<char>(n + 63));
  for (std::size_t t = 0; t < bits.size(); t += 6) {
    int val = 0;
    for (int b = 0; b < 6; ++b) val = 2 * val + (bits[t + b] == '1');
    out.push_back(static_cast<char>(val + 63));
  }
  return out;
}

using testutil::injection_contains;

// Oracle: girth via cycle containment checks with the injection oracle.
std::optional<int> injection_girth(const Graph& g) {
  for (int len = 3; len <= g.vertex_count(); ++len) {
    if (injection_contains(g, Graph::cycle(len))) return len;
  }
  return std::nullopt;
}

// Oracle: chromatic number by exhausting every assignment of k colours.
int exhaustive_chi(const Graph& g) {
  const int n = g.vertex_count();
  if (n == 0) return 0;
  const EdgeList es = g.edges();
  for (int k = 1; k < n; ++k) {
    std::vector<int> c(n, 0);
    while (true) {
      bool proper = true;
      for (const Edge& e : es) {
        if (c[e.u] == c[e.v]) {
          proper = false;
          break;
        }
      }
      if (proper) return k;
      int i = 0;
      while (i < n && ++c[i] == k) {
        c[i] = 0;
        ++i;
      }
      if (i == n) break;
    }
  }
  return n;
}

Graph random_graph(Rng& rng, int n, double p) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.unit() < p) g.add_edge(u, v);
  return g;
}

Graph grotzsch() {
  // Mycielski construction over C_5: triangle-free with chromatic number 4.
  Graph g(11);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(5 + i, (i + 1) % 5);
    g.add_edge(5 + i, (i + 4) % 5);
    g.add_edge(5 + i, 10);
  }
  return g;
}

}  // namespace

TEST_CASE("graph basics: construction, degrees, edge bookkeeping") {
  Graph g(5);
  CHECK(g.vertex_count() == 5);
  CHECK(g.edge_count() == 0);
  g.add_edge(0, 3);
  g.add_edge(3, 0);  // no-op duplicate
  g.add_edge(1, 2);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(3, 0));
  CHECK(g.degree(3) == 1);
  g.remove_edge(0, 3);
  CHECK(g.edge_count() == 1);
  CHECK_FALSE(g.has_edge(0, 3));
  CHECK_THROWS_AS(g.add_edge(0, 0), PreconditionError);
  CHECK_THROWS_AS(g.add_edge(0, 5), PreconditionError);
  CHECK_THROWS_AS(Graph(65), PreconditionError);
  CHECK_THROWS_AS(Graph(-1), PreconditionError);

  CHECK(Graph::complete(4).edge_count() == 6);
  CHECK(Graph::cycle(5).edge_count() == 5);
  CHECK(Graph::path(4).edge_count() == 3);
  CHECK(Graph::star(3).edge_count() == 3);
  CHECK(Graph::complete_multipartite({1, 2, 3}).edge_count() == 11);
  CHECK(Graph::petersen().edge_count() == 15);
  CHECK(Graph::petersen().max_degree() == 3);

  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {0, 1}}), InputError);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 3}}), InputError);
  CHECK_THROWS_AS(Graph::from_edges(3, {{2, 2}}), InputError);
}

TEST_CASE("graph views: without_vertex, induced, components") {
  const Graph k4 = Graph::complete(4);
  CHECK(k4.without_vertex(2) == Graph::complete(3));
  CHECK(k4.without_edge(0, 1).edge_count() == 5);
  CHECK(k4.induced(0b1011).edge_count() == 3);
  CHECK(k4.induced_edge_count(0b1011) == 3);

  const Graph c6 = Graph::cycle(6);
  CHECK(c6.component_count() == 1);
  CHECK(c6.connected());
  CHECK(c6.without_edge(0, 1).connected());
  Graph two(6);
  two.add_edge(0, 1);
  two.add_edge(3, 4);
  CHECK(two.component_count() == 4);
  CHECK_FALSE(two.connected());
  CHECK(Graph(0).component_count() == 0);

  const Graph k123 = Graph::complete_multipartite({1, 2, 3});
  Graph no_star = k123.without_star(0, 0b000110);
  CHECK(no_star.edge_count() == 9);
  CHECK_FALSE(no_star.has_edge(0, 1));
  CHECK_FALSE(no_star.has_edge(0, 2));
  CHECK(no_star.has_edge(0, 3));

  SUBCASE("random graphs: deleting a vertex drops exactly its degree") {
    Rng rng(11);
    for (int iter = 0; iter < 200; ++iter) {
      const Graph g = random_graph(rng, 2 + int(rng.below(7)), 0.4);
      const int v = int(rng.below(g.vertex_count()));
      CHECK(g.without_vertex(v).edge_count() == g.edge_count() - g.degree(v));
    }
  }
}

TEST_CASE("all_pairs enumerates lexicographically") {
  const auto pairs = all_pairs(4);
  const std::vector<Edge> want = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  CHECK(pairs == want);
}

TEST_CASE("graph6: known strings") {
  CHECK(encode_graph6(Graph(1)) == "@");
  Graph k2 = Graph::complete(2);
  CHECK(encode_graph6(k2) == "A_");
  CHECK(encode_graph6(Graph::complete(4)) == "C~");
  CHECK(parse_graph6("@") == Graph(1));
  CHECK(parse_graph6("A_") == k2);
  CHECK(parse_graph6("C~") == Graph::complete(4));
  CHECK(parse_graph6("?") == Graph(0));
}

TEST_CASE("graph6: agrees with the reference encoder and round-trips") {
  Rng rng(23);
  for (int iter = 0; iter < 400; ++iter) {
    const int n = int(rng.below(13));
    const Graph g = random_graph(rng, n, rng.unit());
    const std::string enc = encode_graph6(g);
    CHECK(enc == reference_graph6(g));
    CHECK(parse_graph6(enc) == g);
  }
  // The 62-vertex ceiling round-trips; 63 does not encode.
  const Graph big = Graph::cycle(62);
  CHECK(parse_graph6(encode_graph6(big)) == big);
  CHECK_THROWS_AS(encode_graph6(Graph(63)), PreconditionError);
}

TEST_CASE("graph6: decode errors are reported distinctly") {
  auto kind_of = [](const std::string& s) {
    try {
      parse_graph6(s);
    } catch (const Graph6Error& e) {
      return e.kind;
    }
    throw std::runtime_error("expected a graph6 error");
  };
  CHECK(kind_of("") == Graph6Error::Kind::malformed_header);
  CHECK(kind_of("\x20_") == Graph6Error::Kind::malformed_header);
  CHECK(kind_of("~??") == Graph6Error::Kind::unsupported_size);
  CHECK(kind_of("A") == Graph6Error::Kind::bad_length);
  CHECK(kind_of("A__") == Graph6Error::Kind::bad_length);
  CHECK(kind_of("A\x20") == Graph6Error::Kind::bad_character);
  // n=2 has one pair bit; 'o' sets a padding bit as well.
  CHECK(kind_of("Ao") == Graph6Error::Kind::trailing_bits);
}

TEST_CASE("contains_subgraph: fixtures") {
  const Graph petersen = Graph::petersen();
  CHECK(contains_subgraph(petersen, Graph::cycle(5)));
  CHECK_FALSE(contains_subgraph(petersen, Graph::complete(3)));
  CHECK(contains_subgraph(petersen, Graph::path(10)));
  CHECK(contains_subgraph(Graph::complete(5), Graph::cycle(4)));
  CHECK_FALSE(contains_subgraph(Graph::cycle(4), Graph::complete(3)));
  // Pattern larger than host cannot embed.
  CHECK_FALSE(contains_subgraph(Graph::complete(3), Graph(4)));
  // Edgeless patterns only need room.
  CHECK(contains_subgraph(Graph::complete(3), Graph(3)));
  CHECK(contains_subgraph(Graph(5), Graph(0)));
}

TEST_CASE("contains_subgraph: matches the injection oracle") {
  Rng rng(37);
  for (int iter = 0; iter < 500; ++iter) {
    const Graph host = random_graph(rng, 1 + int(rng.below(7)), rng.unit());
    const Graph pat = random_graph(rng, 1 + int(rng.below(4)), rng.unit());
    CHECK(contains_subgraph(host, pat) == injection_contains(host, pat));
  }
}

TEST_CASE("contains_subgraph is monotone under adding host edges") {
  Rng rng(41);
  for (int iter = 0; iter < 200; ++iter) {
    Graph host = random_graph(rng, 6, 0.3);
    const Graph pat = random_graph(rng, 3, 0.8);
    if (!contains_subgraph(host, pat)) continue;
    const int u = int(rng.below(6));
    const int v = (u + 1 + int(rng.below(5))) % 6;
    host.add_edge(u, v);
    CHECK(contains_subgraph(host, pat));
  }
}

TEST_CASE("contains_subgraph_through_edge: decides incremental containment") {
  Rng rng(43);
  for (int iter = 0; iter < 300; ++iter) {
    Graph host = random_graph(rng, 6, 0.4);
    const Graph pat = random_graph(rng, 2 + int(rng.below(3)), 0.8);
    const int u = int(rng.below(6));
    const int v = (u + 1 + int(rng.below(5))) % 6;
    if (host.has_edge(u, v)) continue;
    const bool before = injection_contains(host, pat);
    host.add_edge(u, v);
    const bool after = injection_contains(host, pat);
    if (before) continue;  // the incremental contract assumes a clean parent
    CHECK(contains_subgraph_through_edge(host, pat, u, v) == after);
  }
  Graph host = Graph::complete(3);
  CHECK_THROWS_AS(contains_subgraph_through_edge(host.without_edge(0, 1), host, 0, 1),
                  PreconditionError);
}

TEST_CASE("girth: fixtures and oracle agreement") {
  CHECK(girth(Graph::petersen()) == 5);
  CHECK(girth(Graph::complete(4)) == 3);
  CHECK(girth(Graph::cycle(7)) == 7);
  CHECK(girth(grotzsch()) == 4);
  CHECK_FALSE(girth(Graph::path(6)).has_value());
  CHECK_FALSE(girth(Graph(3)).has_value());

  Rng rng(53);
  for (int iter = 0; iter < 400; ++iter) {
    const Graph g = random_graph(rng, 1 + int(rng.below(8)), rng.unit());
    CHECK(girth(g) == injection_girth(g));
    // Acyclic exactly when the edge count certifies a forest.
    CHECK(girth(g).has_value() ==
          (g.edge_count() > g.vertex_count() - g.component_count()));
    CHECK(girth(g).has_value() == g.has_cycle());
  }
}

TEST_CASE("chromatic_number: fixtures") {
  CHECK(chromatic_number(Graph(0)) == 0);
  CHECK(chromatic_number(Graph(4)) == 1);
  CHECK(chromatic_number(Graph::complete(7)) == 7);
  CHECK(chromatic_number(Graph::cycle(6)) == 2);
  CHECK(chromatic_number(Graph::cycle(7)) == 3);
  CHECK(chromatic_number(Graph::petersen()) == 3);
  CHECK(chromatic_number(grotzsch()) == 4);
  CHECK(chromatic_number(Graph::complete_multipartite({1, 2, 3})) == 3);
  CHECK(k_colorable(Graph::cycle(5), 3));
  CHECK_FALSE(k_colorable(Graph::cycle(5), 2));
}

TEST_CASE("chromatic_number: agrees with exhaustive search") {
  for (int n = 1; n <= 4; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (unsigned mask = 0; mask < (1u << pairs); ++mask) {
      Graph g(n);
      int t = 0;
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++t)
          if ((mask >> t) & 1u) g.add_edge(u, v);
      CHECK(chromatic_number(g) == exhaustive_chi(g));
    }
  }
  Rng rng(61);
  for (int iter = 0; iter < 200; ++iter) {
    const Graph g = random_graph(rng, 5 + int(rng.below(3)), rng.unit());
    CHECK(chromatic_number(g) == exhaustive_chi(g));
  }
}
