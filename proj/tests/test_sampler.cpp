#include "hfree/sampler.hpp"

#include <algorithm>
#include <bit>
#include <boost/math/special_functions/gamma.hpp>
#include <cstdint>
#include <map>
#include <vector>

#include "doctest.h"
#include "hfree/census.hpp"
#include "hfree/errors.hpp"
#include "hfree/graph.hpp"
#include "test_util.hpp"

using namespace hfree;
using testutil::graph_from_mask;
using testutil::injection_contains;

namespace {

// Lexicographic pair mask of a small graph; inverse of graph_from_mask.
std::uint64_t mask_of(const Graph& g) {
  std::uint64_t mask = 0;
  int t = 0;
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v = u + 1; v < g.vertex_count(); ++v, ++t)
      if (g.has_edge(u, v)) mask |= std::uint64_t(1) << t;
  return mask;
}

// Every m-edge pattern-free graph on [n], as masks in ascending order.
std::vector<std::uint64_t> family_masks(int n, int m, const Graph& h) {
  const int pairs = n * (n - 1) / 2;
  std::vector<std::uint64_t> support;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << pairs); ++mask) {
    if (std::popcount(mask) != m) continue;
    if (!injection_contains(graph_from_mask(n, mask), h))
      support.push_back(mask);
  }
  return support;
}

// Upper tail of the chi-square distribution: goodness-of-fit p-value for
// observed counts against the uniform distribution over the cells.
double uniform_gof_pvalue(const std::vector<long>& counts, long total) {
  const double expected =
      static_cast<double>(total) / static_cast<double>(counts.size());
  double stat = 0.0;
  for (const long c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  const double df = static_cast<double>(counts.size() - 1);
  return boost::math::gamma_q(df / 2.0, stat / 2.0);
}

ChainConfig triangle_config(int n, int m) {
  ChainConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.h = Graph::complete(3);
  return cfg;
}

}  // namespace

TEST_CASE("rejection draws are uniform over the four-edge triangle-free family") {
  const auto support = family_masks(5, 4, Graph::complete(3));
  REQUIRE(support.size() == 140);
  std::map<std::uint64_t, long> index;
  for (std::size_t i = 0; i < support.size(); ++i)
    index[support[i]] = static_cast<long>(i);

  ChainConfig cfg = triangle_config(5, 4);
  std::vector<long> counts(support.size(), 0);
  const long draws = 28000;
  for (long i = 0; i < draws; ++i) {
    cfg.seed = 9000 + static_cast<std::uint64_t>(i);
    const auto g = sample_rejection(cfg, 200);
    REQUIRE(g.has_value());
    const auto at = index.find(mask_of(*g));
    REQUIRE(at != index.end());
    ++counts[static_cast<std::size_t>(at->second)];
  }
  CHECK(uniform_gof_pvalue(counts, draws) > 0.01);
}

TEST_CASE("edge-swap emissions are uniform and reach the whole family") {
  const auto support = family_masks(5, 4, Graph::complete(3));
  REQUIRE(support.size() == 140);
  std::map<std::uint64_t, long> index;
  for (std::size_t i = 0; i < support.size(); ++i)
    index[support[i]] = static_cast<long>(i);

  ChainConfig cfg = triangle_config(5, 4);
  cfg.method = SampleMethod::edge_swap;
  cfg.burn_in = 2000;
  cfg.thin = 20;
  cfg.seed = 907;
  EdgeSwapChain chain(cfg);
  std::vector<long> counts(support.size(), 0);
  const long draws = 28000;
  for (long i = 0; i < draws; ++i) {
    const auto at = index.find(mask_of(chain.next()));
    REQUIRE(at != index.end());
    ++counts[static_cast<std::size_t>(at->second)];
  }
  for (const long c : counts) CHECK(c > 0);  // empirical connectivity
  CHECK(uniform_gof_pvalue(counts, draws) > 0.01);
}

TEST_CASE("a chain with every swap blocked repeats its state") {
  // At the extremal edge count on four vertices the triangle-free graphs
  // are the three labeled four-cycles, and no single swap leads from one
  // to another without passing through a triangle.  Every proposal is
  // rejected, so the chain stays put — and stays inside the family.
  const auto support = family_masks(4, 4, Graph::complete(3));
  REQUIRE(support.size() == 3);

  ChainConfig cfg = triangle_config(4, 4);
  cfg.method = SampleMethod::edge_swap;
  cfg.burn_in = 50;
  cfg.thin = 1;
  cfg.seed = 911;
  EdgeSwapChain chain(cfg);
  const Graph start = chain.current();
  CHECK(std::find(support.begin(), support.end(), mask_of(start)) !=
        support.end());
  for (int i = 0; i < 200; ++i) CHECK(chain.next() == start);
}

TEST_CASE("rejection reports failure when the family is empty") {
  // Nine of ten pairs force far more than the extremal six edges, so every
  // draw contains a triangle.
  ChainConfig cfg = triangle_config(5, 9);
  cfg.seed = 919;
  CHECK(!sample_rejection(cfg, 60).has_value());

  SUBCASE("failures flow into the estimate") {
    const FractionEstimate est = estimate_grk_fraction(cfg, 2, 0, 40, 4, 30);
    CHECK(est.samples == 0);
    CHECK(est.successes == 0);
    CHECK(est.failures == 40);
    CHECK(est.point == 0.0);
    CHECK(est.ci_low == 0.0);
    CHECK(est.ci_high == 1.0);
  }
}

TEST_CASE("degenerate draws succeed immediately") {
  SUBCASE("no edges requested") {
    ChainConfig cfg = triangle_config(6, 0);
    const auto g = sample_rejection(cfg, 1);
    REQUIRE(g.has_value());
    CHECK(g->edge_count() == 0);
  }
  SUBCASE("host too small to contain the pattern") {
    ChainConfig cfg = triangle_config(2, 1);
    const auto g = sample_rejection(cfg, 1);
    REQUIRE(g.has_value());
    CHECK(g->edge_count() == 1);
  }
  SUBCASE("empty-family estimate at zero edges is exactly one") {
    ChainConfig cfg = triangle_config(6, 0);
    const FractionEstimate est = estimate_grk_fraction(cfg, 2, 0, 64);
    CHECK(est.samples == 64);
    CHECK(est.successes == 64);
    CHECK(est.point == 1.0);
    CHECK(est.ci_high == 1.0);
  }
}

TEST_CASE("greedy starting graphs are pattern-free at every reachable density") {
  SUBCASE("triangle pattern up to the extremal count") {
    for (int m = 0; m <= 16; ++m) {
      CAPTURE(m);
      ChainConfig cfg = triangle_config(8, m);
      cfg.method = SampleMethod::edge_swap;
      EdgeSwapChain chain(cfg);
      CHECK(chain.current().edge_count() == m);
      CHECK(!injection_contains(chain.current(), cfg.h));
    }
    ChainConfig cfg = triangle_config(8, 17);  // past the extremal count
    cfg.method = SampleMethod::edge_swap;
    CHECK_THROWS_AS(EdgeSwapChain{cfg}, PreconditionError);
  }
  SUBCASE("five-cycle pattern: construct or refuse, never a bad state") {
    const Graph c5 = Graph::cycle(5);
    for (int m = 0; m <= 21; ++m) {
      CAPTURE(m);
      ChainConfig cfg;
      cfg.n = 7;
      cfg.m = m;
      cfg.h = c5;
      cfg.method = SampleMethod::edge_swap;
      try {
        EdgeSwapChain chain(cfg);
        CHECK(chain.current().edge_count() == m);
        CHECK(!injection_contains(chain.current(), c5));
      } catch (const PreconditionError&) {
        // Greedy construction is allowed to give up at infeasible or
        // hard-to-reach densities.
      }
    }
  }
  SUBCASE("matching pattern caps the reachable density") {
    ChainConfig cfg;
    cfg.n = 6;
    cfg.m = 3;
    cfg.h = Graph::path(3);
    cfg.method = SampleMethod::edge_swap;
    EdgeSwapChain chain(cfg);  // a perfect matching avoids two-edge paths
    CHECK(!injection_contains(chain.current(), cfg.h));
    cfg.m = 4;
    CHECK_THROWS_AS(EdgeSwapChain{cfg}, PreconditionError);
  }
}

TEST_CASE("estimate intervals cover the enumerated fraction") {
  // Exact fraction at five vertices, five edges: 60 of the 72 triangle-free
  // graphs are 2-colourable (the full census test pins this).
  const auto row = census_structure(5, 5, Graph::complete(3), 2, 0);
  REQUIRE(row.fraction.has_value());
  const double exact = 5.0 / 6.0;
  REQUIRE(*row.fraction == Rat(5, 6));

  int covered = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    ChainConfig cfg = triangle_config(5, 5);
    cfg.seed = seed;
    const FractionEstimate est = estimate_grk_fraction(cfg, 2, 0, 400, 4, 200);
    CHECK(est.samples == 400);
    CHECK(est.failures == 0);
    CHECK(est.ci_low <= est.point);
    CHECK(est.point <= est.ci_high);
    if (est.ci_low <= exact && exact <= est.ci_high) ++covered;
  }
  CHECK(covered >= 17);  // ~95% nominal coverage over 20 seeds
}

TEST_CASE("identical configurations reproduce identical streams") {
  SUBCASE("rejection") {
    ChainConfig cfg = triangle_config(6, 6);
    cfg.seed = 929;
    const auto a = sample_rejection(cfg, 100);
    const auto b = sample_rejection(cfg, 100);
    REQUIRE(a.has_value());
    CHECK(*a == *b);
  }
  SUBCASE("edge-swap") {
    ChainConfig cfg = triangle_config(6, 5);
    cfg.method = SampleMethod::edge_swap;
    cfg.burn_in = 100;
    cfg.thin = 3;
    cfg.seed = 937;
    EdgeSwapChain a(cfg);
    EdgeSwapChain b(cfg);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  }
  SUBCASE("pooled estimates") {
    ChainConfig cfg = triangle_config(6, 6);
    cfg.seed = 941;
    const FractionEstimate a = estimate_grk_fraction(cfg, 2, 0, 300, 5, 100);
    const FractionEstimate b = estimate_grk_fraction(cfg, 2, 0, 300, 5, 100);
    CHECK(a.samples == b.samples);
    CHECK(a.successes == b.successes);
    CHECK(a.failures == b.failures);
    CHECK(a.point == b.point);
    CHECK(a.ci_low == b.ci_low);
    CHECK(a.ci_high == b.ci_high);

    cfg.method = SampleMethod::edge_swap;
    cfg.burn_in = 200;
    cfg.thin = 5;
    const FractionEstimate c = estimate_grk_fraction(cfg, 2, 0, 200, 3);
    const FractionEstimate d = estimate_grk_fraction(cfg, 2, 0, 200, 3);
    CHECK(c.successes == d.successes);
    CHECK(c.point == d.point);
    CHECK(c.samples == 200);
  }
}

TEST_CASE("sampling configurations are validated") {
  ChainConfig cfg = triangle_config(5, 4);

  ChainConfig swapped = cfg;
  swapped.method = SampleMethod::edge_swap;
  CHECK_THROWS_AS(sample_rejection(swapped, 10), PreconditionError);
  CHECK_THROWS_AS(EdgeSwapChain{cfg}, PreconditionError);

  ChainConfig bad = swapped;
  bad.burn_in = 0;
  CHECK_THROWS_AS(EdgeSwapChain{bad}, PreconditionError);
  bad = swapped;
  bad.thin = 0;
  CHECK_THROWS_AS(EdgeSwapChain{bad}, PreconditionError);

  bad = cfg;
  bad.m = 11;
  CHECK_THROWS_AS(sample_rejection(bad, 10), PreconditionError);
  bad.m = -1;
  CHECK_THROWS_AS(sample_rejection(bad, 10), PreconditionError);
  bad = cfg;
  bad.h = Graph(3);
  CHECK_THROWS_AS(sample_rejection(bad, 10), PreconditionError);

  CHECK_THROWS_AS(sample_rejection(cfg, 0), PreconditionError);
  CHECK_THROWS_AS(estimate_grk_fraction(cfg, 0, 0, 10), PreconditionError);
  CHECK_THROWS_AS(estimate_grk_fraction(cfg, 2, -1, 10), PreconditionError);
  CHECK_THROWS_AS(estimate_grk_fraction(cfg, 2, 0, -1), PreconditionError);
  CHECK_THROWS_AS(estimate_grk_fraction(cfg, 2, 0, 10, 0), PreconditionError);
  CHECK_THROWS_AS(estimate_grk_fraction(cfg, 2, 0, 10, 2, 0),
                  PreconditionError);
}
