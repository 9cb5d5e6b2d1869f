#include "hfree/partitions.hpp"

#include <algorithm>
#include <numeric>

#include "hfree/errors.hpp"

namespace hfree {

Partition::Partition(int r, std::vector<int> assign)
    : r_(r), assign_(std::move(assign)), sizes_(std::size_t(std::max(r, 0))) {
  if (r < 1) throw PreconditionError("Partition: need at least one class");
  for (int c : assign_) {
    if (c < 0 || c >= r)
      throw PreconditionError("Partition: class index out of range");
    ++sizes_[c];
  }
}

Partition Partition::from_classes(int n,
                                  const std::vector<std::vector<int>>& classes) {
  std::vector<int> assign(std::size_t(std::max(n, 0)), -1);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (int v : classes[c]) {
      if (v < 0 || v >= n)
        throw PreconditionError("Partition: vertex out of range");
      if (assign[v] != -1)
        throw PreconditionError("Partition: classes overlap");
      assign[v] = int(c);
    }
  }
  for (int c : assign)
    if (c == -1) throw PreconditionError("Partition: classes do not cover");
  return Partition(int(classes.size()), std::move(assign));
}

std::vector<std::vector<int>> Partition::classes() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(r_));
  for (int v = 0; v < n(); ++v) out[assign_[v]].push_back(v);
  return out;
}

bool is_balanced(const Partition& p, const Rat& gamma) {
  const Rat inv_r(1, p.r());
  if (gamma <= 0 || gamma >= inv_r)
    throw PreconditionError("is_balanced: need 0 < gamma < 1/r");
  const Rat lower = (inv_r - gamma) * p.n();
  const Rat upper = (inv_r + gamma) * p.n();
  for (int i = 0; i < p.r(); ++i) {
    const Rat size(p.class_size(i));
    if (size < lower || size > upper) return false;
  }
  return true;
}

long partition_edge_count(const Partition& p) {
  long sum_sq = 0;
  for (int i = 0; i < p.r(); ++i) sum_sq += p.class_size(i) * p.class_size(i);
  return (long(p.n()) * p.n() - sum_sq) / 2;
}

PartitionEdgeReport partition_edge_report(const Partition& p,
                                          const Rat& gamma) {
  PartitionEdgeReport rep;
  rep.edges = partition_edge_count(p);
  rep.balanced = is_balanced(p, gamma);
  const long n = p.n();
  if (rep.balanced) {
    const Rat floor = (1 - 2 * p.r() * gamma) * Rat(p.r() - 1, p.r()) *
                      Rat(n * n, 2);
    rep.bound_holds = Rat(rep.edges) >= floor;
  } else {
    const Rat cap = (1 - gamma * gamma / 3) * ex_turan(n, p.r());
    rep.bound_holds = Rat(rep.edges) <= cap;
  }
  return rep;
}

Graph mono_graph(const Graph& g, const Partition& p) {
  if (g.vertex_count() != p.n())
    throw PreconditionError("mono_graph: vertex count mismatch");
  Graph out(g.vertex_count());
  for (const Edge& e : g.edges())
    if (p.same_class(e.u, e.v)) out.add_edge(e.u, e.v);
  return out;
}

namespace {

// Depth-first search over canonical colourings (classes appear in first-use
// order), pruning on any within-class degree above k.
struct GrkSearch {
  const Graph& g;
  int r, k;
  std::vector<int> order;    // vertices, descending degree
  std::vector<int> colour;   // by vertex; -1 while unassigned
  std::vector<int> mono;     // within-class degree among assigned vertices

  bool walk(std::size_t depth, int used) {
    if (depth == order.size()) return true;
    const int v = order[depth];
    const int limit = std::min(r - 1, used);
    for (int c = 0; c <= limit; ++c) {
      int own = 0;
      bool ok = true;
      for (int u = 0; u < g.vertex_count() && ok; ++u) {
        if (colour[u] != c || !g.has_edge(v, u)) continue;
        ++own;
        if (own > k || mono[u] + 1 > k) ok = false;
      }
      if (!ok) continue;
      colour[v] = c;
      mono[v] = own;
      for (int u = 0; u < g.vertex_count(); ++u)
        if (colour[u] == c && u != v && g.has_edge(v, u)) ++mono[u];
      if (walk(depth + 1, std::max(used, c + 1))) return true;
      for (int u = 0; u < g.vertex_count(); ++u)
        if (colour[u] == c && u != v && g.has_edge(v, u)) --mono[u];
      colour[v] = -1;
      mono[v] = 0;
    }
    return false;
  }
};

}  // namespace

std::optional<GrkWitness> in_grk(const Graph& g, int r, int k) {
  if (r < 1 || k < 0) throw PreconditionError("in_grk: need r >= 1, k >= 0");
  const int n = g.vertex_count();
  GrkSearch search{g, r, k, {}, std::vector<int>(std::size_t(n), -1),
                   std::vector<int>(std::size_t(n), 0)};
  search.order.resize(std::size_t(n));
  std::iota(search.order.begin(), search.order.end(), 0);
  std::stable_sort(search.order.begin(), search.order.end(),
                   [&](int a, int b) { return g.degree(a) > g.degree(b); });
  if (!search.walk(0, 0)) return std::nullopt;
  int max_mono = 0;
  for (int v = 0; v < n; ++v) max_mono = std::max(max_mono, search.mono[v]);
  return GrkWitness{Partition(r, std::move(search.colour)), max_mono};
}

BigInt count_gpb(const Partition& p, const Graph& b, long m) {
  if (b.vertex_count() != p.n())
    throw PreconditionError("count_gpb: vertex count mismatch");
  for (const Edge& e : b.edges())
    if (!p.same_class(e.u, e.v))
      throw InputError("count_gpb: B has a cross-class edge");
  return binomial(partition_edge_count(p), m - b.edge_count());
}

long ex_turan(long n, int r) {
  if (r < 1) throw PreconditionError("ex_turan: need r >= 1");
  if (n < 0) throw PreconditionError("ex_turan: need n >= 0");
  long sum_sq = 0;
  for (int i = 0; i < r; ++i) {
    const long size = n / r + (i < n % r ? 1 : 0);
    sum_sq += size * size;
  }
  return (n * n - sum_sq) / 2;
}

}  // namespace hfree
