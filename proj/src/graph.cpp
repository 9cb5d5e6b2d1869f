#include "hfree/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace hfree {

namespace {

int lowest_bit(VertexMask m) { return std::countr_zero(m); }

}  // namespace

Graph::Graph(int n) : n_(n) {
  if (n < 0 || n > kMaxVertices) {
    throw PreconditionError("vertex count out of range 0..64");
  }
}

void Graph::check_pair(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) {
    throw PreconditionError("edge endpoints must be distinct vertices");
  }
}

void Graph::add_edge(int u, int v) {
  check_pair(u, v);
  if (has_edge(u, v)) return;
  adj_[u] |= 1ull << v;
  adj_[v] |= 1ull << u;
  ++edge_count_;
}

void Graph::remove_edge(int u, int v) {
  check_pair(u, v);
  if (!has_edge(u, v)) return;
  adj_[u] &= ~(1ull << v);
  adj_[v] &= ~(1ull << u);
  --edge_count_;
}

Graph Graph::from_edges(int n, const EdgeList& edges) {
  Graph g(n);
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v) {
      throw InputError("edge list entry out of range or a loop");
    }
    if (g.has_edge(e.u, e.v)) {
      throw InputError("duplicate edge in edge list");
    }
    g.add_edge(e.u, e.v);
  }
  return g;
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph Graph::cycle(int n) {
  if (n < 3) throw PreconditionError("cycles need at least 3 vertices");
  Graph g(n);
  for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

Graph Graph::path(int n) {
  if (n < 1) throw PreconditionError("paths need at least 1 vertex");
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph Graph::star(int leaves) {
  if (leaves < 1) throw PreconditionError("stars need at least 1 leaf");
  Graph g(leaves + 1);
  for (int v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

Graph Graph::complete_multipartite(const std::vector<int>& class_sizes) {
  if (class_sizes.empty()) {
    throw PreconditionError("need at least one class");
  }
  int total = 0;
  for (int s : class_sizes) {
    if (s < 1) throw PreconditionError("class sizes must be positive");
    total += s;
  }
  Graph g(total);
  int offset_u = 0;
  for (std::size_t a = 0; a < class_sizes.size(); ++a) {
    int offset_v = offset_u + class_sizes[a];
    for (std::size_t b = a + 1; b < class_sizes.size(); ++b) {
      for (int u = offset_u; u < offset_u + class_sizes[a]; ++u)
        for (int v = offset_v; v < offset_v + class_sizes[b]; ++v)
          g.add_edge(u, v);
      offset_v += class_sizes[b];
    }
    offset_u += class_sizes[a];
  }
  return g;
}

Graph Graph::petersen() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);          // outer cycle
    g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
    g.add_edge(i, 5 + i);                // spokes
  }
  return g;
}

int Graph::max_degree() const {
  int best = 0;
  for (int v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

EdgeList Graph::edges() const {
  EdgeList out;
  out.reserve(edge_count_);
  for (int u = 0; u < n_; ++u) {
    VertexMask higher = adj_[u] >> (u + 1);
    while (higher) {
      int v = u + 1 + lowest_bit(higher);
      out.push_back({u, v});
      higher &= higher - 1;
    }
  }
  return out;
}

Graph Graph::without_vertex(int v) const {
  if (v < 0 || v >= n_) throw PreconditionError("vertex out of range");
  Graph g(n_ - 1);
  for (const Edge& e : edges()) {
    if (e.u == v || e.v == v) continue;
    g.add_edge(e.u - (e.u > v), e.v - (e.v > v));
  }
  return g;
}

Graph Graph::without_edge(int u, int v) const {
  check_pair(u, v);
  Graph g = *this;
  g.remove_edge(u, v);
  return g;
}

Graph Graph::without_star(int centre, VertexMask leaves) const {
  if (centre < 0 || centre >= n_) throw PreconditionError("vertex out of range");
  Graph g = *this;
  VertexMask present = leaves & adj_[centre];
  while (present) {
    int v = lowest_bit(present);
    g.remove_edge(centre, v);
    present &= present - 1;
  }
  return g;
}

Graph Graph::induced(VertexMask keep) const {
  keep &= vertex_mask();
  std::array<int, kMaxVertices> label{};
  int m = 0;
  for (int v = 0; v < n_; ++v) {
    if ((keep >> v) & 1u) label[v] = m++;
  }
  Graph g(m);
  for (const Edge& e : edges()) {
    if (((keep >> e.u) & 1u) && ((keep >> e.v) & 1u)) {
      g.add_edge(label[e.u], label[e.v]);
    }
  }
  return g;
}

int Graph::induced_edge_count(VertexMask keep) const {
  keep &= vertex_mask();
  int twice = 0;
  VertexMask rest = keep;
  while (rest) {
    int v = lowest_bit(rest);
    twice += std::popcount(adj_[v] & keep);
    rest &= rest - 1;
  }
  return twice / 2;
}

int Graph::component_count() const {
  VertexMask seen = 0;
  const VertexMask all = vertex_mask();
  int components = 0;
  while (seen != all) {
    VertexMask frontier = 1ull << lowest_bit(all & ~seen);
    ++components;
    while (frontier) {
      seen |= frontier;
      VertexMask next = 0;
      VertexMask f = frontier;
      while (f) {
        int v = lowest_bit(f);
        next |= adj_[v];
        f &= f - 1;
      }
      frontier = next & ~seen;
    }
  }
  return components;
}

bool Graph::connected() const { return n_ <= 1 || component_count() == 1; }

std::vector<Edge> all_pairs(int n) {
  std::vector<Edge> out;
  out.reserve(n * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) out.push_back({u, v});
  return out;
}

// --- graph6 ------------------------------------------------------------

Graph parse_graph6(std::string_view text) {
  if (text.empty()) {
    throw Graph6Error(Graph6Error::Kind::malformed_header, "empty graph6 string");
  }
  const unsigned char head = static_cast<unsigned char>(text[0]);
  if (head == 126) {
    throw Graph6Error(Graph6Error::Kind::unsupported_size,
                      "extended graph6 headers (63+ vertices) not supported");
  }
  if (head < 63 || head > 125) {
    throw Graph6Error(Graph6Error::Kind::malformed_header,
                      "graph6 header byte outside 63..125");
  }
  const int n = head - 63;
  const int bits = n * (n - 1) / 2;
  const int groups = (bits + 5) / 6;
  if (static_cast<int>(text.size()) != 1 + groups) {
    throw Graph6Error(Graph6Error::Kind::bad_length,
                      "graph6 string length does not match vertex count");
  }

  Graph g(n);
  int t = 0;  // running bit index over the packed upper triangle
  for (int grp = 0; grp < groups; ++grp) {
    const unsigned char c = static_cast<unsigned char>(text[1 + grp]);
    if (c < 63 || c > 126) {
      throw Graph6Error(Graph6Error::Kind::bad_character,
                        "graph6 payload byte outside 63..126");
    }
    const unsigned val = c - 63;
    for (int shift = 5; shift >= 0; --shift, ++t) {
      const bool bit = (val >> shift) & 1u;
      if (t < bits) {
        if (bit) {
          // Column order: bit t belongs to the pair (i, j) with j minimal
          // such that j(j-1)/2 > t, i = t - j(j-1)/2.
          int j = 1;
          while ((j + 1) * j / 2 <= t) ++j;
          int i = t - j * (j - 1) / 2;
          g.add_edge(i, j);
        }
      } else if (bit) {
        throw Graph6Error(Graph6Error::Kind::trailing_bits,
                          "nonzero padding bits after final vertex pair");
      }
    }
  }
  return g;
}

std::string encode_graph6(const Graph& g) {
  const int n = g.vertex_count();
  if (n > 62) {
    throw PreconditionError("graph6 encoding supports at most 62 vertices");
  }
  const int bits = n * (n - 1) / 2;
  const int groups = (bits + 5) / 6;
  std::string out;
  out.reserve(1 + groups);
  out.push_back(static_cast<char>(n + 63));
  unsigned group = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      group = (group << 1) | (g.has_edge(i, j) ? 1u : 0u);
      if (++filled == 6) {
        out.push_back(static_cast<char>(group + 63));
        group = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) {
    group <<= (6 - filled);  // zero padding on the low side
    out.push_back(static_cast<char>(group + 63));
  }
  return out;
}

// --- subgraph containment ----------------------------------------------

namespace {

// Degree-ordered backtracking with bitset candidate pruning.
struct Matcher {
  const Graph& host;
  const Graph& pattern;
  std::array<int, Graph::kMaxVertices> order{};   // pattern vertices to place
  std::array<int, Graph::kMaxVertices> image{};   // pattern vertex -> host vertex
  int order_len = 0;
  VertexMask used = 0;
  VertexMask placed = 0;  // pattern vertices already mapped

  bool extend(int depth) {
    if (depth == order_len) return true;
    const int u = order[depth];
    VertexMask cand = ~used & host.vertex_mask();
    VertexMask nbrs = pattern.neighbors(u) & placed;
    while (nbrs) {
      const int w = std::countr_zero(nbrs);
      cand &= host.neighbors(image[w]);
      nbrs &= nbrs - 1;
    }
    const int need = pattern.degree(u);
    while (cand) {
      const int v = std::countr_zero(cand);
      cand &= cand - 1;
      if (host.degree(v) < need) continue;
      image[u] = v;
      used |= 1ull << v;
      placed |= 1ull << u;
      if (extend(depth + 1)) return true;
      used &= ~(1ull << v);
      placed &= ~(1ull << u);
    }
    return false;
  }
};

// Remaining pattern vertices by descending degree (ties by index).
void fill_order(Matcher& m, VertexMask skip) {
  const int pn = m.pattern.vertex_count();
  m.order_len = 0;
  for (int v = 0; v < pn; ++v) {
    if (!((skip >> v) & 1u)) m.order[m.order_len++] = v;
  }
  std::stable_sort(m.order.begin(), m.order.begin() + m.order_len,
                   [&](int a, int b) {
                     return m.pattern.degree(a) > m.pattern.degree(b);
                   });
}

}  // namespace

bool contains_subgraph(const Graph& host, const Graph& pattern) {
  if (pattern.vertex_count() == 0) return true;
  if (pattern.vertex_count() > host.vertex_count()) return false;
  if (pattern.edge_count() > host.edge_count()) return false;
  Matcher m{host, pattern};
  fill_order(m, 0);
  return m.extend(0);
}

bool contains_subgraph_through_edge(const Graph& host, const Graph& pattern,
                                    int u, int v) {
  if (!host.has_edge(u, v)) {
    throw PreconditionError("host edge to cover is not present");
  }
  if (pattern.vertex_count() > host.vertex_count()) return false;
  if (pattern.edge_count() > host.edge_count()) return false;
  for (const Edge& pe : pattern.edges()) {
    for (int flip = 0; flip < 2; ++flip) {
      const int p = flip ? pe.v : pe.u;
      const int q = flip ? pe.u : pe.v;
      if (host.degree(u) < pattern.degree(p)) continue;
      if (host.degree(v) < pattern.degree(q)) continue;
      Matcher m{host, pattern};
      m.image[p] = u;
      m.image[q] = v;
      m.used = (1ull << u) | (1ull << v);
      m.placed = (1ull << p) | (1ull << q);
      fill_order(m, m.placed);
      if (m.extend(0)) return true;
    }
  }
  return false;
}

// --- girth --------------------------------------------------------------

std::optional<int> girth(const Graph& g) {
  const int n = g.vertex_count();
  int best = Graph::kMaxVertices + 1;
  std::array<int, Graph::kMaxVertices> dist{};
  std::array<int, Graph::kMaxVertices> parent{};
  std::array<int, Graph::kMaxVertices> queue{};
  for (int root = 0; root < n; ++root) {
    dist.fill(-1);
    parent.fill(-1);
    int head = 0, tail = 0;
    dist[root] = 0;
    queue[tail++] = root;
    while (head < tail) {
      const int u = queue[head++];
      VertexMask nbrs = g.neighbors(u);
      while (nbrs) {
        const int w = std::countr_zero(nbrs);
        nbrs &= nbrs - 1;
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue[tail++] = w;
        } else if (w != parent[u]) {
          // Non-tree edge closes a walk through the root; a shortest cycle
          // is recovered exactly when the root lies on one.
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  if (best > Graph::kMaxVertices) return std::nullopt;
  return best;
}

// --- colouring ----------------------------------------------------------

namespace {

struct ColorSearch {
  const Graph& g;
  int k;
  std::array<int, Graph::kMaxVertices> order{};
  std::array<VertexMask, Graph::kMaxVertices> classes{};  // one mask per colour

  bool assign(int idx, int max_used) {
    if (idx == g.vertex_count()) return true;
    const int v = order[idx];
    // First-use symmetry breaking: a new colour may only be the next unused.
    const int limit = std::min(k - 1, max_used + 1);
    for (int c = 0; c <= limit; ++c) {
      if (classes[c] & g.neighbors(v)) continue;
      classes[c] |= 1ull << v;
      if (assign(idx + 1, std::max(max_used, c))) return true;
      classes[c] &= ~(1ull << v);
    }
    return false;
  }
};

}  // namespace

bool k_colorable(const Graph& g, int k) {
  if (g.vertex_count() == 0) return true;
  if (k <= 0) return false;
  if (k >= g.vertex_count()) return true;
  ColorSearch s{g, k};
  for (int v = 0; v < g.vertex_count(); ++v) s.order[v] = v;
  // Branch on high-degree vertices first; ties by index.
  std::stable_sort(s.order.begin(), s.order.begin() + g.vertex_count(),
                   [&](int a, int b) { return g.degree(a) > g.degree(b); });
  return s.assign(0, -1);
}

int chromatic_number(const Graph& g) {
  const int n = g.vertex_count();
  if (n == 0) return 0;
  if (g.edge_count() == 0) return 1;

  // Greedy upper bound along the same descending-degree order.
  std::array<int, Graph::kMaxVertices> order{};
  for (int v = 0; v < n; ++v) order[v] = v;
  std::stable_sort(order.begin(), order.begin() + n,
                   [&](int a, int b) { return g.degree(a) > g.degree(b); });
  std::array<VertexMask, Graph::kMaxVertices> classes{};
  int ub = 0;
  for (int i = 0; i < n; ++i) {
    const int v = order[i];
    int c = 0;
    while (classes[c] & g.neighbors(v)) ++c;
    classes[c] |= 1ull << v;
    ub = std::max(ub, c + 1);
  }

  for (int k = 2; k < ub; ++k) {
    if (k_colorable(g, k)) return k;
  }
  return ub;
}

}  // namespace hfree
