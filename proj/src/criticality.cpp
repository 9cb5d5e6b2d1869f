#include "hfree/criticality.hpp"

#include <algorithm>
#include <unordered_map>

namespace hfree {

namespace {

// chi(H \ star) drops by at most one and removing more leaves never raises
// it, so "removal drops chi" is monotone in the leaf set; minimality checks
// only need the one-leaf-removed subsets.
struct StarScan {
  const Graph& h;
  int chi;
  int centre;
  std::unordered_map<VertexMask, bool> memo;

  bool drops(VertexMask leaves) {
    auto it = memo.find(leaves);
    if (it != memo.end()) return it->second;
    const bool d =
        chromatic_number(h.without_star(centre, leaves)) == chi - 1;
    memo.emplace(leaves, d);
    return d;
  }
};

std::vector<int> leaf_list(VertexMask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

constexpr int kMaxStarDegree = 24;  // star enumeration is 2^degree

}  // namespace

const char* to_string(CriticalClass c) {
  switch (c) {
    case CriticalClass::not_vertex_critical: return "not-vertex-critical";
    case CriticalClass::vertex_critical: return "vertex-critical";
    case CriticalClass::simple: return "simple";
    case CriticalClass::plain: return "plain";
  }
  return "?";
}

EdgeCriticality is_edge_critical(const Graph& h) {
  if (h.edge_count() == 0) {
    throw PreconditionError("edge criticality needs at least one edge");
  }
  const int chi = chromatic_number(h);
  EdgeCriticality out;
  for (const Edge& e : h.edges()) {
    if (chromatic_number(h.without_edge(e.u, e.v)) == chi - 1) {
      out.witnesses.push_back(e);
    }
  }
  out.edge_critical = !out.witnesses.empty();
  return out;
}

std::vector<int> critical_vertices(const Graph& h) {
  if (h.vertex_count() == 0) {
    throw PreconditionError("criticality needs a nonempty graph");
  }
  const int chi = chromatic_number(h);
  std::vector<int> out;
  for (int v = 0; v < h.vertex_count(); ++v) {
    if (chromatic_number(h.without_vertex(v)) == chi - 1) out.push_back(v);
  }
  return out;
}

int crit_of_vertex(const Graph& h, int v) {
  const int chi = chromatic_number(h);
  if (v < 0 || v >= h.vertex_count() ||
      chromatic_number(h.without_vertex(v)) != chi - 1) {
    throw PreconditionError("crit is defined only for critical vertices");
  }
  const int deg = h.degree(v);
  if (deg == 0) {
    // Only possible for the single-vertex graph; no star to remove.
    throw PreconditionError("critical vertex has no incident edges");
  }
  if (deg > kMaxStarDegree) {
    throw PreconditionError("vertex degree too large for star enumeration");
  }
  StarScan scan{h, chi, v, {}};
  const std::vector<int> nb = leaf_list(h.neighbors(v));
  int best = deg + 1;
  for (VertexMask pick = 1; pick < (1ull << deg); ++pick) {
    const int size = std::popcount(pick);
    if (size >= best) continue;
    VertexMask leaves = 0;
    for (int i = 0; i < deg; ++i)
      if ((pick >> i) & 1u) leaves |= 1ull << nb[i];
    if (scan.drops(leaves)) best = size;
  }
  if (best > deg) {
    throw PreconditionError("no incident edge set drops the chromatic number");
  }
  return best;
}

std::vector<Star> critical_stars(const Graph& h, bool min_size_only) {
  const std::vector<int> cvs = critical_vertices(h);
  if (cvs.empty()) {
    throw PreconditionError("critical stars require a vertex-critical graph");
  }
  const int chi = chromatic_number(h);
  std::vector<Star> stars;
  for (int v : cvs) {
    const int deg = h.degree(v);
    if (deg == 0) continue;  // single-vertex corner: no stars at all
    if (deg > kMaxStarDegree) {
      throw PreconditionError("vertex degree too large for star enumeration");
    }
    StarScan scan{h, chi, v, {}};
    const std::vector<int> nb = leaf_list(h.neighbors(v));
    for (VertexMask pick = 1; pick < (1ull << deg); ++pick) {
      VertexMask leaves = 0;
      for (int i = 0; i < deg; ++i)
        if ((pick >> i) & 1u) leaves |= 1ull << nb[i];
      if (!scan.drops(leaves)) continue;
      bool minimal = true;
      for (VertexMask rest = leaves; rest && minimal; rest &= rest - 1) {
        const VertexMask x = rest & -rest;
        if (std::popcount(leaves) > 1 && scan.drops(leaves & ~x)) {
          minimal = false;
        }
      }
      if (minimal) stars.push_back({v, leaves});
    }
  }
  std::sort(stars.begin(), stars.end(), [](const Star& a, const Star& b) {
    if (a.centre != b.centre) return a.centre < b.centre;
    return leaf_list(a.leaves) < leaf_list(b.leaves);
  });
  if (min_size_only && !stars.empty()) {
    int crit = stars[0].edge_count();
    for (const Star& s : stars) crit = std::min(crit, s.edge_count());
    std::erase_if(stars, [&](const Star& s) { return s.edge_count() != crit; });
  }
  return stars;
}

namespace {

// Does B have two nonadjacent vertices both of degree exactly d?
bool has_nonadjacent_degree_pair(const Graph& b, int d) {
  std::vector<int> hits;
  for (int v = 0; v < b.vertex_count(); ++v)
    if (b.degree(v) == d) hits.push_back(v);
  for (std::size_t i = 0; i < hits.size(); ++i)
    for (std::size_t j = i + 1; j < hits.size(); ++j)
      if (!b.has_edge(hits[i], hits[j])) return true;
  return false;
}

struct ColouringScan {
  const Graph& h;
  int colours;  // chi - 1
  int crit;
  bool simple_ok = true;
  bool plain_ok = true;
  std::array<int, Graph::kMaxVertices> colour{};

  void evaluate() {
    Graph b(h.vertex_count());
    for (const Edge& e : h.edges())
      if (colour[e.u] == colour[e.v]) b.add_edge(e.u, e.v);
    const bool cyc = b.has_cycle();
    const int maxdeg = b.max_degree();
    if (!cyc && maxdeg < crit) simple_ok = false;
    const bool is_single_star = b.edge_count() == crit && maxdeg == crit;
    if (!(cyc || maxdeg > crit || is_single_star ||
          has_nonadjacent_degree_pair(b, crit))) {
      plain_ok = false;
    }
  }

  // Canonical enumeration: colour classes are interchangeable, so vertex 0
  // gets colour 0 and each vertex may open at most one fresh colour.
  void walk(int v, int used) {
    if (!simple_ok && !plain_ok) return;
    if (v == h.vertex_count()) {
      evaluate();
      return;
    }
    const int limit = std::min(colours - 1, used);
    for (int c = 0; c <= limit; ++c) {
      colour[v] = c;
      walk(v + 1, std::max(used, c + 1));
    }
  }
};

}  // namespace

CriticalClass classify_vertex_critical(const Graph& h) {
  if (h.vertex_count() == 0) {
    throw PreconditionError("classification needs a nonempty graph");
  }
  const std::vector<int> cvs = critical_vertices(h);
  if (cvs.empty()) return CriticalClass::not_vertex_critical;
  const std::vector<Star> stars = critical_stars(h);
  if (stars.empty()) return CriticalClass::vertex_critical;  // K_1 corner
  int crit = stars[0].edge_count();
  for (const Star& s : stars) crit = std::min(crit, s.edge_count());

  ColouringScan scan{h, chromatic_number(h) - 1, crit};
  scan.walk(0, 0);
  if (scan.plain_ok) return CriticalClass::plain;
  if (scan.simple_ok) return CriticalClass::simple;
  return CriticalClass::vertex_critical;
}

CriticalityReport criticality_report(const Graph& h) {
  if (h.vertex_count() == 0) {
    throw PreconditionError("criticality report needs a nonempty graph");
  }
  CriticalityReport rep;
  rep.chi = chromatic_number(h);
  rep.critical_vertices = critical_vertices(h);
  if (!rep.critical_vertices.empty()) {
    rep.critical_stars = critical_stars(h);
    for (int v : rep.critical_vertices) {
      if (h.degree(v) > 0 && rep.chi >= 2) {
        rep.crit_per_vertex[v] = crit_of_vertex(h, v);
      }
    }
    for (const auto& [v, c] : rep.crit_per_vertex) {
      rep.crit_h = rep.crit_h ? std::min(*rep.crit_h, c) : c;
    }
  }
  rep.classification = classify_vertex_critical(h);
  return rep;
}

}  // namespace hfree
