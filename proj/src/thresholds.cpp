#include "hfree/thresholds.hpp"

#include <bit>
#include <cmath>
#include <optional>

#include "hfree/errors.hpp"

namespace hfree {

namespace {

// Ascending enumeration of all supersets of `base` inside `universe`.
template <typename Fn>
void for_each_superset(VertexMask base, VertexMask universe, Fn fn) {
  const VertexMask free = universe & ~base;
  VertexMask extra = 0;
  while (true) {
    fn(base | extra);
    if (extra == free) break;
    extra = (extra - free) & free;
  }
}

Rat induced_two_density_term(const Graph& h, VertexMask w) {
  return Rat(h.induced_edge_count(w) - 1, std::popcount(w) - 2);
}

}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::two_density: return "two-density";
    case Regime::criticality: return "criticality";
  }
  return "?";
}

TwoDensity two_density(const Graph& h) {
  if (h.vertex_count() < 3)
    throw PreconditionError("two_density: need at least 3 vertices");
  TwoDensity best{Rat(-1), 0};
  for_each_superset(0, h.vertex_mask(), [&](VertexMask w) {
    if (std::popcount(w) < 3) return;
    const Rat d = induced_two_density_term(h, w);
    if (d > best.value) best = {d, w};
  });
  return best;
}

bool is_strictly_2_balanced(const Graph& h) {
  if (h.vertex_count() < 3)
    throw PreconditionError("is_strictly_2_balanced: need at least 3 vertices");
  const Rat whole = induced_two_density_term(h, h.vertex_mask());
  bool strict = true;
  for_each_superset(0, h.vertex_mask(), [&](VertexMask w) {
    if (std::popcount(w) < 3 || w == h.vertex_mask()) return;
    if (induced_two_density_term(h, w) >= whole) strict = false;
  });
  return strict;
}

Rat dk_density(const Graph& f, int k) {
  if (k < 0 || f.vertex_count() <= k)
    throw PreconditionError("dk_density: need v_F >= k + 1");
  return Rat(f.edge_count() - k + 1, f.vertex_count() - k);
}

EtaZeta eta_zeta(const Graph& h, const CriticalityReport& report) {
  if (report.critical_stars.empty())
    throw PreconditionError("eta_zeta: no critical stars");
  const int k = *report.crit_h - 1;
  EtaZeta out;
  for (const Star& s : report.critical_stars) {
    const VertexMask sv = s.vertex_set();
    const long s_edges = s.edge_count();

    // For a fixed vertex set W the density d_{k+2} grows with the edge
    // count, so eta_i scans full-edge induced subgraphs; the only excluded
    // case is W = V(S_i) when H[W] is S_i itself (the star must be proper).
    std::optional<Rat> eta_i;
    for_each_superset(sv, h.vertex_mask(), [&](VertexMask w) {
      const int size = std::popcount(w);
      if (size < k + 3) return;
      const long edges = h.induced_edge_count(w);
      if (w == sv && edges == s_edges) return;
      const Rat d(edges - k - 1, size - k - 2);
      if (!eta_i || d > *eta_i) eta_i = d;
    });
    if (!eta_i)
      throw PreconditionError(
          "eta_zeta: no admissible subgraph above a critical star");

    // zeta_i: smallest edge count attaining eta_i.  For each W the edge
    // count solving d_{k+2} = eta_i is unique; it is usable when it is an
    // integer inside [lower bound, e(H[W])], where the lower bound keeps
    // the subgraph strictly above the star.
    std::optional<long> zeta_i;
    for_each_superset(sv, h.vertex_mask(), [&](VertexMask w) {
      const int size = std::popcount(w);
      if (size < k + 3) return;
      const Rat e_rat = *eta_i * (size - k - 2) + (k + 1);
      if (!is_integer(e_rat)) return;
      const long e = numerator(e_rat).convert_to<long>();
      const long lower = s_edges + (w == sv ? 1 : 0);
      if (e < lower || e > h.induced_edge_count(w)) return;
      if (!zeta_i || e < *zeta_i) zeta_i = e;
    });
    if (!zeta_i)
      throw InternalError("eta_zeta: maximizer vanished in the zeta scan");
    out.per_star.push_back({s, *eta_i, *zeta_i});
  }

  out.eta = out.per_star.front().eta_i;
  for (const StarDensity& sd : out.per_star)
    if (sd.eta_i < out.eta) out.eta = sd.eta_i;
  out.zeta = 0;
  for (const StarDensity& sd : out.per_star)
    if (sd.eta_i == out.eta && sd.zeta_i > out.zeta) out.zeta = sd.zeta_i;
  return out;
}

ThresholdProfile threshold_profile(const Graph& h, bool min_size_only) {
  CriticalityReport rep = criticality_report(h);
  if (rep.critical_vertices.empty())
    throw PreconditionError("threshold_profile: H is not vertex-critical");
  if (!rep.crit_h)
    throw PreconditionError("threshold_profile: H has no critical star");
  if (min_size_only) rep.critical_stars = critical_stars(h, true);

  const EtaZeta ez = eta_zeta(h, rep);
  ThresholdProfile p;
  p.chi = rep.chi;
  p.k = *rep.crit_h - 1;
  p.r = rep.chi - 1;
  p.m2 = two_density(h).value;
  p.strictly_2_balanced = is_strictly_2_balanced(h);
  p.eta = ez.eta;
  p.zeta = ez.zeta;
  p.per_star = ez.per_star;
  p.regime = p.m2 > p.eta ? Regime::two_density : Regime::criticality;
  p.e_h = h.edge_count();
  p.v_h = h.vertex_count();
  return p;
}

ThresholdValue threshold_m_H(const ThresholdProfile& profile, long n) {
  if (profile.chi < 3)
    throw PreconditionError("threshold_m_H: needs chi >= 3");
  if (n < 3) throw PreconditionError("threshold_m_H: needs n >= 3");
  const double nd = double(n);
  if (profile.regime == Regime::two_density) {
    const double exponent = 2.0 - 1.0 / to_double(profile.m2);
    return {std::pow(nd, exponent), Regime::two_density};
  }
  const long log_denom = profile.zeta - profile.k - 1;
  if (log_denom <= 0)
    throw InternalError("threshold_m_H: degenerate log exponent");
  const double exponent = 2.0 - 1.0 / to_double(profile.eta);
  return {std::pow(nd, exponent) *
              std::pow(std::log(nd), 1.0 / double(log_denom)),
          Regime::criticality};
}

}  // namespace hfree
