#pragma once

#include <vector>

#include "hfree/criticality.hpp"
#include "hfree/graph.hpp"
#include "hfree/numeric.hpp"

namespace hfree {

// Which closed form governs the enumeration threshold for a given H.
enum class Regime {
  two_density,  // n^{2 - 1/m2}
  criticality,  // n^{2 - 1/eta} (ln n)^{1/(zeta - k - 1)}
};

const char* to_string(Regime r);

struct TwoDensity {
  Rat value;           // max over subgraphs K, v_K >= 3, of (e_K - 1)/(v_K - 2)
  VertexMask witness;  // first vertex set (ascending mask order) attaining it
};

// Density pair attached to one critical star.
struct StarDensity {
  Star star;
  Rat eta_i;
  long zeta_i = 0;
};

struct EtaZeta {
  Rat eta;        // min over stars of eta_i
  long zeta = 0;  // max zeta_i among stars attaining that min
  std::vector<StarDensity> per_star;
};

// Everything threshold-shaped about one graph H.
struct ThresholdProfile {
  int chi = 0;
  int k = 0;  // crit(H) - 1
  int r = 0;  // chi - 1
  Rat m2;
  bool strictly_2_balanced = false;
  Rat eta;
  long zeta = 0;
  std::vector<StarDensity> per_star;
  Regime regime = Regime::criticality;
  long e_h = 0;
  long v_h = 0;
};

struct ThresholdValue {
  double value = 0.0;
  Regime regime = Regime::criticality;
};

// Maximum of (e_K - 1)/(v_K - 2) over subgraphs K of H with at least three
// vertices.  For a fixed vertex set the ratio grows with the edge count, so
// the scan runs over induced subgraphs.  Requires v_H >= 3.
TwoDensity two_density(const Graph& h);

// True when that maximum is attained by no proper subgraph of H.
// Requires v_H >= 3.
bool is_strictly_2_balanced(const Graph& h);

// Generalized density (e_F - k + 1)/(v_F - k).  Isolated vertices of F count
// toward v_F.  Requires v_F >= k + 1.
Rat dk_density(const Graph& f, int k);

// For each critical star S_i of the report, over subgraphs F with
// S_i \subsetneq F \subseteq H (any vertex superset of V(S_i), any edge set
// containing S_i's edges, isolated vertices allowed):
//   eta_i = max d_{k+2}(F),  zeta_i = min edge count among maximizers,
// where k = crit(H) - 1.  Returns eta = min eta_i and zeta = max zeta_i over
// the stars attaining eta.  Requires the report to carry critical stars.
EtaZeta eta_zeta(const Graph& h, const CriticalityReport& report);

// Full profile for H.  With min_size_only, only stars with exactly crit(H)
// edges feed the eta/zeta computation (both readings of the star list are
// meaningful; the default keeps every minimal star).
ThresholdProfile threshold_profile(const Graph& h, bool min_size_only = false);

// The enumeration threshold m_H(n):
//   two-density regime  (m2 > eta):  n^{2 - 1/m2}
//   criticality regime (otherwise):  n^{2 - 1/eta} (ln n)^{1/(zeta - k - 1)}
// Natural logarithm.  Requires chi >= 3 and n >= 3.
ThresholdValue threshold_m_H(const ThresholdProfile& profile, long n);

}  // namespace hfree
