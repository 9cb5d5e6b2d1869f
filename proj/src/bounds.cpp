#include "hfree/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "hfree/errors.hpp"
#include "hfree/rng.hpp"
#include "hfree/thresholds.hpp"

namespace hfree {

namespace {

void check_family(const SubsetFamily& fam, int max_omega) {
  if (fam.omega_size < 1 || fam.omega_size > max_omega) {
    throw PreconditionError("ground set size must be between 1 and " +
                            std::to_string(max_omega));
  }
  if (fam.omega_size < 64) {
    for (std::uint64_t set : fam.sets) {
      if ((set >> fam.omega_size) != 0) {
        throw PreconditionError("family member uses elements outside the ground set");
      }
    }
  }
}

void check_subset_count(int m, int omega_size) {
  if (m < 0 || m > omega_size) {
    throw PreconditionError("subset size must lie between 0 and the ground set size");
  }
}

// Next bitmask with the same popcount (Gosper); enumeration starts from the
// lowest pattern and the caller stops once the mask spills past the range.
std::uint64_t next_same_popcount(std::uint64_t x) {
  const std::uint64_t low = x & (~x + 1);
  const std::uint64_t carry = x + low;
  return carry | (((x ^ carry) >> 2) / low);
}

// ---- exact extremal numbers for complete multipartite hosts -------------

// Maximum edge count of a subgraph of K_{n,n} with no s rows sharing s
// common columns.  Rows are explored in (popcount, value)-non-increasing
// order, which is a canonical form under row permutations and makes
// "remaining rows add at most popcount(current) each" a valid cut.
long bipartite_exact_ex(int n, int s) {
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint32_t> order;
  order.reserve(full + 1u);
  for (std::uint32_t v = 0; v <= full; ++v) order.push_back(v);
  std::sort(order.begin(), order.end(), [](std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a);
    const int pb = std::popcount(b);
    return pa != pb ? pa > pb : a > b;
  });

  long best = 0;
  long cur = 0;
  std::vector<std::uint32_t> rows;
  rows.reserve(static_cast<std::size_t>(n));

  auto admissible = [&](std::uint32_t cand) {
    const int chosen = static_cast<int>(rows.size());
    const int need = s - 1;
    if (chosen < need) return true;
    for (std::uint32_t sel = 0; sel < (1u << chosen); ++sel) {
      if (std::popcount(sel) != need) continue;
      std::uint32_t common = cand;
      for (int t = 0; t < chosen; ++t) {
        if (sel >> t & 1) common &= rows[static_cast<std::size_t>(t)];
      }
      if (std::popcount(common) >= s) return false;
    }
    return true;
  };

  std::function<void(std::size_t, int)> dfs = [&](std::size_t from, int placed) {
    best = std::max(best, cur);
    if (placed == n) return;
    for (std::size_t pos = from; pos < order.size(); ++pos) {
      const std::uint32_t cand = order[pos];
      const long cap = std::popcount(cand);
      if (cur + cap * (n - placed) <= best) return;  // later rows only smaller
      if (!admissible(cand)) continue;
      rows.push_back(cand);
      cur += cap;
      dfs(pos, placed + 1);
      cur -= cap;
      rows.pop_back();
    }
  };
  dfs(0, 0);
  return best;
}

// Copies of K_r(s) inside a subgraph of K_r(n) pick one s-subset per class:
// pattern classes are forced into distinct host classes because every
// cross-class pair is adjacent.  That makes copy enumeration a product of
// C(n, s) choices per class.
struct PartiteSearch {
  int r, n, s;
  int edge_total = 0;
  std::vector<std::uint32_t> class_choices;       // s-subsets of an n-set
  std::vector<std::vector<int>> edge_id;          // [u][v] across classes

  PartiteSearch(int r_in, int n_in, int s_in) : r(r_in), n(n_in), s(s_in) {
    const int v = r * n;
    edge_id.assign(static_cast<std::size_t>(v), std::vector<int>(v, -1));
    for (int a = 0; a < r; ++a) {
      for (int b = a + 1; b < r; ++b) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            const int u = a * n + i;
            const int w = b * n + j;
            edge_id[static_cast<std::size_t>(u)][static_cast<std::size_t>(w)] = edge_total;
            edge_id[static_cast<std::size_t>(w)][static_cast<std::size_t>(u)] = edge_total;
            ++edge_total;
          }
        }
      }
    }
    std::uint32_t mask = (1u << s) - 1;
    const std::uint32_t limit = 1u << n;
    while (mask < limit) {
      class_choices.push_back(mask);
      if (mask == 0) break;  // s == 0 never happens, guard anyway
      mask = static_cast<std::uint32_t>(next_same_popcount(mask));
    }
  }

  // First complete copy in the graph given by `present`, as edge ids.
  std::vector<int> find_copy(const std::vector<char>& present) const {
    std::vector<std::size_t> pick(static_cast<std::size_t>(r), 0);
    for (;;) {
      if (copy_complete(present, pick)) return copy_edges(pick);
      int pos = r - 1;
      while (pos >= 0) {
        if (++pick[static_cast<std::size_t>(pos)] < class_choices.size()) break;
        pick[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) return {};
    }
  }

  bool copy_complete(const std::vector<char>& present,
                     const std::vector<std::size_t>& pick) const {
    for (int a = 0; a < r; ++a) {
      for (int b = a + 1; b < r; ++b) {
        const std::uint32_t ma = class_choices[pick[static_cast<std::size_t>(a)]];
        const std::uint32_t mb = class_choices[pick[static_cast<std::size_t>(b)]];
        for (int i = 0; i < n; ++i) {
          if (!(ma >> i & 1)) continue;
          for (int j = 0; j < n; ++j) {
            if (!(mb >> j & 1)) continue;
            if (!present[static_cast<std::size_t>(
                    edge_id[static_cast<std::size_t>(a * n + i)]
                           [static_cast<std::size_t>(b * n + j)])]) {
              return false;
            }
          }
        }
      }
    }
    return true;
  }

  std::vector<int> copy_edges(const std::vector<std::size_t>& pick) const {
    std::vector<int> edges;
    for (int a = 0; a < r; ++a) {
      for (int b = a + 1; b < r; ++b) {
        const std::uint32_t ma = class_choices[pick[static_cast<std::size_t>(a)]];
        const std::uint32_t mb = class_choices[pick[static_cast<std::size_t>(b)]];
        for (int i = 0; i < n; ++i) {
          if (!(ma >> i & 1)) continue;
          for (int j = 0; j < n; ++j) {
            if (!(mb >> j & 1)) continue;
            edges.push_back(edge_id[static_cast<std::size_t>(a * n + i)]
                                   [static_cast<std::size_t>(b * n + j)]);
          }
        }
      }
    }
    return edges;
  }

  // Edge-disjoint copies found greedily; each needs its own deletion.
  int disjoint_copies(std::vector<char> present) const {
    int count = 0;
    for (;;) {
      const auto copy = find_copy(present);
      if (copy.empty()) return count;
      ++count;
      for (int e : copy) present[static_cast<std::size_t>(e)] = 0;
    }
  }

  // Can `budget` deletions destroy every copy?  Branches over the edges of
  // one copy; edges already committed as kept (`banned`) are not deletable,
  // and each branch keeps its earlier siblings so no deletion set is
  // explored twice.
  bool hits_within(std::vector<char>& present, std::vector<char>& banned,
                   int budget) const {
    const auto copy = find_copy(present);
    if (copy.empty()) return true;
    if (budget <= 0) return false;
    if (disjoint_copies(present) > budget) return false;
    std::vector<int> branch_banned;
    bool ok = false;
    for (int e : copy) {
      if (banned[static_cast<std::size_t>(e)]) continue;
      present[static_cast<std::size_t>(e)] = 0;
      if (hits_within(present, banned, budget - 1)) {
        present[static_cast<std::size_t>(e)] = 1;
        ok = true;
        break;
      }
      present[static_cast<std::size_t>(e)] = 1;
      banned[static_cast<std::size_t>(e)] = 1;
      branch_banned.push_back(e);
    }
    for (int e : branch_banned) banned[static_cast<std::size_t>(e)] = 0;
    return ok;
  }
};

long multipartite_exact_ex(int r, int n, int s) {
  if (r == 2) return bipartite_exact_ex(n, s);
  const PartiteSearch search(r, n, s);
  std::vector<char> present(static_cast<std::size_t>(search.edge_total), 1);
  const int start = search.disjoint_copies(present);
  for (int t = std::max(start, 1);; ++t) {
    std::vector<char> work = present;
    std::vector<char> banned(static_cast<std::size_t>(search.edge_total), 0);
    if (search.hits_within(work, banned, t)) {
      return static_cast<long>(search.edge_total) - t;
    }
  }
}

}  // namespace

JansonTerms janson_bound(const SubsetFamily& fam, int m, double q) {
  check_family(fam, 64);
  check_subset_count(m, fam.omega_size);
  if (!(q >= 0.0 && q <= 1.0)) {
    throw PreconditionError("q must lie in [0, 1]");
  }
  const double p = static_cast<double>(m) / fam.omega_size;
  JansonTerms terms;
  terms.q = q;
  for (std::uint64_t set : fam.sets) {
    terms.mu += std::pow(p, std::popcount(set));
  }
  const std::size_t count = fam.sets.size();
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      if (i == j) continue;
      if ((fam.sets[i] & fam.sets[j]) == 0) continue;
      terms.delta += std::pow(p, std::popcount(fam.sets[i] | fam.sets[j]));
    }
  }
  const double mass = terms.mu + terms.delta;
  terms.q_star = mass > 0.0 ? std::clamp(terms.mu / mass, 0.0, 1.0) : 1.0;
  terms.bound = 2.0 * std::exp(-q * terms.mu + q * q * terms.delta / 2.0);
  return terms;
}

double harris_bound(const SubsetFamily& fam, int m, double eta,
                    HarrisMode mode) {
  check_family(fam, 64);
  check_subset_count(m, fam.omega_size);
  if (2 * m > fam.omega_size) {
    throw PreconditionError("subset size must be at most half the ground set");
  }
  if (!(eta > 0.0 && eta < 1.0)) {
    throw PreconditionError("eta must lie strictly between 0 and 1");
  }
  const double x = (1.0 + eta) * m / fam.omega_size;
  double product = 1.0;
  for (std::uint64_t set : fam.sets) {
    product *= 1.0 - std::pow(x, std::popcount(set));
  }
  const double sign = mode == HarrisMode::literal ? 1.0 : -1.0;
  return product - std::exp(sign * eta * eta * m / 4.0);
}

double hypergeom_lower_tail(int big_n, int m, int k_size, double t) {
  if (big_n < 1) throw PreconditionError("ground set must be nonempty");
  check_subset_count(m, big_n);
  if (k_size < 0 || k_size > big_n) {
    throw PreconditionError("marked set size must lie between 0 and the ground set size");
  }
  if (!(t >= 0.0)) throw PreconditionError("deviation t must be nonnegative");
  if (t == 0.0) return 1.0;
  const double mean_scale =
      2.0 * static_cast<double>(k_size) * m / big_n;
  if (mean_scale == 0.0) return 0.0;  // the event |R ∩ A| < 0 cannot occur
  return std::exp(-t * t / mean_scale);
}

Rat verify_bound_exact(const SubsetFamily& fam, int m) {
  check_family(fam, 20);
  check_subset_count(m, fam.omega_size);
  const int n = fam.omega_size;
  long long survivors = 0;
  std::uint64_t mask = m == 0 ? 0 : (std::uint64_t{1} << m) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (;;) {
    bool clear = true;
    for (std::uint64_t set : fam.sets) {
      if ((set & ~mask) == 0) {
        clear = false;
        break;
      }
    }
    if (clear) ++survivors;
    if (mask == 0) break;
    mask = next_same_popcount(mask);
    if (mask >= limit) break;
  }
  return Rat(BigInt(survivors), binomial(n, m));
}

TuranPartiteBound turan_partite_bound(int n, int r, int s) {
  if (r < 2) throw PreconditionError("at least two classes are required");
  if (s < 1 || s > n) {
    throw PreconditionError("the avoided block size must lie between 1 and the class size");
  }
  TuranPartiteBound result;
  const BigInt host_edges = BigInt(r) * (r - 1) / 2 * n * n;
  result.exact = Rat(host_edges) - Rat(BigInt(n) * n, BigInt(s) * s);
  const BigInt floored =
      numerator(result.exact) / denominator(result.exact);
  result.floor_value = floored.convert_to<long>();
  if (static_cast<long>(r) * n <= 12) {
    result.exhaustive = multipartite_exact_ex(r, n, s);
  }
  return result;
}

DensityReport density_inequality_check(const Graph& h, double c, double p,
                                       long n) {
  const int v_h = h.vertex_count();
  if (v_h < 3) throw PreconditionError("the graph needs at least three vertices");
  if (v_h > 20) throw PreconditionError("subgraph scan supports at most 20 vertices");
  if (h.edge_count() < 1) throw PreconditionError("the graph needs at least one edge");
  if (n < 1) throw PreconditionError("n must be positive");
  if (!(p > 0.0 && p <= 1.0)) throw PreconditionError("p must lie in (0, 1]");
  if (!(c >= 0.0)) throw PreconditionError("C must be nonnegative");
  const double m2 = to_double(two_density(h).value);
  const double floor_p = c * std::pow(static_cast<double>(n), -1.0 / m2);
  if (p < floor_p * (1.0 - 1e-9)) {
    throw PreconditionError("p must be at least C * n^(-1/m2)");
  }

  // Max induced edge count per subset size; only (v, e) enters the
  // inequality, so these maxima delimit every realizable subgraph shape.
  std::vector<long> max_edges(static_cast<std::size_t>(v_h) + 1, 0);
  const std::uint64_t limit = std::uint64_t{1} << v_h;
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    const int size = std::popcount(mask);
    max_edges[static_cast<std::size_t>(size)] =
        std::max(max_edges[static_cast<std::size_t>(size)],
                 static_cast<long>(h.induced_edge_count(mask)));
  }

  const double log_n = std::log(static_cast<double>(n));
  const double log_p = std::log(p);
  DensityReport report;
  report.all_hold = true;
  for (int v = 1; v <= v_h; ++v) {
    for (long e = 1; e <= max_edges[static_cast<std::size_t>(v)]; ++e) {
      const double log_lhs = v * log_n + e * log_p;
      double log_rhs = 2.0 * log_n + log_p;
      if (e > 1) {
        log_rhs = c > 0.0 ? log_rhs + (e - 1) * std::log(c)
                          : -std::numeric_limits<double>::infinity();
      }
      DensityClassCheck check;
      check.vertices = v;
      check.edges = static_cast<int>(e);
      check.lhs = std::exp(log_lhs);
      check.rhs = std::exp(log_rhs);
      check.holds = log_lhs >= log_rhs - 1e-9;
      report.all_hold = report.all_hold && check.holds;
      report.classes.push_back(check);
    }
  }
  return report;
}

DsetsReport dsets_probe(const std::vector<int>& u_sizes,
                        const std::vector<std::vector<int>>& tuples, int d,
                        double alpha, double lambda, long trials,
                        std::uint64_t seed) {
  const int z = static_cast<int>(u_sizes.size());
  if (z < 1) throw PreconditionError("at least one ground set is required");
  int min_size = std::numeric_limits<int>::max();
  for (int size : u_sizes) {
    if (size < 1 || size > 64) {
      throw PreconditionError("ground set sizes must lie between 1 and 64");
    }
    min_size = std::min(min_size, size);
  }
  if (d < 2 || d > min_size) {
    throw PreconditionError("d must lie between 2 and the smallest ground set size");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw PreconditionError("alpha must lie in (0, 1]");
  }
  if (!(lambda >= 0.0)) throw PreconditionError("lambda must be nonnegative");
  for (const auto& tuple : tuples) {
    if (static_cast<int>(tuple.size()) != z) {
      throw PreconditionError("every tuple must name one element per ground set");
    }
    for (int i = 0; i < z; ++i) {
      if (tuple[static_cast<std::size_t>(i)] < 0 ||
          tuple[static_cast<std::size_t>(i)] >= u_sizes[static_cast<std::size_t>(i)]) {
        throw PreconditionError("tuple entry outside its ground set");
      }
    }
  }

  const double cut = lambda * std::pow(static_cast<double>(d), z);
  auto window_exceeds = [&](const std::vector<std::uint64_t>& windows) {
    long inside = 0;
    for (const auto& tuple : tuples) {
      bool in = true;
      for (int i = 0; i < z; ++i) {
        if (!(windows[static_cast<std::size_t>(i)] >>
                  tuple[static_cast<std::size_t>(i)] &
              1)) {
          in = false;
          break;
        }
      }
      if (in) ++inside;
    }
    return static_cast<double>(inside) > cut;
  };

  DsetsReport report;
  report.alpha_cut = std::pow(alpha, d);

  BigInt space = 1;
  for (int size : u_sizes) space *= binomial(size, d);
  if (space <= 1000000) {
    // Odometer over per-coordinate same-popcount enumerations.
    std::vector<std::uint64_t> windows(static_cast<std::size_t>(z));
    auto first_window = [&](int i) {
      windows[static_cast<std::size_t>(i)] = (std::uint64_t{1} << d) - 1;
    };
    for (int i = 0; i < z; ++i) first_window(i);
    long long exceed = 0;
    long long total = 0;
    for (;;) {
      ++total;
      if (window_exceeds(windows)) ++exceed;
      int pos = z - 1;
      while (pos >= 0) {
        const std::uint64_t next =
            next_same_popcount(windows[static_cast<std::size_t>(pos)]);
        if (next < (std::uint64_t{1} << u_sizes[static_cast<std::size_t>(pos)])) {
          windows[static_cast<std::size_t>(pos)] = next;
          break;
        }
        first_window(pos);
        --pos;
      }
      if (pos < 0) break;
    }
    report.fraction =
        total == 0 ? 0.0 : static_cast<double>(exceed) / static_cast<double>(total);
    report.exhaustive = true;
    report.evaluated = total;
    return report;
  }

  if (trials < 1) {
    throw PreconditionError("a positive trial count is required for sampling");
  }
  Rng rng(seed);
  std::vector<int> scratch;
  long long exceed = 0;
  std::vector<std::uint64_t> windows(static_cast<std::size_t>(z));
  for (long trial = 0; trial < trials; ++trial) {
    for (int i = 0; i < z; ++i) {
      const int size = u_sizes[static_cast<std::size_t>(i)];
      scratch.resize(static_cast<std::size_t>(size));
      for (int v = 0; v < size; ++v) scratch[static_cast<std::size_t>(v)] = v;
      std::uint64_t mask = 0;
      for (int t = 0; t < d; ++t) {
        const auto j =
            t + static_cast<int>(rng.below(static_cast<std::uint64_t>(size - t)));
        std::swap(scratch[static_cast<std::size_t>(t)],
                  scratch[static_cast<std::size_t>(j)]);
        mask |= std::uint64_t{1} << scratch[static_cast<std::size_t>(t)];
      }
      windows[static_cast<std::size_t>(i)] = mask;
    }
    if (window_exceeds(windows)) ++exceed;
  }
  report.fraction = static_cast<double>(exceed) / static_cast<double>(trials);
  report.exhaustive = false;
  report.evaluated = trials;
  return report;
}

}  // namespace hfree
