#include "hfree/census.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <utility>

#include "hfree/errors.hpp"
#include "hfree/partitions.hpp"

namespace hfree {
namespace {

struct Counts {
  BigInt h_free;
  BigInt in_grk;
  BigInt both;
};

// Per-worker accumulator: one bucket per edge count.
struct Tally {
  std::vector<Counts> rows;

  explicit Tally(int buckets) : rows(static_cast<std::size_t>(buckets)) {}

  void absorb(const Tally& other) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      rows[i].h_free += other.rows[i].h_free;
      rows[i].in_grk += other.rows[i].in_grk;
      rows[i].both += other.rows[i].both;
    }
  }
};

// Records what one edge application changed, so the search can back out.
struct UndoFrame {
  enum class Mode { plain, bumped, replaced };
  Mode mode = Mode::plain;
  std::vector<int> colour;
  std::vector<int> mono;
};

// Depth-first walk over the subsets of the candidate edge list in
// lexicographic order.  Each subset is reached along exactly one path (its
// sorted edge sequence), so tallying at every node counts each graph once.
//
// Both tracked properties are preserved by edge deletion, so once a node
// loses both, its whole subtree is dead and the branch is cut.  The
// pattern-free flag updates with a containment check through the added edge;
// the colouring flag keeps a live witness and only re-searches when an added
// edge saturates a colour class.
class SubsetScan {
 public:
  SubsetScan(const Graph& pattern, int n, int r, int k, bool track_grk,
             int lo, int hi, const std::vector<std::pair<int, int>>& edges)
      : pattern_(pattern),
        g_(n),
        r_(r),
        k_(k),
        track_grk_(track_grk),
        lo_(lo),
        hi_(hi),
        edges_(edges),
        n_candidates_(static_cast<int>(edges.size())),
        colour_(static_cast<std::size_t>(n), 0),
        mono_(static_cast<std::size_t>(n), 0),
        tally_(static_cast<int>(edges.size()) + 1) {}

  // Tallies the empty set and, when the sweep reaches that deep, every
  // single-edge subset.  Deeper nodes belong to two-edge prefix chunks.
  void run_prologue() {
    tally_node(0, true, track_grk_);
    if (hi_ < 1) return;
    for (int idx = 0; idx < n_candidates_; ++idx) {
      UndoFrame frame;
      auto [h_live, grk_live] = enter(idx, true, track_grk_, frame);
      if (h_live || grk_live) tally_node(1, h_live, grk_live);
      leave(idx, frame);
    }
  }

  // Walks the subtree of subsets whose first two edges are exactly
  // (edges_[i], edges_[j]).
  void run_chunk(int i, int j) {
    UndoFrame first;
    auto [h1, grk1] = enter(i, true, track_grk_, first);
    if (h1 || grk1) {
      UndoFrame second;
      auto [h2, grk2] = enter(j, h1, grk1, second);
      if (h2 || grk2) dfs(j + 1, 2, h2, grk2);
      leave(j, second);
    }
    leave(i, first);
  }

  Tally& tally() { return tally_; }

 private:
  void tally_node(int depth, bool h_live, bool grk_live) {
    Counts& row = tally_.rows[static_cast<std::size_t>(depth)];
    if (h_live) ++row.h_free;
    if (grk_live) ++row.in_grk;
    if (h_live && grk_live) ++row.both;
  }

  void dfs(int next, int depth, bool h_live, bool grk_live) {
    tally_node(depth, h_live, grk_live);
    if (depth == hi_) return;
    // Taking index idx leaves n_candidates_ - idx - 1 later candidates, so
    // the deepest reachable level is depth + n_candidates_ - idx.
    const int last = std::min(n_candidates_ - 1, n_candidates_ + depth - lo_);
    for (int idx = next; idx <= last; ++idx) {
      UndoFrame frame;
      auto [h2, grk2] = enter(idx, h_live, grk_live, frame);
      if (h2 || grk2) dfs(idx + 1, depth + 1, h2, grk2);
      leave(idx, frame);
    }
  }

  // Adds candidate edge idx to the running graph, updates the witness
  // state, and returns the liveness flags of the child node.
  std::pair<bool, bool> enter(int idx, bool h_live, bool grk_live,
                              UndoFrame& frame) {
    const auto [u, v] = edges_[static_cast<std::size_t>(idx)];
    g_.add_edge(u, v);
    const bool h_next =
        h_live && !contains_subgraph_through_edge(g_, pattern_, u, v);
    bool grk_next = grk_live;
    if (grk_live) {
      if (colour_[static_cast<std::size_t>(u)] !=
          colour_[static_cast<std::size_t>(v)]) {
        // Witness survives unchanged: the new edge is crossing.
      } else if (mono_[static_cast<std::size_t>(u)] < k_ &&
                 mono_[static_cast<std::size_t>(v)] < k_) {
        ++mono_[static_cast<std::size_t>(u)];
        ++mono_[static_cast<std::size_t>(v)];
        frame.mode = UndoFrame::Mode::bumped;
      } else {
        const auto witness = in_grk(g_, r_, k_);
        if (witness) {
          frame.mode = UndoFrame::Mode::replaced;
          frame.colour = std::move(colour_);
          frame.mono = std::move(mono_);
          colour_ = witness->partition.assignment();
          recompute_mono();
        } else {
          grk_next = false;
        }
      }
    }
    return {h_next, grk_next};
  }

  void leave(int idx, UndoFrame& frame) {
    const auto [u, v] = edges_[static_cast<std::size_t>(idx)];
    switch (frame.mode) {
      case UndoFrame::Mode::plain:
        break;
      case UndoFrame::Mode::bumped:
        --mono_[static_cast<std::size_t>(u)];
        --mono_[static_cast<std::size_t>(v)];
        break;
      case UndoFrame::Mode::replaced:
        colour_ = std::move(frame.colour);
        mono_ = std::move(frame.mono);
        break;
    }
    g_.remove_edge(u, v);
  }

  void recompute_mono() {
    const int n = g_.vertex_count();
    mono_.assign(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (g_.has_edge(u, v) &&
            colour_[static_cast<std::size_t>(u)] ==
                colour_[static_cast<std::size_t>(v)]) {
          ++mono_[static_cast<std::size_t>(u)];
          ++mono_[static_cast<std::size_t>(v)];
        }
  }

  const Graph& pattern_;
  Graph g_;
  int r_;
  int k_;
  bool track_grk_;
  int lo_;
  int hi_;
  const std::vector<std::pair<int, int>>& edges_;
  int n_candidates_;
  std::vector<int> colour_;
  std::vector<int> mono_;
  Tally tally_;
};

std::vector<std::pair<int, int>> candidate_edges(int n) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return edges;
}

void check_host(int n, const Graph& h, const CensusOptions& opts) {
  if (n < 0) throw PreconditionError("census: host size must be nonnegative");
  if (n > opts.limit)
    throw PreconditionError("census: host size exceeds the enumeration limit");
  if (opts.threads < 1)
    throw PreconditionError("census: thread count must be at least 1");
  if (h.edge_count() < 1)
    throw PreconditionError("census: pattern graph must have an edge");
}

void check_edge_count(int n, int m) {
  const int total = n * (n - 1) / 2;
  if (m < 0 || m > total)
    throw PreconditionError("census: edge count out of range");
}

// Runs the chunked enumeration and returns buckets for every edge count in
// [lo, hi].  Chunks are dealt to workers through an atomic cursor; each
// worker owns a private tally and the final reduction is a commutative sum,
// so the result is independent of the thread count and of scheduling.
Tally run_scan(int n, const Graph& h, int r, int k, bool track_grk, int lo,
               int hi, const CensusOptions& opts) {
  const auto edges = candidate_edges(n);
  const int n_candidates = static_cast<int>(edges.size());

  SubsetScan main_scan(h, n, r, k, track_grk, lo, hi, edges);
  main_scan.run_prologue();
  if (hi < 2) return std::move(main_scan.tally());

  std::vector<std::pair<int, int>> chunks;
  for (int i = 0; i < n_candidates; ++i)
    for (int j = i + 1; j < n_candidates; ++j)
      if (2 + n_candidates - j - 1 >= lo) chunks.emplace_back(i, j);

  const int workers = std::min(opts.threads, static_cast<int>(chunks.size()));
  if (workers == 1) {
    for (const auto& [i, j] : chunks) main_scan.run_chunk(i, j);
    return std::move(main_scan.tally());
  }

  std::atomic<std::size_t> cursor{0};
  std::vector<SubsetScan> scans;
  scans.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    scans.emplace_back(h, n, r, k, track_grk, lo, hi, edges);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (;;) {
        const std::size_t at = cursor.fetch_add(1);
        if (at >= chunks.size()) break;
        scans[static_cast<std::size_t>(w)].run_chunk(chunks[at].first,
                                                     chunks[at].second);
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& s : scans) main_scan.tally().absorb(s.tally());
  return std::move(main_scan.tally());
}

CensusResult make_row(int n, int m, const Counts& counts) {
  CensusResult row;
  row.n = n;
  row.m = m;
  row.total = binomial(n * (n - 1) / 2, m);
  row.h_free = counts.h_free;
  row.in_grk = counts.in_grk;
  row.h_free_and_grk = counts.both;
  if (row.h_free > 0) row.fraction = Rat(row.h_free_and_grk, row.h_free);
  return row;
}

}  // namespace

BigInt count_h_free(int n, int m, const Graph& h, const CensusOptions& opts) {
  check_host(n, h, opts);
  check_edge_count(n, m);
  const Tally tally = run_scan(n, h, 1, 0, false, m, m, opts);
  return tally.rows[static_cast<std::size_t>(m)].h_free;
}

CensusResult census_structure(int n, int m, const Graph& h, int r, int k,
                              const CensusOptions& opts) {
  check_host(n, h, opts);
  check_edge_count(n, m);
  if (r < 1) throw PreconditionError("census: need at least one colour class");
  if (k < 0) throw PreconditionError("census: degree cap must be nonnegative");
  const Tally tally = run_scan(n, h, r, k, true, m, m, opts);
  return make_row(n, m, tally.rows[static_cast<std::size_t>(m)]);
}

std::vector<CensusResult> census_sweep(int n, const Graph& h, int r, int k,
                                       const std::vector<int>& m_range,
                                       const CensusOptions& opts) {
  check_host(n, h, opts);
  if (r < 1) throw PreconditionError("census: need at least one colour class");
  if (k < 0) throw PreconditionError("census: degree cap must be nonnegative");
  for (const int m : m_range) check_edge_count(n, m);
  std::vector<int> ms = m_range;
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  if (ms.empty()) return {};
  const Tally tally =
      run_scan(n, h, r, k, true, ms.front(), ms.back(), opts);
  std::vector<CensusResult> rows;
  rows.reserve(ms.size());
  for (const int m : ms)
    rows.push_back(make_row(n, m, tally.rows[static_cast<std::size_t>(m)]));
  return rows;
}

}  // namespace hfree
