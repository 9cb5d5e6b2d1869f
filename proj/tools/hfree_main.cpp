// Command-line front door: invariant reports, threshold evaluation, census
// sweeps, sampling experiments, and bound verification, with CSV/JSON
// emission and a run manifest for every output.
//
// Exit codes: 0 success, 2 input error (bad flags, unparsable graphs or
// files), 3 precondition violation, 4 internal inconsistency or a violated
// inequality in verify-bounds.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hfree/bounds.hpp"
#include "hfree/census.hpp"
#include "hfree/criticality.hpp"
#include "hfree/errors.hpp"
#include "hfree/graph.hpp"
#include "hfree/numeric.hpp"
#include "hfree/rng.hpp"
#include "hfree/sampler.hpp"
#include "hfree/thresholds.hpp"

namespace {

using json = nlohmann::ordered_json;
using hfree::BigInt;
using hfree::Graph;
using hfree::Rat;
using hfree::Rng;

constexpr const char* kToolVersion = "0.1.0";

// Slack applied when a floating-point bound is compared against an exact
// probability; identical to the tolerance pinned in the test suite.
constexpr double kBoundSlack = 1e-12;

std::string now_utc() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Shortest round-trip decimal form, locale-independent.
std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> graph6_lines(const std::string& source) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(source, ec)) return {source};
  std::ifstream in(source);
  if (!in) throw hfree::InputError("cannot read graph file: " + source);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() &&
           (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw hfree::InputError("graph file has no graphs: " + source);
  return lines;
}

std::string single_graph6(const std::string& source) {
  auto lines = graph6_lines(source);
  if (lines.size() != 1) {
    throw hfree::InputError("this subcommand expects exactly one graph, got " +
                            std::to_string(lines.size()));
  }
  return lines.front();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hfree::InputError("cannot open output file: " + path);
  out << content;
  if (!out) throw hfree::InputError("failed writing output file: " + path);
}

json make_manifest(const std::string& subcommand, json parameters,
                   std::optional<std::uint64_t> seed,
                   const std::string& started) {
  json m;
  m["subcommand"] = subcommand;
  m["parameters"] = std::move(parameters);
  m["seed"] = seed ? json(*seed) : json(nullptr);
  m["tool_version"] = kToolVersion;
  m["started"] = started;
  m["finished"] = now_utc();
  return m;
}

// Emits a JSON document to stdout and optionally to a file.
void emit_json(const json& doc, const std::string& out_path) {
  const std::string text = doc.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) write_text(out_path, text);
}

// Writes a CSV body plus its manifest sidecar.  The body carries no
// timestamps, so identical runs produce identical bytes.
void emit_csv(const std::string& body, const std::string& out_path,
              const json& manifest) {
  write_text(out_path, body);
  write_text(out_path + ".manifest.json", manifest.dump(2) + "\n");
  std::cerr << "wrote " << out_path << " and " << out_path
            << ".manifest.json\n";
}

json star_to_json(const hfree::Star& star) {
  json j;
  j["centre"] = star.centre;
  std::vector<int> leaves;
  for (int v = 0; v < 64; ++v) {
    if (star.leaves >> v & 1) leaves.push_back(v);
  }
  j["leaves"] = leaves;
  j["edges"] = star.edge_count();
  return j;
}

json invariant_report(const std::string& g6) {
  const Graph h = hfree::parse_graph6(g6);
  const auto profile = hfree::threshold_profile(h);
  const auto smallest = hfree::threshold_profile(h, true);
  const auto crit = hfree::criticality_report(h);
  const auto edge = hfree::is_edge_critical(h);

  json rep;
  rep["graph6"] = g6;
  rep["vertices"] = h.vertex_count();
  rep["edges"] = h.edge_count();
  rep["chi"] = crit.chi;
  rep["edge_critical"] = edge.edge_critical;
  json critical_edges = json::array();
  for (const auto& e : edge.witnesses) critical_edges.push_back({e.u, e.v});
  rep["critical_edges"] = critical_edges;
  rep["critical_vertices"] = crit.critical_vertices;
  rep["crit"] = crit.crit_h ? json(*crit.crit_h) : json(nullptr);
  json stars = json::array();
  for (const auto& s : crit.critical_stars) stars.push_back(star_to_json(s));
  rep["critical_stars"] = stars;
  rep["class"] = hfree::to_string(crit.classification);
  rep["m2"] = hfree::rat_to_string(profile.m2);
  rep["strictly_2_balanced"] = profile.strictly_2_balanced;
  rep["k"] = profile.k;
  rep["r"] = profile.r;
  rep["eta"] = hfree::rat_to_string(profile.eta);
  rep["zeta"] = profile.zeta;
  rep["regime"] = hfree::to_string(profile.regime);
  // The same densities when only the smallest critical stars are kept.
  rep["smallest_stars_only"] = {
      {"eta", hfree::rat_to_string(smallest.eta)},
      {"zeta", smallest.zeta},
      {"regime", hfree::to_string(smallest.regime)},
  };
  return rep;
}

// ---- subcommand bodies --------------------------------------------------

struct InvariantsArgs {
  std::string graph6;
  std::string out;
};

int run_invariants(const InvariantsArgs& args) {
  const std::string started = now_utc();
  const auto lines = graph6_lines(args.graph6);
  json doc;
  if (lines.size() == 1) {
    doc = invariant_report(lines.front());
  } else {
    json reports = json::array();
    for (const auto& line : lines) reports.push_back(invariant_report(line));
    doc["reports"] = reports;
  }
  doc["manifest"] = make_manifest(
      "invariants", json{{"graph6", args.graph6}}, std::nullopt, started);
  emit_json(doc, args.out);
  return 0;
}

struct ThresholdArgs {
  std::string graph6;
  long n = 0;
  std::string out;
};

int run_threshold(const ThresholdArgs& args) {
  const std::string started = now_utc();
  const auto lines = graph6_lines(args.graph6);
  auto evaluate = [&](const std::string& g6) {
    const Graph h = hfree::parse_graph6(g6);
    const auto profile = hfree::threshold_profile(h);
    const auto result = hfree::threshold_m_H(profile, args.n);
    json j;
    j["graph6"] = g6;
    j["n"] = args.n;
    j["value"] = result.value;
    j["regime"] = hfree::to_string(result.regime);
    j["m2"] = hfree::rat_to_string(profile.m2);
    j["eta"] = hfree::rat_to_string(profile.eta);
    j["zeta"] = profile.zeta;
    return j;
  };
  json doc;
  if (lines.size() == 1) {
    doc = evaluate(lines.front());
  } else {
    json reports = json::array();
    for (const auto& line : lines) reports.push_back(evaluate(line));
    doc["reports"] = reports;
  }
  doc["manifest"] = make_manifest(
      "threshold", json{{"graph6", args.graph6}, {"n", args.n}}, std::nullopt,
      started);
  emit_json(doc, args.out);
  return 0;
}

struct CensusArgs {
  std::string graph6;
  int n = 0;
  int m_min = 0;
  int m_max = -1;
  int r = 0;
  int k = 0;
  int limit = 8;
  int threads = 0;
  std::string out;
};

int run_census(const CensusArgs& args) {
  const std::string started = now_utc();
  const Graph h = hfree::parse_graph6(single_graph6(args.graph6));
  const int pair_count = args.n * (args.n - 1) / 2;
  const int m_max = args.m_max < 0 ? pair_count : args.m_max;
  if (args.m_min > m_max) {
    throw hfree::InputError("m-min exceeds m-max");
  }
  std::vector<int> ms;
  for (int m = args.m_min; m <= m_max; ++m) ms.push_back(m);

  hfree::CensusOptions opts;
  opts.limit = args.limit;
  opts.threads = args.threads;
  const auto rows = hfree::census_sweep(args.n, h, args.r, args.k, ms, opts);

  std::string body = "n,m,total,h_free,in_grk,h_free_and_grk,fraction_num,fraction_den\n";
  for (const auto& row : rows) {
    body += std::to_string(row.n);
    body += ',';
    body += std::to_string(row.m);
    body += ',';
    body += row.total.str();
    body += ',';
    body += row.h_free.str();
    body += ',';
    body += row.in_grk.str();
    body += ',';
    body += row.h_free_and_grk.str();
    body += ',';
    if (row.fraction) {
      body += numerator(*row.fraction).str();
      body += ',';
      body += denominator(*row.fraction).str();
    } else {
      body += ',';
    }
    body += '\n';
  }

  const json manifest = make_manifest(
      "census",
      json{{"graph6", args.graph6},
           {"n", args.n},
           {"m_min", args.m_min},
           {"m_max", m_max},
           {"r", args.r},
           {"k", args.k},
           {"limit", args.limit},
           {"threads", args.threads}},
      std::nullopt, started);
  emit_csv(body, args.out, manifest);
  return 0;
}

struct SampleArgs {
  std::string graph6;
  int n = 0;
  std::vector<int> ms;
  int r = 0;
  int k = 0;
  long samples = 1000;
  std::uint64_t seed = 0;
  std::string method = "rejection";
  long burn_in = 1;
  long thin = 1;
  int chains = 8;
  long max_tries = 1000;
  std::string out;
};

int run_sample(const SampleArgs& args) {
  const std::string started = now_utc();
  const Graph h = hfree::parse_graph6(single_graph6(args.graph6));
  hfree::SampleMethod method;
  if (args.method == "rejection") {
    method = hfree::SampleMethod::rejection;
  } else if (args.method == "edge-swap") {
    method = hfree::SampleMethod::edge_swap;
  } else {
    throw hfree::InputError("unknown method: " + args.method +
                            " (expected rejection or edge-swap)");
  }

  std::string body = "n,m,samples,successes,point,ci_low,ci_high,failures\n";
  for (int m : args.ms) {
    hfree::ChainConfig cfg;
    cfg.n = args.n;
    cfg.m = m;
    cfg.h = h;
    cfg.burn_in = args.burn_in;
    cfg.thin = args.thin;
    cfg.seed = args.seed;
    cfg.method = method;
    const auto est = hfree::estimate_grk_fraction(cfg, args.r, args.k,
                                                  args.samples, args.chains,
                                                  args.max_tries);
    body += std::to_string(args.n);
    body += ',';
    body += std::to_string(m);
    body += ',';
    body += std::to_string(est.samples);
    body += ',';
    body += std::to_string(est.successes);
    body += ',';
    body += fmt_double(est.point);
    body += ',';
    body += fmt_double(est.ci_low);
    body += ',';
    body += fmt_double(est.ci_high);
    body += ',';
    body += std::to_string(est.failures);
    body += '\n';
  }

  json m_list = json::array();
  for (int m : args.ms) m_list.push_back(m);
  const json manifest = make_manifest(
      "sample",
      json{{"graph6", args.graph6},
           {"n", args.n},
           {"m", m_list},
           {"r", args.r},
           {"k", args.k},
           {"samples", args.samples},
           {"method", args.method},
           {"burn_in", args.burn_in},
           {"thin", args.thin},
           {"chains", args.chains},
           {"max_tries", args.max_tries}},
      args.seed, started);
  emit_csv(body, args.out, manifest);
  return 0;
}

// ---- bound verification over a seeded corpus ----------------------------

hfree::SubsetFamily random_family(Rng& rng, int max_omega) {
  hfree::SubsetFamily fam;
  fam.omega_size = 4 + static_cast<int>(rng.below(
                           static_cast<std::uint64_t>(max_omega - 3)));
  const int members = 1 + static_cast<int>(rng.below(5));
  for (int i = 0; i < members; ++i) {
    const int size = 1 + static_cast<int>(rng.below(4));
    std::uint64_t set = 0;
    while (std::popcount(set) < size) {
      set |= std::uint64_t{1}
             << rng.below(static_cast<std::uint64_t>(fam.omega_size));
    }
    fam.sets.push_back(set);
  }
  return fam;
}

// Exact Pr(|R ∩ A| <= cutoff) for a uniform m-subset of an n-set, |A| = k.
Rat exact_hypergeom_tail(int n, int m, int k, const Rat& cutoff) {
  const BigInt total = hfree::binomial(n, m);
  Rat acc = 0;
  for (int j = 0; j <= std::min(k, m); ++j) {
    if (Rat(j) > cutoff) break;
    acc += Rat(hfree::binomial(k, j) * hfree::binomial(n - k, m - j), total);
  }
  return acc;
}

json report_entry(const std::string& lemma, const std::string& instance,
                  double bound, double exact_or_estimate, bool holds) {
  json e;
  e["lemma"] = lemma;
  e["instance"] = instance;
  e["bound"] = bound;
  e["exact_or_estimate"] = exact_or_estimate;
  e["holds"] = holds;
  return e;
}

struct VerifyBoundsArgs {
  int families = 200;
  int max_omega = 12;
  std::uint64_t seed = 0;
  std::string out;
};

int run_verify_bounds(const VerifyBoundsArgs& args) {
  const std::string started = now_utc();
  if (args.families < 1) throw hfree::InputError("need at least one family");
  if (args.max_omega < 4 || args.max_omega > 12) {
    throw hfree::InputError("max-omega must lie between 4 and 12");
  }

  json entries = json::array();
  long violations = 0;
  Rng rng(args.seed);

  // Containment bounds on random families, every subset size, the
  // optimized tilt plus ten random tilts, and the avoidance lower bound
  // over a grid of eta values.  Each family contributes one entry per
  // bound carrying its worst margin.
  for (int fam_idx = 0; fam_idx < args.families; ++fam_idx) {
    const auto fam = random_family(rng, args.max_omega);
    const std::string shape = "family " + std::to_string(fam_idx) +
                              " (N=" + std::to_string(fam.omega_size) +
                              ", sets=" + std::to_string(fam.sets.size()) + ")";

    double upper_margin = std::numeric_limits<double>::infinity();
    double upper_bound = 0.0;
    double upper_exact = 0.0;
    std::string upper_at;
    double lower_margin = std::numeric_limits<double>::infinity();
    double lower_bound = 0.0;
    double lower_exact = 0.0;
    std::string lower_at;

    for (int m = 0; m <= fam.omega_size; ++m) {
      const double exact =
          hfree::to_double(hfree::verify_bound_exact(fam, m));
      std::vector<double> qs{hfree::janson_bound(fam, m, 0.0).q_star};
      for (int probe = 0; probe < 10; ++probe) qs.push_back(rng.unit());
      for (double q : qs) {
        const auto terms = hfree::janson_bound(fam, m, q);
        const double margin = terms.bound - exact;
        if (margin < upper_margin) {
          upper_margin = margin;
          upper_bound = terms.bound;
          upper_exact = exact;
          upper_at = "m=" + std::to_string(m) + ", q=" + fmt_double(q);
        }
      }
      if (2 * m <= fam.omega_size) {
        for (int tenth = 1; tenth <= 9; ++tenth) {
          const double eta = tenth / 10.0;
          const double lower = hfree::harris_bound(fam, m, eta);
          const double margin = exact - lower;
          if (margin < lower_margin) {
            lower_margin = margin;
            lower_bound = lower;
            lower_exact = exact;
            lower_at = "m=" + std::to_string(m) + ", eta=" + fmt_double(eta);
          }
        }
      }
    }

    const bool upper_ok = upper_margin >= -kBoundSlack;
    entries.push_back(report_entry("containment_upper",
                                   shape + ", worst at " + upper_at,
                                   upper_bound, upper_exact, upper_ok));
    if (!upper_ok) ++violations;
    const bool lower_ok = lower_margin >= -kBoundSlack;
    entries.push_back(report_entry("avoidance_lower",
                                   shape + ", worst at " + lower_at,
                                   lower_bound, lower_exact, lower_ok));
    if (!lower_ok) ++violations;
  }

  // Hypergeometric tail bound against the exact tail, aggregated per
  // ground-set size.
  const Rat t_values[] = {Rat(1, 4), Rat(1, 2), Rat(1), Rat(7, 4), Rat(3)};
  for (int n = 1; n <= args.max_omega; ++n) {
    double worst_margin = std::numeric_limits<double>::infinity();
    double worst_bound = 0.0;
    double worst_exact = 0.0;
    std::string worst_at;
    for (int m = 0; m <= n; ++m) {
      for (int k = 0; k <= n; ++k) {
        for (const Rat& t : t_values) {
          const Rat cutoff = Rat(k) * m / n - t;
          const double exact =
              hfree::to_double(exact_hypergeom_tail(n, m, k, cutoff));
          const double bound =
              hfree::hypergeom_lower_tail(n, m, k, hfree::to_double(t));
          const double margin = bound - exact;
          if (margin < worst_margin) {
            worst_margin = margin;
            worst_bound = bound;
            worst_exact = exact;
            worst_at = "m=" + std::to_string(m) + ", k=" + std::to_string(k) +
                       ", t=" + hfree::rat_to_string(t);
          }
        }
      }
    }
    const bool ok = worst_margin >= -kBoundSlack;
    entries.push_back(report_entry(
        "hypergeometric_tail",
        "N=" + std::to_string(n) + ", worst at " + worst_at, worst_bound,
        worst_exact, ok));
    if (!ok) ++violations;
  }

  // Partite extremal bound against the exact optimum on every host with
  // two or three classes of at most three vertices each.
  for (int r = 2; r <= 3; ++r) {
    for (int n = 1; n <= 3; ++n) {
      for (int s = 1; s <= n; ++s) {
        const auto got = hfree::turan_partite_bound(n, r, s);
        if (!got.exhaustive) {
          throw hfree::InternalError("exact optimum missing for a small host");
        }
        const bool ok = got.floor_value >= *got.exhaustive;
        entries.push_back(report_entry(
            "partite_extremal",
            "n=" + std::to_string(n) + ", r=" + std::to_string(r) +
                ", s=" + std::to_string(s),
            static_cast<double>(got.floor_value),
            static_cast<double>(*got.exhaustive), ok));
        if (!ok) ++violations;
      }
    }
  }

  json doc;
  doc["families"] = args.families;
  doc["violations"] = violations;
  doc["entries"] = entries;
  doc["manifest"] = make_manifest(
      "verify-bounds",
      json{{"families", args.families}, {"max_omega", args.max_omega}},
      args.seed, started);
  emit_json(doc, args.out);
  return violations == 0 ? 0 : 4;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const hfree::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const hfree::PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structural toolkit for sparse pattern-free graphs"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  InvariantsArgs inv_args;
  auto* inv = app.add_subcommand(
      "invariants", "Chromatic, criticality, and density invariants as JSON");
  inv->add_option("--graph6", inv_args.graph6,
                  "graph6 string, or a file with one graph per line")
      ->required();
  inv->add_option("--out", inv_args.out, "also write the JSON to this file");

  ThresholdArgs thr_args;
  auto* thr = app.add_subcommand(
      "threshold", "Enumeration threshold value and governing regime");
  thr->add_option("--graph6", thr_args.graph6,
                  "graph6 string, or a file with one graph per line")
      ->required();
  thr->add_option("--n", thr_args.n, "number of vertices of the host")
      ->required();
  thr->add_option("--out", thr_args.out, "also write the JSON to this file");

  CensusArgs census_args;
  census_args.threads =
      std::max(1u, std::thread::hardware_concurrency());
  auto* census = app.add_subcommand(
      "census", "Exact counts of pattern-free and colour-bounded graphs");
  census->add_option("--graph6", census_args.graph6, "pattern graph (graph6)")
      ->required();
  census->add_option("--n", census_args.n, "host vertex count")->required();
  census->add_option("--m-min", census_args.m_min, "smallest edge count");
  census->add_option("--m-max", census_args.m_max,
                     "largest edge count (default: all pairs)");
  census->add_option("--r", census_args.r, "number of colour classes")
      ->required();
  census->add_option("--k", census_args.k, "within-class degree cap")
      ->required();
  census->add_option("--limit", census_args.limit,
                     "guard for the largest host size");
  census->add_option("--threads", census_args.threads,
                     "parallelism cap (results are identical at any value)");
  census->add_option("--out", census_args.out, "CSV output path")->required();

  SampleArgs sample_args;
  auto* sample = app.add_subcommand(
      "sample", "Estimate colour-bounded fractions by uniform sampling");
  sample->add_option("--graph6", sample_args.graph6, "pattern graph (graph6)")
      ->required();
  sample->add_option("--n", sample_args.n, "host vertex count")->required();
  sample->add_option("--m", sample_args.ms, "edge counts (comma-separated)")
      ->required()
      ->delimiter(',');
  sample->add_option("--r", sample_args.r, "number of colour classes")
      ->required();
  sample->add_option("--k", sample_args.k, "within-class degree cap")
      ->required();
  sample->add_option("--samples", sample_args.samples, "draws per edge count");
  sample->add_option("--seed", sample_args.seed, "base seed");
  sample->add_option("--method", sample_args.method,
                     "rejection or edge-swap");
  sample->add_option("--burn-in", sample_args.burn_in,
                     "walk steps before the first emission (edge-swap)");
  sample->add_option("--thin", sample_args.thin,
                     "walk steps between emissions (edge-swap)");
  sample->add_option("--chains", sample_args.chains,
                     "independent chains (one thread each)");
  sample->add_option("--max-tries", sample_args.max_tries,
                     "retry cap per rejection draw");
  sample->add_option("--out", sample_args.out, "CSV output path")->required();

  VerifyBoundsArgs verify_args;
  auto* verify = app.add_subcommand(
      "verify-bounds",
      "Check every bound against exact values on a seeded corpus");
  verify->add_option("--families", verify_args.families,
                     "number of random subset families");
  verify->add_option("--max-omega", verify_args.max_omega,
                     "largest ground-set size (4..12)");
  verify->add_option("--seed", verify_args.seed, "corpus seed");
  verify->add_option("--out", verify_args.out,
                     "also write the JSON to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*inv) return guarded([&] { return run_invariants(inv_args); });
  if (*thr) return guarded([&] { return run_threshold(thr_args); });
  if (*census) return guarded([&] { return run_census(census_args); });
  if (*sample) return guarded([&] { return run_sample(sample_args); });
  if (*verify) return guarded([&] { return run_verify_bounds(verify_args); });
  return 2;  // unreachable: require_subcommand enforces one
}
