// One line per acceptance criterion: PASS/FAIL, name, details.
//
//   acceptance                 run everything
//   acceptance --only NAME     run one criterion
//   acceptance --list

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "oracles.hpp"
#include "reconlab/bounds.hpp"
#include "reconlab/events.hpp"
#include "reconlab/harness.hpp"
#include "reconlab/isomorphism.hpp"
#include "reconlab/reconstruction.hpp"
#include "reconlab/sampling.hpp"
#include "reconlab/stats.hpp"

using namespace reconlab;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Graph random_graph(std::size_t n, SeedSpec seed) { return sample_graph(EdgeProbabilities::constant(n, 0.5), seed); }

// ---------------------------------------------------------------------------

Verdict reconstructibility_small_n() {
  std::string detail;
  bool pass = true;
  double t7 = 0;
  for (std::size_t n = 2; n <= 7; ++n) {
    const auto t0 = Clock::now();
    const auto r = verify_reconstructibility_exhaustive(n);
    if (n == 7) t7 = seconds_since(t0);
    const std::size_t want = n == 2 ? 1 : 0;
    bool ok = r.collisions.size() == want;
    if (ok && n == 2) {
      // K2 against the empty graph
      const auto a = r.collisions[0].first.to_graph().edge_count();
      const auto b = r.collisions[0].second.to_graph().edge_count();
      ok = a + b == 1;
    }
    pass = pass && ok;
    detail += fmt::format("n={}:{} classes/{} collisions ", n, r.classes, r.collisions.size());
  }
  pass = pass && t7 <= 600;
  detail += fmt::format("(n=7 {:.1f}s)", t7);
  return {pass, detail};
}

Verdict isomorphism_soundness() {
  std::uint64_t pairs = 0, discrepancies = 0;
  // every ordered pair of labeled graphs on n <= 5 vertices
  for (std::size_t n = 1; n <= 5; ++n) {
    const std::uint64_t masks = std::uint64_t{1} << (n * (n - 1) / 2);
    std::vector<Graph> graphs;
    std::vector<Certificate> certs;
    for (std::uint64_t m = 0; m < masks; ++m) {
      graphs.push_back(oracle::from_mask(n, m));
      certs.push_back(canonical_form(graphs.back()));
    }
    for (std::uint64_t a = 0; a < masks; ++a)
      for (std::uint64_t b = a; b < masks; ++b) {
        ++pairs;
        if ((certs[a] == certs[b]) != oracle::isomorphic(graphs[a], graphs[b])) ++discrepancies;
      }
  }
  // 10^3 random graphs per n, each compared with a relabeled copy and with an
  // independent graph of the same edge count
  Philox4x32 perm_rng(0xACCE, 1);
  std::uint64_t random_pairs = 0;
  for (std::size_t n : {6u, 7u, 8u}) {
    for (std::uint64_t i = 0; i < 1000; ++i) {
      const auto g = random_graph(n, {0xACCE, n * 100000 + i});
      const auto copy = oracle::permuted(g, sample_permutation(n, perm_rng));
      Graph other;
      for (std::uint64_t j = 0;; ++j) {
        other = random_graph(n, {0xACCF, (n * 100000 + i) * 1000 + j});
        if (other.edge_count() == g.edge_count()) break;
      }
      for (const Graph* h : {&copy, static_cast<const Graph*>(&other)}) {
        ++random_pairs;
        if ((canonical_form(g) == canonical_form(*h)) != oracle::isomorphic(g, *h)) ++discrepancies;
      }
    }
  }
  return {discrepancies == 0, fmt::format("{} exhaustive pairs (n<=5), {} random pairs (n=6,7,8), {} discrepancies",
                                          pairs, random_pairs, discrepancies)};
}

Verdict event_equivalence() {
  std::uint64_t graphs = 0, discrepancies = 0;
  for (std::size_t delta = 1; delta <= 2; ++delta)
    for (std::size_t v = delta + 1; v <= 6; ++v) {
      const std::uint64_t masks = std::uint64_t{1} << (v * (v - 1) / 2);
      for (std::uint64_t m = 0; m < masks; ++m) {
        const auto g = oracle::from_mask(v, m);
        ++graphs;
        if (check_event(g, delta).holds != oracle::event_holds(g, delta)) ++discrepancies;
      }
    }
  return {discrepancies == 0, fmt::format("{} (graph, delta) cases with n+delta<=6, {} discrepancies", graphs,
                                          discrepancies)};
}

// Scenario event-random-S-tuple with p ≡ 1/2 against the exact value. Inside
// the exact oracle's cap (v <= 6) the exact value is 1 whenever δ >= 1: no
// graph on 2..5 vertices is asymmetric and a lone vertex always has a copy.
std::pair<bool, std::string> monte_carlo_vs_exact(std::size_t n, std::size_t delta, std::size_t eps) {
  ExperimentConfig c;
  c.scenario = Scenario::event_random_s_tuple;
  c.n = {n};
  c.delta = delta;
  c.beta = BetaPreset::constant;
  c.beta_const = 0.5;
  c.alpha = 1.0;
  c.eps_kind = EpsKind::constant;
  c.eps_value = static_cast<double>(eps);
  c.trials = 100000;
  c.master_seed = 0x5EED0 + 16 * n + eps;
  c.record_wall_time = false;
  const auto row = run_experiment(c, 1).summary.at(0);
  const double exact = exact_event_failure_probability(n, delta, EdgeProbabilities::constant(n + delta, 0.5), eps,
                                                       EditSampling::tuple);
  const auto ci = clopper_pearson(row.failures, row.trials, 0.99);
  return {ci.lo <= exact && exact <= ci.hi,
          fmt::format("n+d={} d={} eps={}: exact={:.6f} mc={}/{} ci99=[{:.6f},{:.6f}] ", n + delta, delta, eps, exact,
                      row.failures, row.trials, ci.lo, ci.hi)};
}

Verdict exact_failure_monte_carlo() {
  const auto t0 = Clock::now();
  bool pass = true;
  std::string detail;
  for (std::size_t eps : {0u, 2u}) {
    auto [ok, text] = monte_carlo_vs_exact(3, 2, eps);
    pass = pass && ok;
    detail += text;
  }
  const double secs = seconds_since(t0);
  pass = pass && secs <= 120;
  detail += fmt::format("({:.1f}s)", secs);
  return {pass, detail};
}

struct LemmaTally {
  std::size_t samples = 0;
  std::size_t filtered = 0;  // passed check_event(G, 2)
  std::size_t filtered_failures = 0;
  std::size_t returned = 0;
  std::size_t unsound = 0;
};

// One instance: H = π(G), σ from the decks. Returns whether a map came back
// and whether it verified.
std::pair<bool, bool> lemma_instance(const Graph& g, Philox4x32& rng) {
  const auto h = oracle::permuted(g, sample_permutation(g.vertex_count(), rng));
  const auto sigma = find_hypomorphism(g, h);
  if (!sigma) return {false, false};
  const auto w = reconstruct_lemma31(g, h, *sigma);
  if (!w) return {false, true};
  return {true, oracle::maps_onto(g, h, w->isomorphism.image()) && is_isomorphism(g, h, w->isomorphism)};
}

Verdict lemma31_reconstruction() {
  LemmaTally t;
  Philox4x32 rng(0x31, 0);
  for (std::size_t v : {9u, 10u})
    for (std::uint64_t i = 0; i < 100; ++i) {
      const auto g = random_graph(v, {0x31, v * 1000 + i});
      ++t.samples;
      const bool e2 = check_event(g, 2).holds;
      const auto [returned, sound] = lemma_instance(g, rng);
      t.returned += returned;
      t.unsound += returned && !sound;
      if (e2) {
        ++t.filtered;
        t.filtered_failures += !(returned && sound);
      }
    }
  // the filter is rarely passed at 9/10 vertices; E_2 graphs at 12 vertices
  // keep the implication from being checked vacuously
  std::size_t rigid = 0, rigid_failures = 0, drawn = 0;
  for (std::uint64_t i = 0; rigid < 20 && i < 200000; ++i) {
    const auto g = random_graph(12, {0x312, i});
    ++drawn;
    if (!check_event(g, 2).holds) continue;
    ++rigid;
    const auto [returned, sound] = lemma_instance(g, rng);
    rigid_failures += !(returned && sound);
  }
  const bool pass = t.filtered_failures == 0 && t.unsound == 0 && rigid == 20 && rigid_failures == 0;
  return {pass, fmt::format("n+2 in {{9,10}}: {} samples, {} pass check_event(G,2), {} failures among them; "
                            "{} maps returned on unfiltered samples, {} unsound; "
                            "12 vertices: {} E_2 graphs (of {} drawn), {} failures",
                            t.samples, t.filtered, t.filtered_failures, t.returned, t.unsound, rigid, drawn,
                            rigid_failures)};
}

Verdict failure_decay() {
  const auto t0 = Clock::now();
  ExperimentConfig c;
  c.scenario = Scenario::event_random_s_subset;
  c.delta = 2;
  c.beta = BetaPreset::constant;
  c.beta_const = 0.5;
  c.alpha = 1.0;
  c.eps_kind = EpsKind::pair_fraction;
  c.eps_value = 0.1;
  c.eps_at = EpsAt::n;
  c.trials = 1000;
  c.master_seed = 0xDECA;
  c.ball_strategy = BallStrategy::search;
  c.record_wall_time = false;
  // exact up to n = 40; a full search at n = 80 takes minutes per trial
  auto exact = c;
  exact.n = {20, 40};
  exact.node_budget = 0;
  auto budgeted = c;
  budgeted.n = {80};
  budgeted.node_budget = 100'000;
  auto rows = run_experiment(exact, 1).summary;
  rows.push_back(run_experiment(budgeted, 1).summary.at(0));
  bool monotone = true;
  std::string detail;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (i > 0 && r.rate > rows[i - 1].rate) monotone = false;
    detail += fmt::format("n={} eps={}: {}/{} failed ({} budget-limited) ", r.n, eps_for(c, r.n), r.failures,
                          r.trials, r.lower_bound_trials);
  }
  const double secs = seconds_since(t0);
  detail += fmt::format("({:.0f}s)", secs);
  return {monotone && rows.back().rate <= 0.05 && secs <= 1800, detail};
}

Verdict closed_form_inequalities() {
  std::vector<std::string> failed;
  // f on [a, 1-a]^2 peaks at (a, a)
  for (double a : {0.1, 0.3, 0.5}) {
    double best = 0;
    const int steps = 400;
    for (int i = 0; i <= steps; ++i)
      for (int j = 0; j <= steps; ++j) {
        const double x = a + (1 - 2 * a) * i / steps, y = a + (1 - 2 * a) * j / steps;
        best = std::max(best, f_bound(x, y, 0.9));
      }
    if (best > f_bound(a, a, 0.9) + 1e-9) failed.push_back(fmt::format("f a={}", a));
  }
  std::size_t containment_cases = 0;
  for (std::size_t n = 0; n <= 30; ++n)
    for (std::size_t m = 0; m <= n; ++m)
      for (std::size_t k = 0; k <= m; ++k) {
        ++containment_cases;
        const auto r = subset_containment_bound(n, m, k);
        if (r.exact < r.lower) failed.push_back(fmt::format("containment {} {} {}", n, m, k));
      }
  // with a single mover the image of that vertex must leave W
  for (std::size_t n = 2; n <= 12; ++n) {
    std::vector<Vertex> img(n);
    for (Vertex i = 0; i < n; ++i) img[i] = i;
    for (Vertex moved = 0; moved < n; ++moved) {
      auto phi = img;
      phi[moved] = static_cast<Vertex>(n);
      const auto st = orbit_stats(VertexMap(phi, n + 1));
      std::size_t longer = 0;
      for (auto [len, cnt] : st.orbits) longer += len > 2 ? cnt : 0;
      if (st.m != 1 || st.count(1) != (n - 1) * (n - 2) / 2 || st.count(2) != n - 1 || longer != 0)
        failed.push_back(fmt::format("orbit n={}", n));
    }
  }
  std::size_t census_cases = 0;
  for (std::size_t n = 1; n <= 9; ++n)
    for (std::size_t m = 1; m <= n; ++m)
      for (std::size_t d = 0; d <= 2; ++d) {
        ++census_cases;
        const auto c = injection_census(n, m, d);
        if (c.exact > 2 * std::pow(double(n), double(m)) * std::pow(double(m), double(d)))
          failed.push_back(fmt::format("census n={} m={} d={}", n, m, d));
      }
  // Paley-Zygmund: Z = |S| for S of ⌈ε'⌉ uniform draws, ε = ⌊cN⌋
  const std::size_t n = 30, big_n = n * (n - 1) / 2;
  const double c = 0.5;
  const std::size_t eps = static_cast<std::size_t>(std::floor(c * big_n));
  const auto draws = static_cast<std::size_t>(std::ceil(eps_prime(n, double(eps), c)));
  std::size_t hits = 0;
  const std::size_t reps = 10000;
  for (std::size_t i = 0; i < reps; ++i) {
    const auto s = sample_edit_tuple(n, draws, SeedSpec{0x9A11, i});
    hits += s.distinct_count() >= eps;
  }
  const double rate = double(hits) / reps;
  const double sigma = std::sqrt(std::max(rate * (1 - rate), 1.0 / reps) / reps);
  const double floor = paley_zygmund_floor(c);
  if (rate < floor - 3 * sigma) failed.push_back("paley-zygmund");
  std::string detail = fmt::format("f grid, {} containment, 11 orbit sizes, {} census cases; PZ Pr[Z>={}]={:.4f} "
                                   "with {} draws vs floor {:.4f}",
                                   containment_cases, census_cases, eps, rate, draws, floor);
  for (const auto& f : failed) detail += " FAILED:" + f;
  return {failed.empty(), detail};
}

Verdict negative_association() {
  std::vector<std::string> failed;
  std::size_t exact_cases = 0;
  const std::size_t big_n = 6;  // n + δ = 4
  const std::vector<double> grid{0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0};
  for (auto mode : {EditSampling::tuple, EditSampling::subset})
    for (std::size_t eps = 0; eps <= 3; ++eps) {
      for (std::size_t f = 1; f <= 4; ++f) {
        const auto r = containment_joint(big_n, f, eps, mode);
        ++exact_cases;
        if (r.joint > r.product + 1e-12) failed.push_back(fmt::format("containment f={} eps={}", f, eps));
      }
      for (double a : grid)
        for (double b : grid) {
          for (std::size_t k = 1; k <= 2; ++k) {
            std::vector<double> q{disagreement(a, b)};
            if (k == 2) q.push_back(disagreement(b, 1 - a));
            const auto r = agreement_joint(q, big_n, eps, mode);
            ++exact_cases;
            if (r.joint > r.product + 1e-12) failed.push_back(fmt::format("agreement k={} eps={}", k, eps));
          }
        }
    }
  // Monte Carlo at n = 10, tuple mode: disjoint pairs e, f and two
  // pair-pairs of the agreement events under G ~ 𝒢(10, 1/2)
  const std::size_t n = 10, eps = 20, reps = 100000;
  const VertexPair e{0, 1}, f{2, 3}, g1{4, 5}, g2{6, 7};
  std::size_t in_e = 0, in_f = 0, in_both = 0, ag1 = 0, ag2 = 0, ag_both = 0;
  const auto p = EdgeProbabilities::constant(n, 0.5);
  for (std::size_t i = 0; i < reps; ++i) {
    Philox4x32 rng(0x4A4A, i);
    const auto s = sample_edit_tuple(n, eps, rng);
    const auto g = sample_graph(p, rng);
    const bool a = s.contains(e), b = s.contains(f);
    in_e += a;
    in_f += b;
    in_both += a && b;
    const bool j1 = g.has_edge(e.u, e.v) == g.has_edge(f.u, f.v) || a || b;
    const bool j2 = g.has_edge(g1.u, g1.v) == g.has_edge(g2.u, g2.v) || s.contains(g1) || s.contains(g2);
    ag1 += j1;
    ag2 += j2;
    ag_both += j1 && j2;
  }
  auto check = [&](const char* name, std::size_t both, std::size_t x, std::size_t y) {
    const double pj = double(both) / reps, px = double(x) / reps, py = double(y) / reps;
    const double sigma = std::sqrt(pj * (1 - pj) / reps);
    if (pj > px * py + 3 * sigma) failed.push_back(name);
    return fmt::format("{} joint {:.4f} vs product {:.4f}", name, pj, px * py);
  };
  std::string detail = fmt::format("{} exact instances; MC n=10 eps=20: {}; {}", exact_cases,
                                   check("containment", in_both, in_e, in_f), check("agreement", ag_both, ag1, ag2));
  for (const auto& x : failed) detail += " FAILED:" + x;
  return {failed.empty(), detail};
}

std::string experiment_csv(const ExperimentConfig& c, unsigned threads) {
  std::ostringstream out;
  write_csv(out, run_experiment(c, threads).records);
  return out.str();
}

Verdict determinism() {
  ExperimentConfig c;
  c.scenario = Scenario::event_random_s_subset;
  c.n = {8, 12, 16};
  c.delta = 1;
  c.eps_kind = EpsKind::constant;
  c.eps_value = 6;
  c.trials = 60;
  c.master_seed = 424242;
  c.record_wall_time = false;
  std::vector<std::string> csvs;
  for (unsigned threads : {1u, 2u, 4u}) csvs.push_back(experiment_csv(c, threads));
  auto planted = c;
  planted.scenario = Scenario::planted_p;
  planted.fill = BoxFill::uniform;
  planted.beta_const = 0.4;
  const bool planted_same = experiment_csv(planted, 1) == experiment_csv(planted, 3);
  const bool same = csvs[0] == csvs[1] && csvs[1] == csvs[2] && planted_same;
  return {same, fmt::format("{} bytes, threads 1/2/4 {}; planted-P threads 1/3 {}", csvs[0].size(),
                            csvs[0] == csvs[1] && csvs[1] == csvs[2] ? "identical" : "differ",
                            planted_same ? "identical" : "differ")};
}

struct Criterion {
  const char* name;
  Verdict (*run)();
};

const Criterion kCriteria[] = {
    {"reconstructibility_small_n", reconstructibility_small_n},
    {"isomorphism_soundness", isomorphism_soundness},
    {"event_equivalence", event_equivalence},
    {"exact_failure_monte_carlo", exact_failure_monte_carlo},
    {"lemma31_reconstruction", lemma31_reconstruction},
    {"failure_decay", failure_decay},
    {"closed_form_inequalities", closed_form_inequalities},
    {"negative_association", negative_association},
    {"determinism", determinism},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reconlab acceptance checks"};
  std::string only;
  bool list = false;
  app.add_option("--only", only, "run a single criterion");
  app.add_flag("--list", list, "print criterion names");
  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& c : kCriteria) fmt::print("{}\n", c.name);
    return 0;
  }
  int failures = 0;
  bool ran = false;
  for (const auto& c : kCriteria) {
    if (!only.empty() && only != c.name) continue;
    ran = true;
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    fmt::print("{} {}: {}\n", v.pass ? "PASS" : "FAIL", c.name, v.detail);
    std::fflush(stdout);
    failures += !v.pass;
  }
  if (!ran) {
    fmt::print(stderr, "unknown criterion '{}'\n", only);
    return 1;
  }
  return failures == 0 ? 0 : 1;
}
