// recon-lab: command-line front end for the reconlab core library.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "reconlab/bounds.hpp"
#include "reconlab/error.hpp"
#include "reconlab/events.hpp"
#include "reconlab/graph6.hpp"
#include "reconlab/harness.hpp"
#include "reconlab/reconstruction.hpp"
#include "reconlab/sampling.hpp"
#include "reconlab/version.hpp"

using namespace reconlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolated = 2;
constexpr int kExitResource = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Graph read_one_graph(const std::string& path) {
  auto gs = read_graph6_file(path);
  if (gs.size() != 1) throw InputError(fmt::format("{}: expected exactly one graph, found {}", path, gs.size()));
  return gs.front();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

BallStrategy parse_strategy(const std::string& s) {
  if (s == "auto") return BallStrategy::automatic;
  if (s == "enumerate") return BallStrategy::enumerate;
  if (s == "search") return BallStrategy::search;
  throw InputError("strategy must be auto, enumerate or search");
}

nlohmann::json union_json(const UnionBound& u) {
  return {{"c1", u.c1},           {"term1", u.term1},         {"term2", u.term2},
          {"term3", u.term3},     {"total", u.total},         {"log_term1", u.log_term1},
          {"log_term2", u.log_term2}, {"log_term3", u.log_term3}, {"log_total", u.log_total},
          {"final_bound", u.final_bound}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-graph asymmetry and reconstruction experiments"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run a TOML-configured Monte Carlo experiment");
  std::string exp_config, exp_out = "-", exp_manifest, exp_summary;
  unsigned exp_threads = 1;
  bool exp_no_timing = false;
  exp->add_option("--config", exp_config, "experiment TOML")->required();
  exp->add_option("--out", exp_out, "CSV output path ('-' for stdout)");
  exp->add_option("--threads", exp_threads, "worker threads")->check(CLI::PositiveNumber);
  exp->add_flag("--no-timing", exp_no_timing, "leave wall_ms empty so the CSV is byte-reproducible");
  exp->add_option("--manifest", exp_manifest, "write the config manifest JSON here");
  exp->add_option("--summary", exp_summary, "write the per-(scenario, n) summary here");

  // sample
  auto* smp = app.add_subcommand("sample", "Sample graphs and edit sets");
  std::size_t smp_n = 10, smp_count = 1, smp_eps = 0;
  double smp_p = 0.5;
  std::string smp_probs, smp_out = "-", smp_edits, smp_edit_mode = "subset";
  std::uint64_t smp_seed = 0, smp_stream = 0;
  smp->add_option("--n", smp_n, "vertex count")->required();
  smp->add_option("--p", smp_p, "constant edge probability");
  smp->add_option("--probs", smp_probs, "edge probabilities (binary RLPROB01 or JSON)");
  smp->add_option("--seed", smp_seed, "master seed");
  smp->add_option("--stream", smp_stream, "stream id");
  smp->add_option("--count", smp_count, "number of graphs");
  smp->add_option("--out", smp_out, "graph6 output ('-' for stdout)");
  smp->add_option("--eps", smp_eps, "also draw an edit set of this size");
  smp->add_option("--edits", smp_edits, "edit-set JSON output path");
  smp->add_option("--edit-mode", smp_edit_mode, "subset or tuple")->check(CLI::IsMember({"subset", "tuple"}));

  // check-event
  auto* chk = app.add_subcommand("check-event", "Decide E_delta(G), E_delta(G, S) or E_delta(B_r(G))");
  std::string chk_input, chk_edits, chk_edit_mode = "subset", chk_strategy = "auto";
  std::size_t chk_delta = 2, chk_radius = 0;
  std::uint64_t chk_budget = 0;
  chk->add_option("--input", chk_input, "graph6 file")->required();
  chk->add_option("--delta", chk_delta, "deleted vertex count");
  chk->add_option("--edits", chk_edits, "edit-set JSON; checks the whole ball B_S(G)");
  chk->add_option("--edit-mode", chk_edit_mode, "subset or tuple")->check(CLI::IsMember({"subset", "tuple"}));
  chk->add_option("--radius", chk_radius, "check the Hamming ball of this radius instead");
  chk->add_option("--strategy", chk_strategy, "auto, enumerate or search");
  chk->add_option("--node-budget", chk_budget, "search node limit (0 = none)");

  // deck
  auto* dck = app.add_subcommand("deck", "Print the deck of a graph as JSON");
  std::string dck_input;
  dck->add_option("--input", dck_input, "graph6 file")->required();

  // reconstruct
  auto* rec = app.add_subcommand("reconstruct", "Search for an isomorphism via the two-vertex anchor lemma");
  rec->set_help_flag("--help", "Print this help message and exit");
  std::string rec_g, rec_h;
  rec->add_option("--g", rec_g, "graph6 file for G")->required();
  rec->add_option("--h", rec_h, "graph6 file for H")->required();

  // verify-deck
  auto* vd = app.add_subcommand("verify-deck", "Exhaustive deck-collision check for small n");
  std::size_t vd_max = 7;
  unsigned vd_threads = 1;
  std::string vd_out = "-";
  vd->add_option("--max-n", vd_max, "largest n (at most 7)");
  vd->add_option("--threads", vd_threads, "worker threads")->check(CLI::PositiveNumber);
  vd->add_option("--out", vd_out, "report JSON path");

  // bounds
  auto* bnd = app.add_subcommand("bounds", "Evaluate the union-bound calculators");
  std::string bnd_preset = "lemma43", bnd_beta = "log", bnd_sweep_out;
  std::size_t bnd_n = 100, bnd_delta = 2, bnd_sweep_from = 0, bnd_sweep_to = 0;
  double bnd_alpha = 8, bnd_rho = 1, bnd_beta_const = 0.5, bnd_c = 0.5, bnd_c0 = 0.9, bnd_c2 = 0.5, bnd_eps = 0,
         bnd_rho_prime = 0;
  std::optional<double> bnd_c1;
  bnd->add_option("--preset", bnd_preset, "lemma43 (vanishing beta) or lemma44 (constant beta)")
      ->check(CLI::IsMember({"lemma43", "lemma44"}));
  bnd->add_option("--n", bnd_n, "vertex count");
  bnd->add_option("--delta", bnd_delta, "delta");
  bnd->add_option("--alpha", bnd_alpha, "alpha");
  bnd->add_option("--rho", bnd_rho, "rho");
  bnd->add_option("--beta", bnd_beta, "log, sqrt or const");
  bnd->add_option("--beta-const", bnd_beta_const, "beta for --beta const");
  bnd->add_option("--c", bnd_c, "eps <= c C(n,2)");
  bnd->add_option("--c0", bnd_c0, "c0");
  bnd->add_option("--c1", bnd_c1, "c1 (vanishing regime; default (2-2c0)/2)");
  bnd->add_option("--c2", bnd_c2, "c2");
  bnd->add_option("--eps", bnd_eps, "eps");
  bnd->add_option("--rho-prime", bnd_rho_prime, "rho' for alpha_min and thresholds (default rho)");
  bnd->add_option("--sweep-from", bnd_sweep_from, "CSV sweep start n");
  bnd->add_option("--sweep-to", bnd_sweep_to, "CSV sweep end n");
  bnd->add_option("--sweep-out", bnd_sweep_out, "CSV sweep output path");

  // summarize
  auto* sum = app.add_subcommand("summarize", "Aggregate an experiment CSV");
  std::vector<std::string> sum_inputs;
  sum->add_option("csv", sum_inputs, "experiment CSV files")->required();

  // replay
  auto* rep = app.add_subcommand("replay", "Re-run a single trial of a known config");
  std::vector<std::string> rep_configs;
  std::string rep_hash;
  std::size_t rep_n = 0, rep_trial = 0;
  rep->add_option("--config", rep_configs, "candidate config TOML files")->required();
  rep->add_option("--hash", rep_hash, "config hash from the manifest")->required();
  rep->add_option("--n", rep_n, "n")->required();
  rep->add_option("--trial", rep_trial, "trial index")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*exp) {
      auto cfg = load_config(exp_config);
      if (exp_no_timing) cfg.record_wall_time = false;
      const auto result = run_experiment(cfg, exp_threads);
      std::ostringstream csv;
      write_csv(csv, result.records);
      write_text(exp_out, csv.str());
      if (!exp_manifest.empty()) write_text(exp_manifest, manifest_json(cfg) + "\n");
      if (!exp_summary.empty()) write_text(exp_summary, summary_to_text(result.summary));
      if (exp_out != "-") std::cerr << summary_to_text(result.summary);
      return kExitOk;
    }
    if (*smp) {
      EdgeProbabilities probs;
      if (smp_probs.empty()) {
        probs = EdgeProbabilities::constant(smp_n, smp_p);
      } else if (smp_probs.size() > 5 && smp_probs.substr(smp_probs.size() - 5) == ".json") {
        probs = probabilities_from_json(slurp(smp_probs));
      } else {
        probs = read_probabilities_binary(smp_probs);
      }
      if (probs.vertex_count() != smp_n) throw InputError("probability file does not match --n");
      Philox4x32 rng(smp_seed, smp_stream);
      std::string g6;
      for (std::size_t i = 0; i < smp_count; ++i) g6 += encode_graph6(sample_graph(probs, rng)) + "\n";
      write_text(smp_out, g6);
      if (smp_eps > 0 || !smp_edits.empty()) {
        auto s = smp_edit_mode == "tuple" ? sample_edit_tuple(smp_n, smp_eps, rng) : sample_edit_subset(smp_n, smp_eps, rng);
        write_text(smp_edits.empty() ? "-" : smp_edits, edit_set_to_json(s) + "\n");
      }
      return kExitOk;
    }
    if (*chk) {
      const Graph g = read_one_graph(chk_input);
      BallOptions opts;
      opts.strategy = parse_strategy(chk_strategy);
      opts.node_budget = chk_budget;
      EventResult r;
      if (chk_radius > 0) {
        r = check_event_radius(g, chk_radius, chk_delta, opts);
      } else if (!chk_edits.empty()) {
        const auto s = edit_set_from_json(slurp(chk_edits), g.vertex_count(),
                                          chk_edit_mode == "tuple" ? EditMode::tuple : EditMode::subset);
        r = check_event_ball(g, s, chk_delta, opts);
      } else {
        r = check_event(g, chk_delta);
      }
      if (r.holds) {
        std::cout << "holds (" << to_string(r.exactness) << ")\n";
        return kExitOk;
      }
      std::cout << witness_to_json(*r.witness) << "\n";
      return kExitViolated;
    }
    if (*dck) {
      std::cout << deck(read_one_graph(dck_input)).to_json() << "\n";
      return kExitOk;
    }
    if (*rec) {
      const Graph g = read_one_graph(rec_g);
      const Graph h = read_one_graph(rec_h);
      if (g.vertex_count() != h.vertex_count()) {
        std::cout << "no-hypomorphism\n";
        return kExitOk;
      }
      auto sigma = find_hypomorphism(g, h);
      if (!sigma) {
        std::cout << "no-hypomorphism\n";
        return kExitOk;
      }
      auto w = reconstruct_lemma31(g, h, *sigma);
      if (!w) {
        std::cout << "lemma-inapplicable\n";
        return kExitOk;
      }
      nlohmann::json j;
      j["x"] = w->x;
      j["y"] = w->y;
      j["map"] = w->isomorphism.image();
      std::cout << j.dump() << "\n";
      return kExitOk;
    }
    if (*vd) {
      nlohmann::json out = nlohmann::json::array();
      for (std::size_t n = 1; n <= vd_max; ++n)
        out.push_back(nlohmann::json::parse(verify_reconstructibility_exhaustive(n, vd_threads).to_json()));
      write_text(vd_out, out.dump(2) + "\n");
      return kExitOk;
    }
    if (*bnd) {
      const Regime regime = bnd_preset == "lemma43" ? Regime::vanishing_beta : Regime::constant_beta;
      const auto preset = parse_beta_preset(bnd_beta);
      const double rho_prime = bnd_rho_prime > 0 ? bnd_rho_prime : bnd_rho;
      auto params_at = [&](std::size_t n) {
        BoundParams p;
        p.n = n;
        p.delta = bnd_delta;
        p.alpha = bnd_alpha;
        p.rho = bnd_rho;
        p.beta = beta_value(preset, n, bnd_beta_const);
        p.eps = bnd_eps;
        p.c = bnd_c;
        p.c0 = bnd_c0;
        p.c1 = bnd_c1;
        p.c2 = bnd_c2;
        return p;
      };
      const auto p = params_at(bnd_n);
      const auto u = union_bound_failure(p, regime);
      nlohmann::json j;
      j["preset"] = bnd_preset;
      j["regime"] = to_string(regime);
      j["n"] = bnd_n;
      j["delta"] = bnd_delta;
      j["alpha"] = bnd_alpha;
      j["rho"] = bnd_rho;
      j["beta"] = p.beta;
      j["terms"] = union_json(u);
      const auto a = alpha_min(u.c1, bnd_c2, bnd_delta, rho_prime);
      j["alpha_min"] = {{"term1", a.term1}, {"term2", a.term2}, {"term3", a.term3}, {"minimum", a.minimum}};
      std::cout << j.dump(2) << "\n";
      if (bnd_sweep_to > 0) {
        std::string csv = "n,beta,term1,term2,term3,total,final_bound\n";
        for (std::size_t n = std::max<std::size_t>(2, bnd_sweep_from); n <= bnd_sweep_to; ++n) {
          const auto q = params_at(n);
          const auto r = union_bound_failure(q, regime);
          csv += fmt::format("{},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g}\n", n, q.beta, r.term1, r.term2,
                             r.term3, r.total, r.final_bound);
        }
        write_text(bnd_sweep_out.empty() ? "-" : bnd_sweep_out, csv);
      }
      return kExitOk;
    }
    if (*sum) {
      std::stringstream all;
      for (const auto& path : sum_inputs) all << slurp(path) << "\n";
      std::cout << summary_to_text(summarize_csv(all));
      return kExitOk;
    }
    if (*rep) {
      std::vector<ExperimentConfig> known;
      for (const auto& path : rep_configs) known.push_back(load_config(path));
      const auto r = replay(known, rep_hash, rep_n, rep_trial);
      nlohmann::json j;
      j["config_hash"] = r.config_hash;
      j["n"] = r.n;
      j["trial"] = r.trial;
      j["seed"] = r.seed;
      j["outcome"] = to_string(r.outcome);
      j["exactness"] = to_string(r.exactness);
      j["csv"] = csv_row(r);
      if (r.witness) j["witness"] = nlohmann::json::parse(witness_to_json(*r.witness));
      std::cout << j.dump(2) << "\n";
      return kExitOk;
    }
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
