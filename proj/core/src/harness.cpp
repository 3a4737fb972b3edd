#include "reconlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "reconlab/error.hpp"
#include "reconlab/graph6.hpp"
#include "reconlab/version.hpp"

#define TOML_HEADER_ONLY 1
#define TOML_EXCEPTIONS 1
#include <toml.hpp>

namespace reconlab {

namespace {

struct Named {
  Scenario scenario;
  std::string_view name;
  std::string_view mode;
};

constexpr Named kScenarios[] = {
    {Scenario::event_random_s_tuple, "event-random-S-tuple", "tuple"},
    {Scenario::event_random_s_subset, "event-random-S-subset", "subset"},
    {Scenario::planted_p, "planted-P", "planted"},
    {Scenario::radius_ball, "radius-ball", "radius"},
    {Scenario::planted_clique, "planted-clique", "clique"},
    {Scenario::nonrecon_proxy, "nonrecon-proxy", "proxy"},
};

std::string_view mode_of(Scenario s) {
  for (const auto& e : kScenarios)
    if (e.scenario == s) return e.mode;
  return "";
}

std::size_t pairs_of(std::size_t m) { return m * (m > 0 ? m - 1 : 0) / 2; }

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fmt_double(double x) { return fmt::format("{:.12g}", x); }

std::string_view strategy_name(BallStrategy s) {
  switch (s) {
    case BallStrategy::automatic: return "auto";
    case BallStrategy::enumerate: return "enumerate";
    case BallStrategy::search: return "search";
  }
  return "auto";
}

BallStrategy parse_strategy(std::string_view s) {
  if (s == "auto") return BallStrategy::automatic;
  if (s == "enumerate") return BallStrategy::enumerate;
  if (s == "search") return BallStrategy::search;
  throw ConfigError("ball_strategy must be auto, enumerate or search");
}

std::size_t clique_size(const ExperimentConfig& cfg, std::size_t n) {
  const double nd = static_cast<double>(n);
  switch (cfg.clique) {
    case CliqueSize::sqrt_n: return static_cast<std::size_t>(std::floor(std::sqrt(nd)));
    case CliqueSize::sqrt_n_over_log:
      return n < 2 ? 0 : static_cast<std::size_t>(std::floor(std::sqrt(nd) / std::log(nd)));
    case CliqueSize::fixed: return cfg.clique_fixed;
  }
  return 0;
}

EdgeProbabilities probabilities_for(const ExperimentConfig& cfg, std::size_t n) {
  const std::size_t v = n + cfg.delta;
  return uniform_box_probabilities(v, beta_for(cfg, n), cfg.alpha, cfg.fill,
                                   SeedSpec{derive_seed(trial_seed(cfg, n), 0x70), 0});
}

BallOptions ball_options(const ExperimentConfig& cfg) {
  BallOptions o;
  o.strategy = cfg.ball_strategy;
  o.enumerate_max_log2 = cfg.enumerate_max_log2;
  o.node_budget = cfg.node_budget;
  return o;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(std::move(cur));
  return out;
}

}  // namespace

std::string to_string(Scenario s) {
  for (const auto& e : kScenarios)
    if (e.scenario == s) return std::string(e.name);
  return "unknown";
}

Scenario parse_scenario(std::string_view name) {
  for (const auto& e : kScenarios)
    if (e.name == name) return e.scenario;
  throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

std::string to_string(EpsKind k) {
  switch (k) {
    case EpsKind::constant: return "constant";
    case EpsKind::pair_fraction: return "pair-fraction";
    case EpsKind::beta_n: return "beta-n";
    case EpsKind::beta_n_over_log: return "beta-n-over-log";
  }
  return "constant";
}

EpsKind parse_eps_kind(std::string_view name) {
  if (name == "constant") return EpsKind::constant;
  if (name == "pair-fraction") return EpsKind::pair_fraction;
  if (name == "beta-n") return EpsKind::beta_n;
  if (name == "beta-n-over-log") return EpsKind::beta_n_over_log;
  throw ConfigError("unknown eps_kind '" + std::string(name) + "'");
}

std::string to_string(Outcome o) { return o == Outcome::holds ? "holds" : "violated"; }

double beta_for(const ExperimentConfig& cfg, std::size_t n) { return beta_value(cfg.beta, n, cfg.beta_const); }

std::size_t eps_for(const ExperimentConfig& cfg, std::size_t n) {
  const std::size_t m = cfg.eps_at == EpsAt::full ? n + cfg.delta : n;
  const double md = static_cast<double>(m);
  switch (cfg.eps_kind) {
    case EpsKind::constant: return static_cast<std::size_t>(cfg.eps_value);
    case EpsKind::pair_fraction:
      return static_cast<std::size_t>(std::floor(cfg.eps_value * static_cast<double>(pairs_of(m)) + 1e-9));
    case EpsKind::beta_n: return static_cast<std::size_t>(std::floor(cfg.eps_value * beta_value(cfg.beta, m, cfg.beta_const) * md));
    case EpsKind::beta_n_over_log:
      return m < 2 ? 0
                   : static_cast<std::size_t>(
                         std::floor(cfg.eps_value * beta_value(cfg.beta, m, cfg.beta_const) * md / std::log(md)));
  }
  return 0;
}

std::uint64_t trial_seed(const ExperimentConfig& cfg, std::size_t n) { return derive_seed(cfg.master_seed, n); }

void ExperimentConfig::validate() const {
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (n.empty()) throw ConfigError("n list is empty");
  if (alpha <= 0) throw ConfigError("alpha must be positive");
  if (rho <= 0) throw ConfigError("rho must be positive");
  if (eps_value < 0) throw ConfigError("eps must be non-negative");
  if (eps_kind == EpsKind::pair_fraction && eps_value >= 1) throw ConfigError("pair-fraction eps must be below 1");
  if (scenario == Scenario::nonrecon_proxy && delta != 2) throw ConfigError("nonrecon-proxy requires delta = 2");
  for (auto m : n) {
    if (m < 1) throw ConfigError("every n must be at least 1");
    const std::size_t v = m + delta;
    const double box = alpha * beta_for(*this, m);
    if (!(box >= 0 && box <= 0.5))
      throw ConfigError(fmt::format("box alpha*beta(n) = {} exceeds 1/2 at n = {}", box, m));
    const auto e = eps_for(*this, m);
    const auto pairs = pairs_of(v);
    if ((scenario == Scenario::event_random_s_subset || scenario == Scenario::planted_p) && e > pairs)
      throw ConfigError(fmt::format("eps = {} exceeds the {} pairs at n = {}", e, pairs, m));
    if (scenario == Scenario::radius_ball && e > pairs)
      throw ConfigError(fmt::format("radius {} exceeds the {} pairs at n = {}", e, pairs, m));
    if (scenario == Scenario::planted_clique && clique_size(*this, m) > v)
      throw ConfigError(fmt::format("clique larger than the graph at n = {}", m));
    if (ball_strategy == BallStrategy::enumerate && scenario != Scenario::planted_clique &&
        scenario != Scenario::nonrecon_proxy && e > 20)
      throw ConfigError(fmt::format("ball_strategy = enumerate cannot cover eps = {} at n = {}", e, m));
  }
}

std::string ExperimentConfig::canonical() const {
  std::string ns;
  for (std::size_t i = 0; i < n.size(); ++i) ns += (i ? "," : "") + std::to_string(n[i]);
  return fmt::format(
      "scenario={};n={};delta={};beta={};beta_const={:.17g};alpha={:.17g};rho={:.17g};eps_kind={};eps={:.17g};"
      "eps_at={};fill={};planted_order={};clique={};clique_fixed={};trials={};master_seed={};ball_strategy={};"
      "enumerate_max_log2={};node_budget={};record_wall_time={}",
      to_string(scenario), ns, delta, to_string(beta), beta_const, alpha, rho, to_string(eps_kind), eps_value,
      eps_at == EpsAt::full ? "n+delta" : "n", fill == BoxFill::constant ? "constant" : "uniform",
      planted_order == PlantedOrder::before ? "before" : "after",
      clique == CliqueSize::sqrt_n ? "sqrt" : clique == CliqueSize::sqrt_n_over_log ? "sqrt-over-log" : "fixed",
      clique_fixed, trials, master_seed, strategy_name(ball_strategy), enumerate_max_log2, node_budget,
      record_wall_time);
}

std::string ExperimentConfig::hash() const { return fmt::format("{:016x}", fnv1a(canonical())); }

ExperimentConfig parse_config_toml(std::string_view text) {
  toml::table t;
  try {
    t = toml::parse(text);
  } catch (const toml::parse_error& e) {
    throw ConfigError(fmt::format("config TOML: {} (line {})", e.description(), e.source().begin.line));
  }
  static const std::vector<std::string_view> known = {
      "scenario", "n",     "delta", "beta",          "beta_const", "alpha",        "rho",
      "eps_kind", "eps",   "eps_at", "fill",         "planted_order", "clique",    "trials",
      "master_seed", "ball_strategy", "enumerate_max_log2", "node_budget", "record_wall_time"};
  for (const auto& [k, v] : t)
    if (std::find(known.begin(), known.end(), k.str()) == known.end())
      throw ConfigError("unknown config key '" + std::string(k.str()) + "'");

  auto get_int = [&](std::string_view key) -> std::optional<std::int64_t> {
    if (!t.contains(key)) return std::nullopt;
    auto v = t[key].value<std::int64_t>();
    if (!v) throw ConfigError("config key '" + std::string(key) + "' must be an integer");
    return v;
  };
  auto get_uint = [&](std::string_view key) -> std::optional<std::uint64_t> {
    auto v = get_int(key);
    if (!v) return std::nullopt;
    if (*v < 0) throw ConfigError("config key '" + std::string(key) + "' must be non-negative");
    return static_cast<std::uint64_t>(*v);
  };
  auto get_double = [&](std::string_view key) -> std::optional<double> {
    if (!t.contains(key)) return std::nullopt;
    auto v = t[key].value<double>();
    if (!v) throw ConfigError("config key '" + std::string(key) + "' must be a number");
    return v;
  };
  auto get_string = [&](std::string_view key) -> std::optional<std::string> {
    if (!t.contains(key)) return std::nullopt;
    auto v = t[key].value<std::string>();
    if (!v) throw ConfigError("config key '" + std::string(key) + "' must be a string");
    return v;
  };

  ExperimentConfig c;
  auto scen = get_string("scenario");
  if (!scen) throw ConfigError("config is missing 'scenario'");
  c.scenario = parse_scenario(*scen);
  if (auto* arr = t["n"].as_array()) {
    for (const auto& e : *arr) {
      auto v = e.value<std::int64_t>();
      if (!v || *v < 1) throw ConfigError("'n' must be a list of positive integers");
      c.n.push_back(static_cast<std::size_t>(*v));
    }
  } else if (auto one = get_uint("n")) {
    c.n.push_back(static_cast<std::size_t>(*one));
  } else {
    throw ConfigError("config is missing 'n'");
  }
  auto trials = get_uint("trials");
  if (!trials) throw ConfigError("config is missing 'trials'");
  c.trials = static_cast<std::size_t>(*trials);
  if (auto v = get_uint("delta")) c.delta = static_cast<std::size_t>(*v);
  if (auto v = get_string("beta")) {
    try {
      c.beta = parse_beta_preset(*v);
    } catch (const InputError& e) {
      throw ConfigError(e.what());
    }
  }
  if (auto v = get_double("beta_const")) c.beta_const = *v;
  if (auto v = get_double("alpha")) c.alpha = *v;
  if (auto v = get_double("rho")) c.rho = *v;
  if (auto v = get_string("eps_kind")) c.eps_kind = parse_eps_kind(*v);
  if (auto v = get_double("eps")) c.eps_value = *v;
  if (auto v = get_string("eps_at")) {
    if (*v == "n+delta") c.eps_at = EpsAt::full;
    else if (*v == "n") c.eps_at = EpsAt::n;
    else throw ConfigError("eps_at must be \"n+delta\" or \"n\"");
  }
  if (auto v = get_string("fill")) {
    if (*v == "constant") c.fill = BoxFill::constant;
    else if (*v == "uniform") c.fill = BoxFill::uniform;
    else throw ConfigError("fill must be constant or uniform");
  }
  if (auto v = get_string("planted_order")) {
    if (*v == "before") c.planted_order = PlantedOrder::before;
    else if (*v == "after") c.planted_order = PlantedOrder::after;
    else throw ConfigError("planted_order must be before or after");
  }
  if (t.contains("clique")) {
    if (auto s = t["clique"].value<std::string>()) {
      if (*s == "sqrt") c.clique = CliqueSize::sqrt_n;
      else if (*s == "sqrt-over-log") c.clique = CliqueSize::sqrt_n_over_log;
      else throw ConfigError("clique must be \"sqrt\", \"sqrt-over-log\" or an integer");
    } else if (auto k = get_uint("clique")) {
      c.clique = CliqueSize::fixed;
      c.clique_fixed = static_cast<std::size_t>(*k);
    }
  }
  if (auto v = get_uint("master_seed")) c.master_seed = *v;
  if (auto v = get_string("ball_strategy")) c.ball_strategy = parse_strategy(*v);
  if (auto v = get_uint("enumerate_max_log2")) c.enumerate_max_log2 = static_cast<std::size_t>(*v);
  if (auto v = get_uint("node_budget")) c.node_budget = *v;
  if (t.contains("record_wall_time")) {
    auto v = t["record_wall_time"].value<bool>();
    if (!v) throw ConfigError("record_wall_time must be a boolean");
    c.record_wall_time = *v;
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_toml(ss.str());
}

std::string config_to_toml(const ExperimentConfig& c) {
  std::string ns;
  for (std::size_t i = 0; i < c.n.size(); ++i) ns += (i ? ", " : "") + std::to_string(c.n[i]);
  std::string clique = c.clique == CliqueSize::fixed ? std::to_string(c.clique_fixed)
                       : c.clique == CliqueSize::sqrt_n ? "\"sqrt\""
                                                          : "\"sqrt-over-log\"";
  return fmt::format(
      "scenario = \"{}\"\nn = [{}]\ndelta = {}\nbeta = \"{}\"\nbeta_const = {:.17g}\nalpha = {:.17g}\n"
      "rho = {:.17g}\neps_kind = \"{}\"\neps = {:.17g}\neps_at = \"{}\"\nfill = \"{}\"\nplanted_order = \"{}\"\n"
      "clique = {}\ntrials = {}\nmaster_seed = {}\nball_strategy = \"{}\"\nenumerate_max_log2 = {}\n"
      "node_budget = {}\nrecord_wall_time = {}\n",
      to_string(c.scenario), ns, c.delta, to_string(c.beta), c.beta_const, c.alpha, c.rho, to_string(c.eps_kind),
      c.eps_value, c.eps_at == EpsAt::full ? "n+delta" : "n", c.fill == BoxFill::constant ? "constant" : "uniform",
      c.planted_order == PlantedOrder::before ? "before" : "after", clique, c.trials, c.master_seed,
      strategy_name(c.ball_strategy), c.enumerate_max_log2, c.node_budget, c.record_wall_time);
}

TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t n, std::size_t trial) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord r;
  r.config_hash = cfg.hash();
  r.scenario = cfg.scenario;
  r.n = n;
  r.delta = cfg.delta;
  r.beta = beta_for(cfg, n);
  r.alpha = cfg.alpha;
  r.eps = eps_for(cfg, n);
  r.mode = std::string(mode_of(cfg.scenario));
  r.trial = trial;
  r.seed = trial_seed(cfg, n);
  r.bound = std::exp(-cfg.rho * r.beta * static_cast<double>(n));

  const std::size_t v = n + cfg.delta;
  const auto probs = probabilities_for(cfg, n);
  Philox4x32 rng(r.seed, trial);
  Graph g = sample_graph(probs, rng);

  EventResult ev;
  switch (cfg.scenario) {
    case Scenario::event_random_s_tuple:
      ev = check_event_ball(g, sample_edit_tuple(v, r.eps, rng), cfg.delta, ball_options(cfg));
      break;
    case Scenario::event_random_s_subset:
      ev = check_event_ball(g, sample_edit_subset(v, r.eps, rng), cfg.delta, ball_options(cfg));
      break;
    case Scenario::planted_p: {
      EditSet p;
      if (cfg.planted_order == PlantedOrder::before) {
        Philox4x32 prng(derive_seed(r.seed, 0x50), 0);
        p = sample_edit_subset(v, r.eps, prng);
      } else {
        p = sample_edit_subset(v, r.eps, rng);
      }
      ev = check_event_ball(g, p, cfg.delta, ball_options(cfg));
      break;
    }
    case Scenario::radius_ball:
      ev = check_event_radius(g, r.eps, cfg.delta, ball_options(cfg));
      break;
    case Scenario::planted_clique: {
      const auto k = clique_size(cfg, n);
      const auto members = sample_vertex_subset(v, k, rng);
      for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) g.add_edge(members[i], members[j]);
      ev = check_event(g, cfg.delta);
      break;
    }
    case Scenario::nonrecon_proxy:
      ev = check_event(g, 2);
      break;
  }
  r.outcome = ev.holds ? Outcome::holds : Outcome::violated;
  r.exactness = ev.exactness;
  r.witness = std::move(ev.witness);
  r.work = ev.work;
  if (cfg.record_wall_time)
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned threads) {
  cfg.validate();
  const std::size_t per_n = cfg.trials;
  const std::size_t total = per_n * cfg.n.size();
  ExperimentResult out;
  out.records.resize(total);

  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::size_t err_index = total;
  std::exception_ptr err;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      try {
        out.records[i] = run_trial(cfg, cfg.n[i / per_n], i % per_n);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
        next.store(total);
        return;
      }
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);
  out.summary = summarize(out.records);
  return out;
}

std::string csv_row(const TrialRecord& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}", to_string(r.scenario), r.n, r.delta,
                     fmt_double(r.beta), fmt_double(r.alpha), r.eps, r.mode, r.trial, r.seed, to_string(r.outcome),
                     to_string(r.exactness), fmt_double(r.bound),
                     r.wall_ms ? fmt::format("{:.3f}", *r.wall_ms) : std::string());
}

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) out << csv_row(r) << '\n';
}

namespace {

struct Acc {
  SummaryRow row;
  double wall_sum = 0.0;
  std::uint64_t wall_count = 0;
};

void add(Acc& a, bool violated, bool exact, double bound, std::optional<double> wall) {
  ++a.row.trials;
  if (violated) ++a.row.failures;
  if (!exact) ++a.row.lower_bound_trials;
  a.row.bound = bound;
  if (wall) {
    a.wall_sum += *wall;
    ++a.wall_count;
    a.row.max_wall_ms = std::max(a.row.max_wall_ms.value_or(0.0), *wall);
  }
}

std::vector<SummaryRow> finish(std::vector<Acc>& accs) {
  std::vector<SummaryRow> rows;
  for (auto& a : accs) {
    auto& r = a.row;
    r.rate = static_cast<double>(r.failures) / static_cast<double>(r.trials);
    r.ci = clopper_pearson(r.failures, r.trials, 0.95);
    r.bound_flag = r.bound < r.ci.lo;
    if (a.wall_count) r.mean_wall_ms = a.wall_sum / static_cast<double>(a.wall_count);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
  std::vector<Acc> accs;
  std::map<std::pair<std::string, std::size_t>, std::size_t> index;
  for (const auto& r : records) {
    auto key = std::make_pair(to_string(r.scenario), r.n);
    auto [it, fresh] = index.emplace(key, accs.size());
    if (fresh) {
      accs.emplace_back();
      accs.back().row.scenario = key.first;
      accs.back().row.n = key.second;
    }
    add(accs[it->second], r.outcome == Outcome::violated, r.exactness == Exactness::exact, r.bound, r.wall_ms);
  }
  return finish(accs);
}

std::vector<SummaryRow> summarize_csv(std::istream& in) {
  std::vector<Acc> accs;
  std::map<std::pair<std::string, std::size_t>, std::size_t> index;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line == kCsvHeader) continue;
    const auto f = split_csv(line);
    if (f.size() != 13) throw ParseError(fmt::format("expected 13 fields, found {}", f.size()), lineno);
    try {
      std::size_t pos = 0;
      const auto n = std::stoull(f[1], &pos);
      if (pos != f[1].size()) throw std::invalid_argument("n");
      parse_scenario(f[0]);
      if (f[9] != "holds" && f[9] != "violated") throw std::invalid_argument("outcome");
      if (f[10] != "exact" && f[10] != "search-lower-bound" && f[10] != "sampled-lower-bound")
        throw std::invalid_argument("exactness");
      const double bound = std::stod(f[11]);
      std::optional<double> wall;
      if (!f[12].empty()) wall = std::stod(f[12]);
      auto key = std::make_pair(f[0], static_cast<std::size_t>(n));
      auto [it, fresh] = index.emplace(key, accs.size());
      if (fresh) {
        accs.emplace_back();
        accs.back().row.scenario = key.first;
        accs.back().row.n = key.second;
      }
      add(accs[it->second], f[9] == "violated", f[10] == "exact", bound, wall);
    } catch (const std::exception& e) {
      throw ParseError(fmt::format("malformed row ({})", e.what()), lineno);
    }
  }
  return finish(accs);
}

std::string summary_to_text(const std::vector<SummaryRow>& rows) {
  std::string out = "scenario,n,trials,failures,rate,ci_lo,ci_hi,bound,bound_below_ci,lower_bound_trials,mean_wall_ms,max_wall_ms\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", r.scenario, r.n, r.trials, r.failures,
                       fmt_double(r.rate), fmt_double(r.ci.lo), fmt_double(r.ci.hi), fmt_double(r.bound),
                       r.bound_flag ? "yes" : "no", r.lower_bound_trials,
                       r.mean_wall_ms ? fmt::format("{:.3f}", *r.mean_wall_ms) : std::string(),
                       r.max_wall_ms ? fmt::format("{:.3f}", *r.max_wall_ms) : std::string());
  }
  return out;
}

TrialRecord replay(const std::vector<ExperimentConfig>& known, std::string_view config_hash, std::size_t n,
                   std::size_t trial) {
  for (const auto& c : known) {
    if (c.hash() != config_hash) continue;
    if (std::find(c.n.begin(), c.n.end(), n) == c.n.end())
      throw NotFoundError(fmt::format("n = {} is not part of config {}", n, config_hash));
    if (trial >= c.trials) throw NotFoundError(fmt::format("trial {} out of range for config {}", trial, config_hash));
    return run_trial(c, n, trial);
  }
  throw NotFoundError("no known config has hash " + std::string(config_hash));
}

std::string manifest_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["config_hash"] = cfg.hash();
  j["canonical"] = cfg.canonical();
  j["toml"] = config_to_toml(cfg);
  j["version"] = std::string(kVersion);
  return j.dump(2);
}

std::string witness_to_json(const EventWitness& w) {
  nlohmann::json j;
  j["domain"] = w.domain;
  j["image"] = w.image;
  j["member_index"] = w.member_index;
  j["member"] = encode_graph6(w.member);
  return j.dump();
}

}  // namespace reconlab
