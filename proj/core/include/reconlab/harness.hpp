#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reconlab/events.hpp"
#include "reconlab/sampling.hpp"
#include "reconlab/stats.hpp"

namespace reconlab {

enum class Scenario {
  event_random_s_tuple,
  event_random_s_subset,
  planted_p,
  radius_ball,
  planted_clique,
  nonrecon_proxy,
};
std::string to_string(Scenario s);
Scenario parse_scenario(std::string_view name);

/// ε as a function of the vertex count m it is evaluated at.
enum class EpsKind {
  constant,         // value
  pair_fraction,    // ⌊value·C(m,2)⌋
  beta_n,           // ⌊value·β(m)·m⌋
  beta_n_over_log,  // ⌊value·β(m)·m / ln m⌋
};
std::string to_string(EpsKind k);
EpsKind parse_eps_kind(std::string_view name);

/// Which vertex count ε is evaluated at.
enum class EpsAt { full, n };  // v(G) = n + δ, or n

enum class CliqueSize { sqrt_n, sqrt_n_over_log, fixed };
enum class PlantedOrder { before, after };

struct ExperimentConfig {
  Scenario scenario = Scenario::event_random_s_subset;
  std::vector<std::size_t> n;
  std::size_t delta = 2;
  BetaPreset beta = BetaPreset::constant;
  double beta_const = 0.5;
  double alpha = 1.0;
  double rho = 1.0;
  EpsKind eps_kind = EpsKind::constant;
  double eps_value = 0.0;
  EpsAt eps_at = EpsAt::full;
  BoxFill fill = BoxFill::constant;
  PlantedOrder planted_order = PlantedOrder::before;
  CliqueSize clique = CliqueSize::sqrt_n;
  std::size_t clique_fixed = 0;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  BallStrategy ball_strategy = BallStrategy::automatic;
  std::size_t enumerate_max_log2 = 8;
  std::uint64_t node_budget = 1'000'000;
  bool record_wall_time = true;

  /// Throws ConfigError on a violated invariant.
  void validate() const;
  /// Stable textual form; the config hash is FNV-1a 64 of this.
  std::string canonical() const;
  std::string hash() const;
};

/// Every field is optional except scenario, n and trials. Throws ConfigError.
ExperimentConfig parse_config_toml(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_toml(const ExperimentConfig& cfg);

enum class Outcome { holds, violated };
std::string to_string(Outcome o);

struct TrialRecord {
  std::string config_hash;
  Scenario scenario = Scenario::event_random_s_subset;
  std::size_t n = 0;
  std::size_t delta = 0;
  double beta = 0.0;
  double alpha = 0.0;
  std::size_t eps = 0;
  std::string mode;
  std::size_t trial = 0;
  std::uint64_t seed = 0;  // Philox key for this n; the stream is the trial index
  Outcome outcome = Outcome::holds;
  Exactness exactness = Exactness::exact;
  double bound = 0.0;
  std::optional<double> wall_ms;
  std::optional<EventWitness> witness;
  std::uint64_t work = 0;
};

/// The per-n Philox key.
std::uint64_t trial_seed(const ExperimentConfig& cfg, std::size_t n);
std::size_t eps_for(const ExperimentConfig& cfg, std::size_t n);
double beta_for(const ExperimentConfig& cfg, std::size_t n);

/// One trial, a pure function of (cfg, n, trial) apart from wall time.
TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t n, std::size_t trial);

struct SummaryRow {
  std::string scenario;
  std::size_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double rate = 0.0;
  Interval ci;  // Clopper-Pearson 95%
  double bound = 0.0;
  /// bound below the lower confidence limit.
  bool bound_flag = false;
  std::uint64_t lower_bound_trials = 0;  // rows whose exactness is not exact
  std::optional<double> mean_wall_ms;
  std::optional<double> max_wall_ms;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;  // n-major, then trial order
  std::vector<SummaryRow> summary;
};

/// Trials run on `threads` workers; the output order and content do not
/// depend on the worker count.
ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned threads = 1);

inline constexpr std::string_view kCsvHeader =
    "scenario,n,delta,beta,alpha,eps,mode,trial,seed,outcome,exactness,bound,wall_ms";

std::string csv_row(const TrialRecord& r);
void write_csv(std::ostream& out, const std::vector<TrialRecord>& records);

/// Groups CSV rows by (scenario, n) in first-appearance order. Throws
/// ParseError with the 1-based line on malformed input.
std::vector<SummaryRow> summarize_csv(std::istream& in);
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);
std::string summary_to_text(const std::vector<SummaryRow>& rows);

/// Re-runs one trial of whichever known config has the given hash. Throws
/// NotFoundError when none does or n is not in its list.
TrialRecord replay(const std::vector<ExperimentConfig>& known, std::string_view config_hash, std::size_t n,
                   std::size_t trial);

/// JSON with the config hash, canonical config, TOML text and tool version.
std::string manifest_json(const ExperimentConfig& cfg);

std::string witness_to_json(const EventWitness& w);

}  // namespace reconlab
