#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fourmul/protocol.hpp"

namespace fourmul {

/// Invalid simulation configuration (bad protocol name, arity mismatch,
/// out-of-range secrets). Maps to a usage error at the CLI.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Declarative description of a batch of protocol runs. Trial i derives its
/// seed as trial_seed(seed, i) = mix64(seed + (i+1) * golden), so trials are
/// independent streams and any prefix is reproducible.
struct SimConfig {
  std::uint64_t prime = 101;
  std::string protocol = "two-party-exact";  // two-party-analytic, three-party-analytic,
                                             // n-party-discrete
  std::uint64_t seed = 0;
  int trials = 1;
  std::vector<std::uint64_t> secrets;       // exact protocols
  std::vector<double> real_secrets;         // analytic protocols
  EtaMode mode = EtaMode::exponent;         // two-party-exact only
  std::optional<ForcedDraw> force_params;   // two-party-exact only
  int order = 10000;                        // analytic truncation order
  std::size_t nodes = 2;                    // n-party node count m
  std::size_t length = 8;                   // n-party mask length N

  /// Throws ConfigError unless every invariant holds (known protocol,
  /// trials >= 1, secrets arity and range match the protocol).
  void validate() const;
  bool is_analytic() const;

  static SimConfig from_json_text(const std::string& text);
  std::string to_json() const;
};

/// Runs the configured exact protocol trials. Every transcript is checked
/// (exactness against the plain product, purity via the protocol layer)
/// before it is returned. Analytic configs are rejected here; use
/// run_analytic_trials.
std::vector<Transcript> run_trials(const SimConfig& cfg);

/// JSON array of canonical transcript objects.
std::string transcripts_json(const std::vector<Transcript>& transcripts);

struct AnalyticTrialOutcome {
  AnalyticRun run;
  double expected;  // product of the real secrets
  double residual;  // |run.value - expected|
};

/// Runs the configured analytic protocol: fresh random mask parameters per
/// trial (quarter-harmonic family, amplitudes of magnitude in [0.5, 2] with
/// random signs), fixed secrets from the config.
std::vector<AnalyticTrialOutcome> run_analytic_trials(const SimConfig& cfg);

/// Counts of one view component over many runs. For p <= 1021 one bin per
/// field value; for larger p, 256 equal-width buckets of the canonical
/// representative.
struct ViewHistogram {
  std::string component;
  std::uint64_t prime = 0;
  std::vector<std::uint64_t> bins;
  std::uint64_t total = 0;

  static constexpr std::uint64_t kDirectBinLimit = 1021;
  static ViewHistogram make(std::string component, std::uint64_t prime);
  void add(std::uint64_t value);
};

struct IndependenceResult {
  double statistic;
  double p_value;
  std::uint64_t df;
};

/// Two-sample pooled-expectation chi-squared test that both histograms draw
/// from one distribution. Bins empty in the pooled sample are skipped;
/// df = nonempty pooled bins - 1. Requires identical components and binning
/// and an average pooled count of at least 100 per occupied bin.
IndependenceResult independence_test(const ViewHistogram& a, const ViewHistogram& b);

/// One secrecy experiment batch: view-component distributions under two
/// fixed values of Alice's secret, compared per component.
struct SecrecyConfig {
  std::uint64_t prime = 101;
  std::uint64_t seed = 0;
  int trials_per_secret = 100000;
  std::uint64_t alice_secret_one = 1, alice_secret_two = 2;
  std::uint64_t bob_secret = 5;
  int experiments = 100;
  double significance = 0.01;
  EtaMode mode = EtaMode::exponent;
  /// Negative control: the dealer re-issues one fixed parameter draw instead
  /// of sampling, making each share a deterministic function of the secret.
  bool broken_dealer = false;
};

inline constexpr std::array<const char*, 4> kViewComponents = {"a0", "alpha0", "a0_hat",
                                                               "alpha0_hat"};

struct ComponentOutcome {
  std::string component;
  double statistic;
  double p_value;
  bool rejected;
};

struct SecrecyReport {
  SecrecyConfig config;
  // experiments x components outcomes, in experiment order.
  std::vector<std::vector<ComponentOutcome>> experiments;
  // The first experiment's raw view counts, [side][component], kept so
  // reports carry the underlying distributions, not only the statistics.
  std::array<std::array<ViewHistogram, 4>, 2> first_histograms;
  std::array<int, 4> rejections{};  // per component, across experiments
  double max_rejection_rate = 0.0;
  double min_p_value = 1.0;

  std::string to_json() const;
};

/// Runs the full experiment grid. Seeds: experiment e uses
/// trial_seed(seed, e); side s of an experiment uses trial_seed(exp_seed, s);
/// trial i of a side uses trial_seed(side_seed, i).
SecrecyReport run_secrecy_experiments(const SecrecyConfig& cfg);

}  // namespace fourmul
