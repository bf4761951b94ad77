#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"

#include "fourmul/rng.hpp"
#include "fourmul/simnet.hpp"

using namespace fourmul;

namespace {

SimConfig worked_config() {
  SimConfig cfg;
  cfg.prime = 101;
  cfg.protocol = "two-party-exact";
  cfg.seed = 42;
  cfg.trials = 1;
  cfg.secrets = {3, 5};
  cfg.force_params = ForcedDraw{2, 7, 11, 13, 79};
  return cfg;
}

}  // namespace

TEST_CASE("sim config: json round trip") {
  SimConfig cfg = worked_config();
  std::string text = cfg.to_json();
  SimConfig back = SimConfig::from_json_text(text);
  CHECK(back.to_json() == text);
  CHECK(back.prime == 101);
  CHECK(back.secrets == std::vector<std::uint64_t>{3, 5});
  CHECK(back.force_params.has_value());
  CHECK(back.force_params->rho == std::uint64_t{79});

  SimConfig np;
  np.prime = 97;
  np.protocol = "n-party-discrete";
  np.secrets = {2, 3, 4};
  np.trials = 2;
  np.nodes = 3;
  np.length = 8;
  CHECK(SimConfig::from_json_text(np.to_json()).to_json() == np.to_json());

  SimConfig an = SimConfig::from_json_text(
      R"({"protocol":"three-party-analytic","seed":7,"trials":2,"secrets":[2.0,-3.0,1.5],"order":500})");
  CHECK(an.real_secrets == std::vector<double>{2.0, -3.0, 1.5});
  CHECK(an.order == 500);
  CHECK(SimConfig::from_json_text(an.to_json()).to_json() == an.to_json());
}

TEST_CASE("sim config: validation rejects malformed configs") {
  CHECK_THROWS_AS(SimConfig::from_json_text("{not json"), ConfigError);
  CHECK_THROWS_AS(SimConfig::from_json_text(R"([1,2])"), ConfigError);
  CHECK_THROWS_AS(SimConfig::from_json_text(R"({"protocol":"four-party"})"), ConfigError);
  CHECK_THROWS_AS(SimConfig::from_json_text(R"({"protcol":"two-party-exact"})"),
                  ConfigError);  // typo in key
  CHECK_THROWS_AS(SimConfig::from_json_text(R"({"secrets":[3,5],"trials":0})"), ConfigError);
  CHECK_THROWS_AS(SimConfig::from_json_text(R"({"secrets":[3],"trials":1})"), ConfigError);
  CHECK_THROWS_AS(SimConfig::from_json_text(R"({"prime":101,"secrets":[3,200]})"), ConfigError);
  CHECK_THROWS_AS(SimConfig::from_json_text(R"({"secrets":[3,5],"mode":"sideways"})"),
                  ConfigError);
  CHECK_THROWS_AS(
      SimConfig::from_json_text(
          R"({"protocol":"n-party-discrete","prime":97,"secrets":[2,3],"force_params":{"tau1":2,"tau3":7,"sigma1":11,"sigma3":13}})"),
      ConfigError);

  SimConfig bad = worked_config();
  bad.trials = -1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = worked_config();
  bad.secrets = {3, 5, 7};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = worked_config();
  bad.real_secrets = {1.0};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("run_trials: worked two-party instance and reproducibility") {
  SimConfig cfg = worked_config();
  std::vector<Transcript> ts = run_trials(cfg);
  REQUIRE(ts.size() == 1);
  CHECK(ts[0].outputs[0].value() == 38);
  CHECK(ts[0].outputs[1].value() == 78);
  CHECK(ts[0].reconstructed.value() == 15);
  CHECK(ts[0].seed == trial_seed(42, 0));

  cfg.force_params.reset();
  cfg.trials = 8;
  std::vector<Transcript> free_ts = run_trials(cfg);
  CHECK(free_ts.size() == 8);
  for (const Transcript& t : free_ts) {
    CHECK(t.protocol == "two-party-exact");
    CHECK(t.reconstructed.value() == 15);  // 3 * 5 mod 101
  }
  // Distinct trials draw distinct dealer parameters.
  CHECK(transcripts_json(free_ts) == transcripts_json(run_trials(cfg)));
  CHECK(free_ts[0].to_json() != free_ts[1].to_json());

  SimConfig analytic;
  analytic.protocol = "two-party-analytic";
  analytic.real_secrets = {2.0, 3.0};
  CHECK_THROWS_AS(run_trials(analytic), ConfigError);
}

TEST_CASE("run_trials: large batch always reconstructs the product") {
  SimConfig cfg;
  cfg.prime = 101;
  cfg.protocol = "two-party-exact";
  cfg.seed = 77;
  cfg.trials = 10000;
  cfg.secrets = {90, 47};
  FieldElement expected = Fp(101)(90) * Fp(101)(47);
  std::vector<Transcript> ts = run_trials(cfg);
  REQUIRE(ts.size() == 10000);
  for (const Transcript& t : ts) {
    if (t.reconstructed != expected) {
      REQUIRE(t.reconstructed == expected);  // report the first offender only
    }
  }
}

TEST_CASE("run_trials: n-party discrete batch") {
  SimConfig cfg;
  cfg.prime = 97;
  cfg.protocol = "n-party-discrete";
  cfg.seed = 9;
  cfg.trials = 3;
  cfg.secrets = {2, 3, 4};
  cfg.nodes = 3;
  cfg.length = 8;
  std::vector<Transcript> ts = run_trials(cfg);
  REQUIRE(ts.size() == 3);
  for (const Transcript& t : ts) {
    CHECK(t.protocol == "n-party-discrete");
    CHECK(t.reconstructed.value() == 24);
  }
  CHECK(transcripts_json(ts) == transcripts_json(run_trials(cfg)));
}

TEST_CASE("run_analytic_trials: residuals against the plain product") {
  SimConfig cfg;
  cfg.protocol = "two-party-analytic";
  cfg.seed = 11;
  cfg.trials = 5;
  cfg.real_secrets = {2.5, -1.5};
  cfg.order = 2000;
  std::vector<AnalyticTrialOutcome> runs = run_analytic_trials(cfg);
  REQUIRE(runs.size() == 5);
  for (const AnalyticTrialOutcome& r : runs) {
    CHECK(r.expected == -3.75);
    CHECK(r.residual < 1e-5);
  }
  // Bitwise reproducible.
  CHECK(run_analytic_trials(cfg)[3].run.value == runs[3].run.value);

  SimConfig cfg3;
  cfg3.protocol = "three-party-analytic";
  cfg3.seed = 12;
  cfg3.trials = 3;
  cfg3.real_secrets = {2.0, -3.0, 1.5};
  cfg3.order = 1000;
  for (const AnalyticTrialOutcome& r : run_analytic_trials(cfg3)) {
    CHECK(r.expected == -9.0);
    CHECK(r.residual < 1e-3);
  }

  CHECK_THROWS_AS(run_analytic_trials(worked_config()), ConfigError);
}

TEST_CASE("view histogram: binning rule") {
  ViewHistogram direct = ViewHistogram::make("a0", 101);
  CHECK(direct.bins.size() == 101);
  direct.add(0);
  direct.add(100);
  direct.add(100);
  CHECK(direct.total == 3);
  CHECK(direct.bins[0] == 1);
  CHECK(direct.bins[100] == 2);
  CHECK_THROWS_AS(direct.add(101), std::invalid_argument);

  CHECK(ViewHistogram::make("a0", 1021).bins.size() == 1021);  // boundary: still direct

  ViewHistogram wide = ViewHistogram::make("s1", 2147483647);  // 2^31 - 1
  CHECK(wide.bins.size() == 256);
  std::uint64_t width = 2147483647ull / 256 + 1;
  wide.add(0);
  wide.add(width - 1);
  wide.add(width);
  wide.add(2147483646ull);
  CHECK(wide.bins[0] == 2);
  CHECK(wide.bins[1] == 1);
  CHECK(wide.bins[2147483646ull / width] == 1);
  CHECK(wide.total == 4);
}

TEST_CASE("independence test: same and different generators") {
  Fp f(101);

  ViewHistogram a = ViewHistogram::make("a0", 101);
  ViewHistogram b = ViewHistogram::make("a0", 101);
  SplitMix64 ra(1), rb(2);
  for (int i = 0; i < 30000; ++i) {
    a.add(ra.nonzero_element(f).value());
    b.add(rb.nonzero_element(f).value());
  }
  IndependenceResult same = independence_test(a, b);
  CHECK(same.df == 99);  // all 100 nonzero values occupied, minus one
  CHECK(same.p_value > 1e-3);
  CHECK(same.p_value <= 1.0);

  // Uniform on all invertible values vs uniform on the squares only.
  ViewHistogram sq = ViewHistogram::make("a0", 101);
  SplitMix64 rs(3);
  for (int i = 0; i < 30000; ++i) {
    FieldElement x = rs.nonzero_element(f);
    sq.add((x * x).value());
  }
  IndependenceResult diff = independence_test(a, sq);
  CHECK(diff.p_value < 1e-12);

  ViewHistogram other = ViewHistogram::make("s1", 101);
  CHECK_THROWS_AS(independence_test(a, other), std::invalid_argument);
  ViewHistogram sparse = ViewHistogram::make("a0", 101);
  SplitMix64 rr(4);
  for (int i = 0; i < 500; ++i) sparse.add(rr.nonzero_element(f).value());
  CHECK_THROWS_AS(independence_test(a, sparse), std::invalid_argument);

  // Both histograms concentrated on one shared value: no degrees of freedom.
  ViewHistogram ca = ViewHistogram::make("a0", 101);
  ViewHistogram cb = ViewHistogram::make("a0", 101);
  for (int i = 0; i < 200; ++i) {
    ca.add(7);
    cb.add(7);
  }
  IndependenceResult none = independence_test(ca, cb);
  CHECK(none.df == 0);
  CHECK(none.p_value == 1.0);
  CHECK(none.statistic == 0.0);
}

TEST_CASE("secrecy experiments: honest dealer looks independent of the secret") {
  SecrecyConfig cfg;
  cfg.prime = 101;
  cfg.seed = 2024;
  cfg.trials_per_secret = 20000;
  cfg.experiments = 20;
  cfg.significance = 0.01;
  SecrecyReport report = run_secrecy_experiments(cfg);
  REQUIRE(report.experiments.size() == 20);
  for (int count : report.rejections) CHECK(count <= 2);  // ~0.2 expected at the 1% level
  CHECK(report.max_rejection_rate <= 0.1);
  CHECK(report.min_p_value > 1e-7);
  CHECK(report.to_json() == run_secrecy_experiments(cfg).to_json());

  // The first experiment's raw counts ride along in the report.
  for (const auto& side : report.first_histograms) {
    for (const ViewHistogram& h : side) {
      CHECK(h.total == 20000);
      std::uint64_t sum = 0;
      for (std::uint64_t b : h.bins) sum += b;
      CHECK(sum == h.total);
      CHECK(h.bins[0] == 0);  // nonzero secrets never produce a zero share
    }
  }
  CHECK(report.to_json().find("first_experiment_histograms") != std::string::npos);

  SecrecyConfig bad = cfg;
  bad.alice_secret_two = bad.alice_secret_one;
  CHECK_THROWS_AS(run_secrecy_experiments(bad), std::invalid_argument);
  bad = cfg;
  bad.bob_secret = 0;
  CHECK_THROWS_AS(run_secrecy_experiments(bad), std::invalid_argument);
  bad = cfg;
  bad.significance = 1.5;
  CHECK_THROWS_AS(run_secrecy_experiments(bad), std::invalid_argument);
}

TEST_CASE("secrecy experiments: broken dealer is caught immediately") {
  SecrecyConfig cfg;
  cfg.prime = 101;
  cfg.seed = 5;
  cfg.trials_per_secret = 5000;
  cfg.experiments = 3;
  cfg.broken_dealer = true;
  SecrecyReport report = run_secrecy_experiments(cfg);

  // Alice's shares are deterministic in her secret, so both of her components
  // reject every time with essentially zero p-value. Bob's secret is the same
  // on both sides, so his frozen shares carry no evidence at all.
  CHECK(report.rejections[0] == 3);  // a0
  CHECK(report.rejections[2] == 3);  // a0_hat
  CHECK(report.rejections[1] == 0);
  CHECK(report.rejections[3] == 0);
  CHECK(report.min_p_value < 1e-6);
  for (const auto& outcomes : report.experiments) {
    CHECK(outcomes[0].p_value < 1e-6);
    CHECK(outcomes[1].p_value == 1.0);
  }

  SecrecyConfig bad = cfg;
  bad.mode = EtaMode::multiplicative;
  CHECK_THROWS_AS(run_secrecy_experiments(bad), std::invalid_argument);
}
