// fourmul: secret-shared multiplication demos, identity checks, and the
// statistical secrecy harness. Exit codes: 0 success, 1 failed check or
// broken invariant, 2 usage or configuration error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fourmul/field.hpp"
#include "fourmul/ntt.hpp"
#include "fourmul/protocol.hpp"
#include "fourmul/rng.hpp"
#include "fourmul/series.hpp"
#include "fourmul/simnet.hpp"

using namespace fourmul;
using nlohmann::ordered_json;

namespace {

constexpr double kPi = 3.14159265358979323846;

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << text << "\n";
  if (!out) throw ConfigError("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<ForcedDraw> parse_forced(const std::vector<std::uint64_t>& raw) {
  if (raw.empty()) return std::nullopt;
  if (raw.size() != 4 && raw.size() != 5)
    throw ConfigError("--force-params takes t1,t3,s1,s3 or t1,t3,s1,s3,rho");
  ForcedDraw d{raw[0], raw[1], raw[2], raw[3], std::nullopt};
  if (raw.size() == 5) d.rho = raw[4];
  return d;
}

EtaMode parse_mode(const std::string& name) {
  if (name == "exponent") return EtaMode::exponent;
  if (name == "multiplicative") return EtaMode::multiplicative;
  throw ConfigError("unknown mode: " + name);
}

// --- demo2 ---

struct Demo2Opts {
  std::uint64_t prime = 101;
  std::uint64_t a = 0, b = 0;
  std::uint64_t seed = 0;
  std::string mode = "exponent";
  std::vector<std::uint64_t> force;
  std::string out;
};

int run_demo2(const Demo2Opts& o) {
  Fp field(o.prime);
  if (o.a >= o.prime || o.b >= o.prime)
    throw ConfigError("secrets must be reduced mod the prime");
  Transcript t =
      run_2p_exact(field, field(o.a), field(o.b), o.seed, parse_mode(o.mode), parse_forced(o.force));
  AdversaryView view = adversary_view(t);

  FieldElement expected = field(o.a) * field(o.b);
  std::cout << "two-party exact run, p = " << o.prime << ", mode = " << t.mode << "\n";
  std::cout << "  wire shares   a0 = " << view.a0.value() << "  a0_hat = " << view.a0_hat.value()
            << "  alpha0 = " << view.alpha0.value()
            << "  alpha0_hat = " << view.alpha0_hat.value() << "\n";
  std::cout << "  node outputs  s1 = " << t.outputs[0].value() << "  s2 = " << t.outputs[1].value()
            << "\n";
  std::cout << "  reconstructed " << t.reconstructed.value() << "  expected "
            << expected.value() << "\n";
  if (!o.out.empty()) write_text(o.out, t.to_json());

  bool ok = t.reconstructed == expected;
  std::cout << (ok ? "OK: reconstruction equals a*b" : "FAIL: reconstruction mismatch") << "\n";
  return ok ? 0 : 1;
}

// --- demo3 ---

struct Demo3Opts {
  double a = 0, b = 0, c = 0;
  std::uint64_t seed = 0;
  int order = 10000;
  int trials = 1;
  double tol = 1e-3;
  std::string out;
};

int run_demo3(const Demo3Opts& o) {
  SimConfig cfg;
  cfg.protocol = "three-party-analytic";
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.real_secrets = {o.a, o.b, o.c};
  cfg.order = o.order;
  std::vector<AnalyticTrialOutcome> runs = run_analytic_trials(cfg);

  bool ok = true;
  ordered_json arr = ordered_json::array();
  std::cout << "three-party analytic run, order = " << o.order << "\n";
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const AnalyticTrialOutcome& r = runs[i];
    ok = ok && r.residual <= o.tol;
    std::cout << "  trial " << i << ": s1 = " << r.run.s1 << "  s2 = " << r.run.s2
              << "  value = " << r.run.value << "  expected = " << r.expected
              << "  residual = " << r.residual << "\n";
    ordered_json item;
    item["s1"] = r.run.s1;
    item["s2"] = r.run.s2;
    item["value"] = r.run.value;
    item["expected"] = r.expected;
    item["residual"] = r.residual;
    arr.push_back(item);
  }
  if (!o.out.empty()) {
    ordered_json j;
    j["schema_version"] = 1;
    j["kind"] = "analytic-trials";
    j["config"] = ordered_json::parse(cfg.to_json());
    j["trials"] = arr;
    write_text(o.out, j.dump());
  }
  std::cout << (ok ? "OK" : "FAIL") << ": all residuals within " << o.tol << "\n";
  return ok ? 0 : 1;
}

// --- demo-n ---

struct DemoNOpts {
  std::uint64_t prime = 97;
  std::vector<std::uint64_t> secrets;
  std::size_t nodes = 2;
  std::size_t length = 8;
  std::uint64_t seed = 0;
  int trials = 1;
  std::string out;
};

int run_demon(const DemoNOpts& o) {
  SimConfig cfg;
  cfg.prime = o.prime;
  cfg.protocol = "n-party-discrete";
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.secrets = o.secrets;
  cfg.nodes = o.nodes;
  cfg.length = o.length;
  std::vector<Transcript> ts = run_trials(cfg);

  Fp field(o.prime);
  FieldElement expected = field(1);
  for (std::uint64_t s : o.secrets) expected = expected * field(s);

  bool ok = true;
  std::cout << "n-party discrete run, p = " << o.prime << ", players = " << o.secrets.size()
            << ", nodes = " << o.nodes << ", length = " << o.length << "\n";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    ok = ok && ts[i].reconstructed == expected;
    std::cout << "  trial " << i << ": reconstructed = " << ts[i].reconstructed.value()
              << "  expected = " << expected.value() << "\n";
  }
  if (!o.out.empty()) {
    ordered_json j;
    j["schema_version"] = 1;
    j["kind"] = "transcripts";
    j["config"] = ordered_json::parse(cfg.to_json());
    j["transcripts"] = ordered_json::parse(transcripts_json(ts));
    write_text(o.out, j.dump());
  }
  std::cout << (ok ? "OK" : "FAIL") << ": every reconstruction equals the product\n";
  return ok ? 0 : 1;
}

// --- simulate ---

int run_simulate(const std::string& config_path, const std::string& out) {
  SimConfig cfg = SimConfig::from_json_text(read_file(config_path));
  ordered_json j;
  j["schema_version"] = 1;
  j["kind"] = cfg.is_analytic() ? "analytic-trials" : "transcripts";
  j["config"] = ordered_json::parse(cfg.to_json());
  if (cfg.is_analytic()) {
    ordered_json arr = ordered_json::array();
    double max_residual = 0.0;
    for (const AnalyticTrialOutcome& r : run_analytic_trials(cfg)) {
      ordered_json item;
      item["s1"] = r.run.s1;
      item["s2"] = r.run.s2;
      item["value"] = r.run.value;
      item["expected"] = r.expected;
      item["residual"] = r.residual;
      arr.push_back(item);
      max_residual = std::max(max_residual, r.residual);
    }
    j["trials"] = arr;
    j["max_residual"] = max_residual;
  } else {
    j["transcripts"] = ordered_json::parse(transcripts_json(run_trials(cfg)));
  }
  write_text(out, j.dump());
  return 0;
}

// --- verify-identities ---

struct IdentityCheck {
  std::string name;
  double residual;
  double tolerance;
  bool pass;
  std::optional<double> value, expected;
};

struct VerifyOpts {
  int order = 1000;
  int trials = 5;
  std::uint64_t seed = 1;
  std::string out;
};

int run_verify(const VerifyOpts& o) {
  if (o.order < 16) throw ConfigError("--order must be at least 16");
  if (o.trials < 0) throw ConfigError("--trials must be nonnegative");
  std::vector<IdentityCheck> checks;
  auto add = [&checks](const std::string& name, double residual, double tol,
                       std::optional<double> value = std::nullopt,
                       std::optional<double> expected = std::nullopt) {
    checks.push_back({name, residual, tol, residual <= tol, value, expected});
  };

  // Frozen special values of the convergent sums.
  double om_half = omega(0.5);
  add("omega-half", std::abs(om_half - (-2.0)), 1e-12, om_half, -2.0);
  double om_quarter = omega(0.25);
  add("omega-quarter", std::abs(om_quarter - (2.0 * kPi - 8.0)), 1e-12, om_quarter,
      2.0 * kPi - 8.0);
  double weighted = convergent_sum(0.75, 0.25, SumWeight::weighted);
  add("weighted-sum", std::abs(weighted - kPi), 1e-12, weighted, kPi);
  double unweighted = convergent_sum(0.75, 0.25, SumWeight::unweighted);
  double unweighted_closed = (3.0 * kPi / 16.0 - 0.5) * 256.0 / 9.0;
  add("unweighted-sum", std::abs(unweighted - unweighted_closed), 1e-12, unweighted,
      unweighted_closed);

  // Worked mask family.
  const double l = 1.0;
  SeriesFunction phi = quarter_mask_first(2.0, 7.0, l);
  SeriesFunction psi = quarter_mask_second(11.0, 13.0, l);
  SeriesFunction chi = quarter_mask_first(1.0, 1.0, l);

  ParsevalResult two = parseval_two(phi, psi, o.order);
  add("two-input-identity-worked", std::abs(two.lhs - two.rhs), 20.0 / o.order, two.lhs, two.rhs);
  ParsevalResult recast = parseval_two_recast(phi, psi, o.order);
  add("two-input-recast-agrees", std::abs(recast.lhs - two.lhs), 1e-9, recast.lhs, two.lhs);

  ParsevalResult three = parseval_three(phi, psi, chi, o.order);
  add("three-input-identity-worked", std::abs(three.lhs - three.rhs), 1e-4, three.lhs, three.rhs);
  SeriesFunction cosmask({{1.0, TrigKind::cosine, kPi / l}}, l);
  ParsevalResult pure = parseval_three(cosmask, cosmask, cosmask, 16);
  add("three-input-pure-cosine", std::abs(pure.lhs - pure.rhs), 1e-10, pure.lhs, pure.rhs);

  // Scaling the masks by 2, -3, 0.5 scales 1/eta by their product -3, so eta
  // itself shrinks to -base/3.
  double base = normalization_three(phi, psi, chi, o.order);
  double scaled = normalization_three(phi.scaled(2.0), psi.scaled(-3.0), chi.scaled(0.5),
                                      o.order);
  add("normalization-scaling", std::abs(scaled - base / -3.0), 1e-9 * std::abs(base), scaled,
      base / -3.0);

  // Convolution coefficient law: the standard law must match the periodized
  // convolution; the printed variant's deviation is reported, not judged.
  LawAdjudication adj = adjudicate_convolution_law(phi, psi, 24);
  bool std_matches = adj.matching == ConvolutionLaw::standard && adj.standard_max_dev <= 1e-6;
  checks.push_back({"convolution-law-worked", adj.standard_max_dev, 1e-6, std_matches,
                    adj.printed_max_dev, std::nullopt});

  SplitMix64 rng(o.seed);
  for (int t = 0; t < o.trials; ++t) {
    SeriesFunction f = quarter_mask_first(rng.uniform(0.5, 2.5), rng.uniform(0.5, 2.5), l);
    SeriesFunction g = quarter_mask_second(rng.uniform(0.5, 2.5), rng.uniform(0.5, 2.5), l);
    ParsevalResult pr = parseval_two(f, g, o.order);
    add("two-input-identity-random-" + std::to_string(t), std::abs(pr.lhs - pr.rhs),
        20.0 / o.order, pr.lhs, pr.rhs);
    LawAdjudication a = adjudicate_convolution_law(f, g, 16);
    checks.push_back({"convolution-law-random-" + std::to_string(t), a.standard_max_dev, 1e-6,
                      a.matching == ConvolutionLaw::standard && a.standard_max_dev <= 1e-6,
                      a.printed_max_dev, std::nullopt});
  }

  bool all_pass = true;
  for (const IdentityCheck& c : checks) {
    all_pass = all_pass && c.pass;
    std::printf("%s  %-32s residual %.3e (tol %.1e)", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.residual, c.tolerance);
    if (c.name == "unweighted-sum")
      std::printf("  value %.17g vs closed form %.17g", *c.value, *c.expected);
    if (c.name.rfind("convolution-law", 0) == 0)
      std::printf("  printed-law max deviation %.3e (informational)", *c.value);
    std::printf("\n");
  }
  std::cout << (all_pass ? "OK" : "FAIL") << ": " << checks.size() << " identity checks\n";

  if (!o.out.empty()) {
    ordered_json j;
    j["schema_version"] = 1;
    j["kind"] = "identity-report";
    j["order"] = o.order;
    j["trials"] = o.trials;
    j["seed"] = o.seed;
    ordered_json arr = ordered_json::array();
    for (const IdentityCheck& c : checks) {
      ordered_json item;
      item["name"] = c.name;
      item["residual"] = c.residual;
      item["tolerance"] = c.tolerance;
      item["pass"] = c.pass;
      if (c.value) item["value"] = *c.value;
      if (c.expected) item["expected"] = *c.expected;
      arr.push_back(item);
    }
    j["checks"] = arr;
    j["all_pass"] = all_pass;
    write_text(o.out, j.dump());
  }
  return all_pass ? 0 : 1;
}

// --- ntt-check ---

struct NttOpts {
  std::uint64_t prime = 97;
  std::uint64_t length = 32;
  int trials = 50;
  std::uint64_t seed = 1;
};

int run_nttcheck(const NttOpts& o) {
  if (o.trials < 1) throw ConfigError("--trials must be >= 1");
  Fp field(o.prime);
  FieldElement root = field.root_of_unity(o.length);  // FieldError -> exit 2 if N does not divide p-1
  const bool pow2 = (o.length & (o.length - 1)) == 0;

  SplitMix64 rng(o.seed);
  auto random_seq = [&] {
    std::vector<FieldElement> v;
    v.reserve(o.length);
    for (std::uint64_t i = 0; i < o.length; ++i) v.push_back(rng.element(field));
    return DftSequence(std::move(v), root);
  };

  int failures = 0;
  for (int t = 0; t < o.trials; ++t) {
    DftSequence f = random_seq(), g = random_seq();
    DftSequence F = dft_forward(f);
    if (dft_inverse(F).values() != f.values()) ++failures;
    if (pow2 && (dft_forward_fast(f).values() != F.values() ||
                 dft_inverse_fast(F).values() != f.values()))
      ++failures;
    auto [lhs, rhs] = parseval_discrete(f, g);
    if (lhs != rhs) ++failures;
    ConvolutionTheoremReport rep = convolution_theorem_check(f, g);
    if (!rep.product_rule || !rep.duality_rule) ++failures;
  }

  std::cout << "transform checks at p = " << o.prime << ", N = " << o.length << " (root "
            << root.value() << (pow2 ? ", radix-2 fast path exercised" : "") << "): " << o.trials
            << " trials, " << failures << " failures\n";
  return failures == 0 ? 0 : 1;
}

// --- security-stats ---

struct StatsOpts {
  std::uint64_t prime = 101;
  int trials = 100000;
  int experiments = 100;
  std::uint64_t seed = 0;
  double significance = 0.01;
  std::string component = "all";
  std::uint64_t secret_one = 1, secret_two = 2, bob = 5;
  std::string mode = "exponent";
  bool broken_dealer = false;
  std::string out;
};

int run_stats(const StatsOpts& o) {
  SecrecyConfig cfg;
  cfg.prime = o.prime;
  cfg.seed = o.seed;
  cfg.trials_per_secret = o.trials;
  cfg.alice_secret_one = o.secret_one;
  cfg.alice_secret_two = o.secret_two;
  cfg.bob_secret = o.bob;
  cfg.experiments = o.experiments;
  cfg.significance = o.significance;
  cfg.mode = parse_mode(o.mode);
  cfg.broken_dealer = o.broken_dealer;

  std::vector<std::size_t> selected;
  for (std::size_t c = 0; c < kViewComponents.size(); ++c)
    if (o.component == "all" || o.component == kViewComponents[c]) selected.push_back(c);
  if (selected.empty()) throw ConfigError("unknown component: " + o.component);

  SecrecyReport report = run_secrecy_experiments(cfg);

  // Honest dealer: each selected component may reject in at most 5% of
  // experiments. Broken dealer: a selected component must reject decisively.
  const int allowed = std::max(1, static_cast<int>(std::ceil(0.05 * o.experiments)));
  bool ok;
  double selected_min_p = 1.0;
  for (std::size_t c : selected)
    for (const auto& outcomes : report.experiments)
      selected_min_p = std::min(selected_min_p, outcomes[c].p_value);
  if (o.broken_dealer) {
    ok = selected_min_p < 1e-6;
  } else {
    ok = true;
    for (std::size_t c : selected) ok = ok && report.rejections[c] <= allowed;
  }

  std::cout << "secrecy statistics, p = " << o.prime << ", " << o.experiments
            << " experiments x 2 x " << o.trials << " runs, significance " << o.significance
            << (o.broken_dealer ? ", broken dealer" : "") << "\n";
  for (std::size_t c : selected)
    std::cout << "  " << kViewComponents[c] << ": " << report.rejections[c] << "/"
              << o.experiments << " rejections\n";
  std::cout << "  min p-value over selected components: " << selected_min_p << "\n";

  ordered_json report_json = ordered_json::parse(report.to_json());
  if (!o.broken_dealer) {
    // A small frozen-dealer control rides along with every honest run: the
    // detector itself must prove it would catch missing dealer randomness.
    SecrecyConfig ctl = cfg;
    ctl.broken_dealer = true;
    ctl.mode = EtaMode::exponent;
    ctl.experiments = 1;
    ctl.trials_per_secret = std::clamp(o.trials, 1000, 20000);
    SecrecyReport control = run_secrecy_experiments(ctl);
    bool ctl_rejects = control.experiments[0][0].p_value < 1e-6 &&
                       control.experiments[0][2].p_value < 1e-6;
    ordered_json nc;
    nc["trials_per_secret"] = ctl.trials_per_secret;
    ordered_json pv;
    for (const ComponentOutcome& c : control.experiments[0]) pv[c.component] = c.p_value;
    nc["p_values"] = pv;
    nc["rejects"] = ctl_rejects;
    report_json["negative_control"] = nc;
    std::cout << "  negative control (frozen dealer, " << ctl.trials_per_secret
              << " runs/secret): " << (ctl_rejects ? "rejected as expected" : "NOT rejected")
              << "\n";
    ok = ok && ctl_rejects;
  }
  if (!o.out.empty()) write_text(o.out, report_json.dump());

  if (o.broken_dealer)
    std::cout << (ok ? "OK" : "FAIL") << ": fixed dealer randomness is detected (p < 1e-6)\n";
  else
    std::cout << (ok ? "OK" : "FAIL") << ": rejection rate within " << allowed << "/"
              << o.experiments << " per component\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"secret-shared multiplication: demos, identity checks, statistics"};
  app.require_subcommand(1);

  Demo2Opts d2;
  CLI::App* demo2 = app.add_subcommand("demo2", "two-party exact multiplication run");
  demo2->add_option("--prime", d2.prime, "field modulus (prime)")->capture_default_str();
  demo2->add_option("--a", d2.a, "Alice's secret")->required();
  demo2->add_option("--b", d2.b, "Bob's secret")->required();
  demo2->add_option("--seed", d2.seed, "dealer seed")->capture_default_str();
  demo2->add_option("--mode", d2.mode, "eta split: exponent or multiplicative")
      ->capture_default_str();
  demo2->add_option("--force-params", d2.force, "dealer draw t1,t3,s1,s3[,rho]")->delimiter(',');
  demo2->add_option("--out", d2.out, "write the transcript JSON here ('-' for stdout)");

  Demo3Opts d3;
  CLI::App* demo3 = app.add_subcommand("demo3", "three-party analytic multiplication run");
  demo3->add_option("--a", d3.a, "first secret")->required();
  demo3->add_option("--b", d3.b, "second secret")->required();
  demo3->add_option("--c", d3.c, "third secret")->required();
  demo3->add_option("--seed", d3.seed, "mask seed")->capture_default_str();
  demo3->add_option("--order", d3.order, "series truncation order")->capture_default_str();
  demo3->add_option("--trials", d3.trials, "independent mask draws")->capture_default_str();
  demo3->add_option("--tol", d3.tol, "residual tolerance")->capture_default_str();
  demo3->add_option("--out", d3.out, "write the trial report JSON here");

  DemoNOpts dn;
  CLI::App* demon = app.add_subcommand("demo-n", "n-party discrete multiplication run");
  demon->add_option("--prime", dn.prime, "field modulus (prime)")->capture_default_str();
  demon->add_option("--secrets", dn.secrets, "comma-separated secrets, one per player")
      ->required()
      ->delimiter(',');
  demon->add_option("--nodes", dn.nodes, "node count")->capture_default_str();
  demon->add_option("--length", dn.length, "mask length (must divide p-1)")
      ->capture_default_str();
  demon->add_option("--seed", dn.seed, "dealer seed")->capture_default_str();
  demon->add_option("--trials", dn.trials, "repeated runs")->capture_default_str();
  demon->add_option("--out", dn.out, "write the transcript report JSON here");

  std::string sim_config, sim_out = "-";
  CLI::App* simulate = app.add_subcommand("simulate", "run a batch described by a JSON config");
  simulate->add_option("--config", sim_config, "path to the JSON config")->required();
  simulate->add_option("--out", sim_out, "report destination ('-' for stdout)")
      ->capture_default_str();

  VerifyOpts vo;
  CLI::App* verify = app.add_subcommand("verify-identities", "analytic identity regression report");
  verify->add_option("--order", vo.order, "series truncation order")->capture_default_str();
  verify->add_option("--trials", vo.trials, "random mask draws")->capture_default_str();
  verify->add_option("--seed", vo.seed, "draw seed")->capture_default_str();
  verify->add_option("--out", vo.out, "write the identity report JSON here");

  NttOpts no;
  CLI::App* ntt = app.add_subcommand("ntt-check", "exact transform self-checks");
  ntt->add_option("--prime", no.prime, "field modulus (prime)")->capture_default_str();
  ntt->add_option("--length", no.length, "transform length (must divide p-1)")
      ->capture_default_str();
  ntt->add_option("--trials", no.trials, "random inputs")->capture_default_str();
  ntt->add_option("--seed", no.seed, "input seed")->capture_default_str();

  StatsOpts so;
  CLI::App* stats = app.add_subcommand("security-stats", "view-distribution chi-squared experiments");
  stats->add_option("--prime", so.prime, "field modulus (prime)")->capture_default_str();
  stats->add_option("--trials", so.trials, "runs per secret per experiment")
      ->capture_default_str();
  stats->add_option("--experiments", so.experiments, "experiment count")->capture_default_str();
  stats->add_option("--seed", so.seed, "experiment seed")->capture_default_str();
  stats->add_option("--significance", so.significance, "per-test significance level")
      ->capture_default_str();
  stats->add_option("--component", so.component, "a0, alpha0, a0_hat, alpha0_hat, or all")
      ->capture_default_str();
  stats->add_option("--secret-one", so.secret_one, "first compared Alice secret")
      ->capture_default_str();
  stats->add_option("--secret-two", so.secret_two, "second compared Alice secret")
      ->capture_default_str();
  stats->add_option("--bob", so.bob, "Bob's fixed secret")->capture_default_str();
  stats->add_option("--mode", so.mode, "eta split: exponent or multiplicative")
      ->capture_default_str();
  stats->add_flag("--broken-dealer", so.broken_dealer,
                  "negative control: freeze the dealer's randomness");
  stats->add_option("--out", so.out, "write the full report JSON here");

  int rc = 0;
  demo2->callback([&] { rc = run_demo2(d2); });
  demo3->callback([&] { rc = run_demo3(d3); });
  demon->callback([&] { rc = run_demon(dn); });
  simulate->callback([&] { rc = run_simulate(sim_config, sim_out); });
  verify->callback([&] { rc = run_verify(vo); });
  ntt->callback([&] { rc = run_nttcheck(no); });
  stats->callback([&] { rc = run_stats(so); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const FieldError& e) {
    std::cerr << "field error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const ProtocolViolation& e) {
    std::cerr << "protocol violation: " << e.what() << "\n";
    return 1;
  } catch (const AnalyticError& e) {
    std::cerr << "analytic failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
