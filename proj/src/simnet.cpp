#include "fourmul/simnet.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include <boost/math/distributions/chi_squared.hpp>

#include "json.hpp"

#include "fourmul/rng.hpp"
#include "fourmul/series.hpp"

namespace fourmul {

namespace {

using nlohmann::ordered_json;

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

constexpr const char* kProtocols[] = {"two-party-exact", "two-party-analytic",
                                      "three-party-analytic", "n-party-discrete"};

std::size_t protocol_arity(const std::string& protocol, std::size_t secret_count) {
  if (protocol == "two-party-exact" || protocol == "two-party-analytic") return 2;
  if (protocol == "three-party-analytic") return 3;
  return secret_count;  // n-party-discrete: arity is the secret count itself
}

}  // namespace

bool SimConfig::is_analytic() const {
  return protocol == "two-party-analytic" || protocol == "three-party-analytic";
}

void SimConfig::validate() const {
  bool known = std::find_if(std::begin(kProtocols), std::end(kProtocols),
                            [&](const char* p) { return protocol == p; }) != std::end(kProtocols);
  require(known, "unknown protocol: " + protocol);
  require(trials >= 1, "trials must be >= 1");

  const std::size_t arity = protocol_arity(protocol, secrets.size());
  if (is_analytic()) {
    require(real_secrets.size() == arity,
            protocol + " needs " + std::to_string(arity) + " real secrets");
    for (double s : real_secrets) require(std::isfinite(s), "secrets must be finite");
    require(order >= 1, "order must be >= 1");
    require(secrets.empty(), protocol + " takes real secrets, not field secrets");
  } else {
    require(prime >= 2, "prime must be >= 2");
    require(!secrets.empty() && secrets.size() == arity,
            protocol + " needs " + std::to_string(std::max<std::size_t>(arity, 2)) +
                " field secrets");
    for (std::uint64_t s : secrets)
      require(s < prime, "secret " + std::to_string(s) + " is not reduced mod the prime");
    require(real_secrets.empty(), protocol + " takes field secrets, not real secrets");
  }
  if (protocol == "n-party-discrete") {
    require(secrets.size() >= 2, "n-party-discrete needs at least 2 secrets");
    require(nodes >= 1, "nodes must be >= 1");
    require(length >= 1, "length must be >= 1");
  }
  if (force_params) require(protocol == "two-party-exact", "force_params is two-party-exact only");
}

SimConfig SimConfig::from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require(j.is_object(), "config must be a JSON object");

  static const std::set<std::string> allowed = {"prime",  "protocol",     "seed",
                                                "trials", "secrets",      "mode",
                                                "order",  "force_params", "nodes",
                                                "length"};
  for (const auto& item : j.items())
    require(allowed.count(item.key()) != 0, "unknown config key: " + item.key());

  SimConfig cfg;
  try {
    if (j.contains("protocol")) cfg.protocol = j.at("protocol").get<std::string>();
    if (j.contains("prime")) cfg.prime = j.at("prime").get<std::uint64_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
    if (j.contains("order")) cfg.order = j.at("order").get<int>();
    if (j.contains("nodes")) cfg.nodes = j.at("nodes").get<std::size_t>();
    if (j.contains("length")) cfg.length = j.at("length").get<std::size_t>();
    if (j.contains("secrets")) {
      require(j.at("secrets").is_array(), "secrets must be an array");
      for (const auto& s : j.at("secrets")) {
        if (cfg.is_analytic())
          cfg.real_secrets.push_back(s.get<double>());
        else
          cfg.secrets.push_back(s.get<std::uint64_t>());
      }
    }
    if (j.contains("mode")) {
      std::string m = j.at("mode").get<std::string>();
      if (m == "exponent")
        cfg.mode = EtaMode::exponent;
      else if (m == "multiplicative")
        cfg.mode = EtaMode::multiplicative;
      else
        throw ConfigError("unknown mode: " + m);
    }
    if (j.contains("force_params")) {
      const auto& f = j.at("force_params");
      require(f.is_object(), "force_params must be an object");
      ForcedDraw d{f.at("tau1").get<std::uint64_t>(), f.at("tau3").get<std::uint64_t>(),
                   f.at("sigma1").get<std::uint64_t>(), f.at("sigma3").get<std::uint64_t>(),
                   std::nullopt};
      if (f.contains("rho")) d.rho = f.at("rho").get<std::uint64_t>();
      cfg.force_params = d;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::string SimConfig::to_json() const {
  validate();
  ordered_json j;
  j["prime"] = prime;
  j["protocol"] = protocol;
  j["seed"] = seed;
  j["trials"] = trials;
  if (is_analytic()) {
    j["secrets"] = real_secrets;
    j["order"] = order;
  } else {
    j["secrets"] = secrets;
  }
  if (protocol == "two-party-exact") {
    j["mode"] = to_string(mode);
    if (force_params) {
      ordered_json f;
      f["tau1"] = force_params->tau1;
      f["tau3"] = force_params->tau3;
      f["sigma1"] = force_params->sigma1;
      f["sigma3"] = force_params->sigma3;
      if (force_params->rho) f["rho"] = *force_params->rho;
      j["force_params"] = f;
    }
  }
  if (protocol == "n-party-discrete") {
    j["nodes"] = nodes;
    j["length"] = length;
  }
  return j.dump();
}

std::vector<Transcript> run_trials(const SimConfig& cfg) {
  cfg.validate();
  require(!cfg.is_analytic(), "analytic protocols run through run_analytic_trials");
  Fp field(cfg.prime);

  std::vector<Transcript> out;
  out.reserve(static_cast<std::size_t>(cfg.trials));
  for (int i = 0; i < cfg.trials; ++i) {
    std::uint64_t ts = trial_seed(cfg.seed, static_cast<std::uint64_t>(i));
    if (cfg.protocol == "two-party-exact") {
      out.push_back(run_2p_exact(field, field(cfg.secrets[0]), field(cfg.secrets[1]), ts, cfg.mode,
                                 cfg.force_params));
    } else {
      SplitMix64 rng(ts);
      NPartyDiscreteParams params =
          trusty_offline_np(field, cfg.secrets.size(), cfg.length, cfg.nodes, rng);
      std::vector<FieldElement> secrets;
      secrets.reserve(cfg.secrets.size());
      for (std::uint64_t s : cfg.secrets) secrets.push_back(field(s));
      out.push_back(run_np_discrete(field, secrets, params, ts));
    }
  }
  return out;
}

std::string transcripts_json(const std::vector<Transcript>& transcripts) {
  ordered_json arr = ordered_json::array();
  for (const Transcript& t : transcripts) arr.push_back(ordered_json::parse(t.to_json()));
  return arr.dump();
}

std::vector<AnalyticTrialOutcome> run_analytic_trials(const SimConfig& cfg) {
  cfg.validate();
  require(cfg.is_analytic(), "exact protocols run through run_trials");

  std::vector<AnalyticTrialOutcome> out;
  out.reserve(static_cast<std::size_t>(cfg.trials));
  double expected = 1.0;
  for (double s : cfg.real_secrets) expected *= s;

  const double l = 1.0;
  for (int i = 0; i < cfg.trials; ++i) {
    SplitMix64 rng(trial_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    auto amp = [&rng] { return rng.uniform(0.5, 2.0); };
    // Positive quarter-harmonic amplitudes keep the normalization integral
    // bounded away from zero; a degenerate draw is retried on a fresh stream.
    for (int attempt = 0;; ++attempt) {
      try {
        AnalyticRun run;
        if (cfg.protocol == "two-party-analytic") {
          NormalizedMaskPair masks = make_normalized_pair(amp(), amp(), amp(), amp(), l, 0.5);
          run = run_2p_analytic(cfg.real_secrets[0], cfg.real_secrets[1], masks, cfg.order);
        } else {
          std::array<SeriesFunction, 3> masks = {quarter_mask_first(amp(), amp(), l),
                                                 quarter_mask_second(amp(), amp(), l),
                                                 quarter_mask_first(amp(), amp(), l)};
          run = run_3p_analytic(cfg.real_secrets[0], cfg.real_secrets[1], cfg.real_secrets[2],
                                masks, cfg.order);
        }
        out.push_back({run, expected, std::abs(run.value - expected)});
        break;
      } catch (const AnalyticError&) {
        if (attempt >= 16) throw;
      }
    }
  }
  return out;
}

ViewHistogram ViewHistogram::make(std::string component, std::uint64_t prime) {
  if (prime < 2) throw std::invalid_argument("histogram needs a modulus >= 2");
  ViewHistogram h;
  h.component = std::move(component);
  h.prime = prime;
  h.bins.assign(prime <= kDirectBinLimit ? static_cast<std::size_t>(prime) : 256, 0);
  return h;
}

void ViewHistogram::add(std::uint64_t value) {
  if (value >= prime) throw std::invalid_argument("histogram value exceeds the modulus");
  std::size_t idx;
  if (prime <= kDirectBinLimit) {
    idx = static_cast<std::size_t>(value);
  } else {
    std::uint64_t width = prime / 256 + (prime % 256 != 0);  // ceil(p / 256), overflow-safe
    idx = static_cast<std::size_t>(value / width);
  }
  ++bins[idx];
  ++total;
}

IndependenceResult independence_test(const ViewHistogram& a, const ViewHistogram& b) {
  if (a.component != b.component || a.prime != b.prime || a.bins.size() != b.bins.size())
    throw std::invalid_argument("histograms are not comparable");
  if (a.total == 0 || b.total == 0) throw std::invalid_argument("histograms are empty");

  std::size_t occupied = 0;
  for (std::size_t i = 0; i < a.bins.size(); ++i)
    if (a.bins[i] + b.bins[i] > 0) ++occupied;
  // The chi-squared approximation needs well-filled cells.
  if (a.total < 100 * occupied || b.total < 100 * occupied)
    throw std::invalid_argument("histograms too sparse: need >= 100 counts per occupied bin");

  if (occupied <= 1) return {0.0, 1.0, 0};  // one shared value: no evidence either way

  const double na = static_cast<double>(a.total), nb = static_cast<double>(b.total);
  double stat = 0.0;
  for (std::size_t i = 0; i < a.bins.size(); ++i) {
    const double pooled = static_cast<double>(a.bins[i] + b.bins[i]);
    if (pooled == 0.0) continue;
    const double ea = pooled * na / (na + nb);
    const double eb = pooled * nb / (na + nb);
    const double da = static_cast<double>(a.bins[i]) - ea;
    const double db = static_cast<double>(b.bins[i]) - eb;
    stat += da * da / ea + db * db / eb;
  }
  const std::uint64_t df = occupied - 1;
  boost::math::chi_squared dist(static_cast<double>(df));
  const double p = boost::math::cdf(boost::math::complement(dist, stat));
  return {stat, p, df};
}

namespace {

/// Dealer parameters for the broken-dealer control: one honest draw, then
/// frozen (root included), so every run reuses identical parameters and the
/// wire shares become deterministic functions of the secrets.
ForcedDraw frozen_draw(const Fp& field, std::uint64_t seed) {
  SplitMix64 probe(mix64(seed ^ 0xb7c0a2f1d3e5c817ull));
  OfflineParams2P p = trusty_offline_2p(field, probe, EtaMode::exponent);
  return ForcedDraw{p.tau1.value(), p.tau3.value(), p.sigma1.value(), p.sigma3.value(),
                    p.alice_factor.value()};
}

}  // namespace

SecrecyReport run_secrecy_experiments(const SecrecyConfig& cfg) {
  if (cfg.trials_per_secret < 1) throw std::invalid_argument("trials_per_secret must be >= 1");
  if (cfg.experiments < 1) throw std::invalid_argument("experiments must be >= 1");
  if (!(cfg.significance > 0.0 && cfg.significance < 1.0))
    throw std::invalid_argument("significance must lie in (0, 1)");
  Fp field(cfg.prime);
  const std::array<std::uint64_t, 3> secrets = {cfg.alice_secret_one, cfg.alice_secret_two,
                                                cfg.bob_secret};
  for (std::uint64_t s : secrets)
    if (s == 0 || s >= cfg.prime)
      throw std::invalid_argument("secrets must be nonzero and reduced mod the prime");
  if (cfg.alice_secret_one == cfg.alice_secret_two)
    throw std::invalid_argument("the two compared secrets must differ");
  if (cfg.broken_dealer && cfg.mode != EtaMode::exponent)
    throw std::invalid_argument("the broken-dealer control is exponent-mode only");

  std::optional<ForcedDraw> forced;
  if (cfg.broken_dealer) forced = frozen_draw(field, cfg.seed);

  const FieldElement bob_secret = field(cfg.bob_secret);

  SecrecyReport report;
  report.config = cfg;
  report.experiments.reserve(static_cast<std::size_t>(cfg.experiments));

  for (int e = 0; e < cfg.experiments; ++e) {
    const std::uint64_t exp_seed = trial_seed(cfg.seed, static_cast<std::uint64_t>(e));
    std::array<std::array<ViewHistogram, 4>, 2> hists;
    for (int side = 0; side < 2; ++side) {
      for (std::size_t c = 0; c < kViewComponents.size(); ++c)
        hists[side][c] = ViewHistogram::make(kViewComponents[c], cfg.prime);
      const FieldElement alice_secret =
          field(side == 0 ? cfg.alice_secret_one : cfg.alice_secret_two);
      const std::uint64_t side_seed = trial_seed(exp_seed, static_cast<std::uint64_t>(side));
      for (int i = 0; i < cfg.trials_per_secret; ++i) {
        SplitMix64 rng(trial_seed(side_seed, static_cast<std::uint64_t>(i)));
        OfflineParams2P params = trusty_offline_2p(field, rng, cfg.mode, forced);
        PlayerShare2P alice = player_online_2p(alice_secret, params.alice_packet());
        PlayerShare2P bob = player_online_2p(bob_secret, params.bob_packet());
        hists[side][0].add(alice.to_node1.core().value());
        hists[side][1].add(bob.to_node1.core().value());
        hists[side][2].add(alice.to_node2.core().value());
        hists[side][3].add(bob.to_node2.core().value());
      }
    }

    if (e == 0) report.first_histograms = hists;

    std::vector<ComponentOutcome> outcomes;
    outcomes.reserve(kViewComponents.size());
    for (std::size_t c = 0; c < kViewComponents.size(); ++c) {
      IndependenceResult r = independence_test(hists[0][c], hists[1][c]);
      const bool rejected = r.p_value < cfg.significance;
      if (rejected) ++report.rejections[c];
      report.min_p_value = std::min(report.min_p_value, r.p_value);
      outcomes.push_back({kViewComponents[c], r.statistic, r.p_value, rejected});
    }
    report.experiments.push_back(std::move(outcomes));
  }

  for (int count : report.rejections)
    report.max_rejection_rate = std::max(
        report.max_rejection_rate, static_cast<double>(count) / static_cast<double>(cfg.experiments));
  return report;
}

std::string SecrecyReport::to_json() const {
  ordered_json j;
  j["schema_version"] = 1;
  j["kind"] = "secrecy-report";
  ordered_json c;
  c["prime"] = config.prime;
  c["seed"] = config.seed;
  c["trials_per_secret"] = config.trials_per_secret;
  c["alice_secret_one"] = config.alice_secret_one;
  c["alice_secret_two"] = config.alice_secret_two;
  c["bob_secret"] = config.bob_secret;
  c["experiments"] = config.experiments;
  c["significance"] = config.significance;
  c["mode"] = to_string(config.mode);
  c["broken_dealer"] = config.broken_dealer;
  j["config"] = c;

  ordered_json exps = ordered_json::array();
  for (const auto& outcomes : experiments) {
    ordered_json row = ordered_json::array();
    for (const ComponentOutcome& o : outcomes) {
      ordered_json item;
      item["component"] = o.component;
      item["statistic"] = o.statistic;
      item["p_value"] = o.p_value;
      item["rejected"] = o.rejected;
      row.push_back(item);
    }
    exps.push_back(row);
  }
  j["experiments"] = exps;

  ordered_json hist_block;
  for (int side = 0; side < 2; ++side) {
    ordered_json per_side;
    for (const ViewHistogram& h : first_histograms[side]) {
      ordered_json item;
      item["bins"] = h.bins;
      item["total"] = h.total;
      per_side[h.component] = item;
    }
    hist_block[side == 0 ? "secret_one" : "secret_two"] = per_side;
  }
  j["first_experiment_histograms"] = hist_block;

  ordered_json rej;
  for (std::size_t c = 0; c < kViewComponents.size(); ++c) rej[kViewComponents[c]] = rejections[c];
  j["rejections"] = rej;
  j["max_rejection_rate"] = max_rejection_rate;
  j["min_p_value"] = min_p_value;
  return j.dump();
}

}  // namespace fourmul
