#include "fourmul/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "json.hpp"

namespace fourmul {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

FieldElement mint(const FieldElement& like, std::uint64_t v) {
  return FieldElement(v % like.modulus(), like.modulus());
}

TaggedScalar tagged(FieldElement core, int pi_half, int sqrt2) {
  return TaggedScalar(core, pi_half, sqrt2);
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

nlohmann::ordered_json payload_json(const std::vector<std::pair<std::string, TaggedScalar>>& p) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [name, value] : p) {
    nlohmann::ordered_json item;
    item["name"] = name;
    item["core"] = std::to_string(value.core().value());
    item["pi_half"] = value.pi_half();
    item["sqrt2"] = value.sqrt2_exp();
    arr.push_back(std::move(item));
  }
  return arr;
}

}  // namespace

const char* to_string(EtaMode mode) {
  return mode == EtaMode::exponent ? "exponent" : "multiplicative";
}

OfflineParams2P trusty_offline_2p(const Fp& field, SplitMix64& rng, EtaMode mode,
                                  const std::optional<ForcedDraw>& forced) {
  require(field.p() > 3, "field too small for mask sampling");
  int resamples = 0;
  for (;;) {
    FieldElement t1, t3, s1, s3;
    if (forced) {
      t1 = field(forced->tau1);
      t3 = field(forced->tau3);
      s1 = field(forced->sigma1);
      s3 = field(forced->sigma3);
      require(!t1.is_zero() && !t3.is_zero() && !s1.is_zero() && !s3.is_zero(),
              "forced mask parameters must be nonzero");
    } else {
      t1 = rng.nonzero_element(field);
      t3 = rng.nonzero_element(field);
      s1 = rng.nonzero_element(field);
      s3 = rng.nonzero_element(field);
    }
    FieldElement doubled = field(2) * (t1 * s1 + t3 * s3);
    if (doubled.is_zero()) {
      require(!forced, "forced parameters give a non-invertible normalization");
      ++resamples;
      continue;
    }
    FieldElement eta_core = inv(doubled);

    OfflineParams2P out;
    out.tau1 = t1;
    out.tau3 = t3;
    out.sigma1 = s1;
    out.sigma3 = s3;
    out.eta_core = eta_core;
    out.mode = mode;
    out.resamples = resamples;

    if (mode == EtaMode::exponent) {
      std::optional<FieldElement> root = sqrt(eta_core);
      if (!root) {
        require(!forced, "forced eta core is not a square; no root exists");
        ++resamples;
        continue;
      }
      FieldElement rho = *root;
      if (forced && forced->rho) {
        rho = field(*forced->rho);
        require(rho * rho == eta_core, "forced rho does not square to the eta core");
      } else if (!forced) {
        // Both square roots are valid; the drawn sign keeps the pair symmetric.
        if (rng.next() & 1) rho = -rho;
      }
      out.alice_factor = rho;
      out.bob_factor = rho;
      out.alice_pi_half = 1;
      out.bob_pi_half = 1;
    } else {
      FieldElement eta_a = rng.nonzero_element(field);
      out.alice_factor = eta_a;
      out.bob_factor = eta_core * inv(eta_a);
      out.alice_pi_half = 0;
      out.bob_pi_half = 2;
    }
    return out;
  }
}

PlayerShare2P player_online_2p(FieldElement secret, const PlayerPacket2P& packet) {
  require(packet.param1.modulus() != 0 && packet.param1.modulus() == packet.param3.modulus() &&
              packet.param1.modulus() == packet.factor.modulus(),
          "malformed packet: mismatched field");
  require(secret.modulus() == packet.param1.modulus(), "secret from a different field");
  require(!packet.param1.is_zero() && !packet.param3.is_zero() && !packet.factor.is_zero(),
          "malformed packet: zero parameter");
  return PlayerShare2P{tagged(secret * packet.param3 * packet.factor, packet.factor_pi_half, 0),
                       tagged(secret * packet.param1 * packet.factor, packet.factor_pi_half, 0)};
}

TaggedScalar node_output_2p(const TaggedScalar& share_a, const TaggedScalar& share_b) {
  TaggedScalar fold = tagged(mint(share_a.core(), 2), -2, 0);
  TaggedScalar out = fold * share_a * share_b;
  if (!out.is_pure())
    throw ProtocolViolation("node output is impure: formal exponents do not cancel");
  return out;
}

TaggedScalar node_output_2p_literal(const TaggedScalar& share_a, const TaggedScalar& share_b) {
  FieldElement four = mint(share_a.core(), 4);
  // a0-style value: (4 sqrt2 / (3 pi)) * share; alpha0-style: (4 sqrt2 / pi) * share.
  TaggedScalar c_a = tagged(four * inv(mint(share_a.core(), 3)), -2, 1);
  TaggedScalar c_b = tagged(four, -2, 1);
  // Node rule: (3 pi / 16) * a0 * alpha0.
  TaggedScalar c_s = tagged(mint(share_a.core(), 3) * inv(mint(share_a.core(), 16)), 2, 0);
  TaggedScalar out = c_s * (c_a * share_a) * (c_b * share_b);
  if (!out.is_pure())
    throw ProtocolViolation("literal node output is impure: formal exponents do not cancel");
  return out;
}

FieldElement reconstruct(const std::vector<FieldElement>& outputs) {
  require(!outputs.empty(), "no node outputs to reconstruct from");
  FieldElement acc = outputs.front();
  for (std::size_t i = 1; i < outputs.size(); ++i) acc = acc + outputs[i];
  return acc;
}

ExactRun2P run_2p_core(const Fp& field, FieldElement a, FieldElement b, SplitMix64& rng,
                       EtaMode mode, const std::optional<ForcedDraw>& forced) {
  ExactRun2P run;
  run.params = trusty_offline_2p(field, rng, mode, forced);
  run.alice = player_online_2p(a, run.params.alice_packet());
  run.bob = player_online_2p(b, run.params.bob_packet());
  TaggedScalar s1 = node_output_2p(run.alice.to_node1, run.bob.to_node1);
  TaggedScalar s2 = node_output_2p(run.alice.to_node2, run.bob.to_node2);
  if (!(node_output_2p_literal(run.alice.to_node1, run.bob.to_node1) == s1) ||
      !(node_output_2p_literal(run.alice.to_node2, run.bob.to_node2) == s2))
    throw ProtocolViolation("folded and literal node rules disagree");
  run.s1 = s1.reveal();
  run.s2 = s2.reveal();
  run.reconstructed = reconstruct({run.s1, run.s2});
  return run;
}

Transcript run_2p_exact(const Fp& field, FieldElement a, FieldElement b, std::uint64_t seed,
                        EtaMode mode, const std::optional<ForcedDraw>& forced) {
  SplitMix64 rng(seed);
  ExactRun2P run = run_2p_core(field, a, b, rng, mode, forced);
  const OfflineParams2P& prm = run.params;

  Transcript t;
  t.protocol = "two-party-exact";
  t.prime = field.p();
  t.seed = seed;
  t.mode = to_string(mode);
  t.resamples = prm.resamples;
  t.rounds = {
      {0, "trusty", "alice",
       {{"tau1", TaggedScalar::pure(prm.tau1)},
        {"tau3", TaggedScalar::pure(prm.tau3)},
        {"factor", tagged(prm.alice_factor, prm.alice_pi_half, 0)}}},
      {0, "trusty", "bob",
       {{"sigma1", TaggedScalar::pure(prm.sigma1)},
        {"sigma3", TaggedScalar::pure(prm.sigma3)},
        {"factor", tagged(prm.bob_factor, prm.bob_pi_half, 0)}}},
      {0, "trusty", "node1", {{"eta", prm.eta()}}},
      {0, "trusty", "node2", {{"eta", prm.eta()}}},
      {1, "alice", "node1", {{"a0", run.alice.to_node1}}},
      {1, "alice", "node2", {{"a0_hat", run.alice.to_node2}}},
      {1, "bob", "node1", {{"alpha0", run.bob.to_node1}}},
      {1, "bob", "node2", {{"alpha0_hat", run.bob.to_node2}}},
  };
  t.outputs = {run.s1, run.s2};
  t.reconstructed = run.reconstructed;
  if (a.is_zero()) t.flags.push_back("zero-secret-alice");
  if (b.is_zero()) t.flags.push_back("zero-secret-bob");
  if (forced) t.flags.push_back("forced-params");
  return t;
}

std::string Transcript::to_json() const {
  nlohmann::ordered_json j;
  j["protocol"] = protocol;
  j["prime"] = prime;
  j["seed"] = seed;
  j["mode"] = mode;
  nlohmann::ordered_json rounds_json = nlohmann::ordered_json::array();
  for (const TranscriptEntry& e : rounds) {
    nlohmann::ordered_json entry;
    entry["round"] = e.round;
    entry["sender"] = e.sender;
    entry["receiver"] = e.receiver;
    entry["payload"] = payload_json(e.payload);
    rounds_json.push_back(std::move(entry));
  }
  j["rounds"] = std::move(rounds_json);
  nlohmann::ordered_json outs = nlohmann::ordered_json::array();
  for (const FieldElement& o : outputs) outs.push_back(std::to_string(o.value()));
  j["outputs"] = std::move(outs);
  j["reconstructed"] = std::to_string(reconstructed.value());
  j["resamples"] = resamples;
  j["flags"] = flags;
  return j.dump();
}

AdversaryView adversary_view(const Transcript& t) {
  std::optional<FieldElement> a0, alpha0, a0_hat, alpha0_hat;
  std::optional<TaggedScalar> eta;
  for (const TranscriptEntry& e : t.rounds) {
    if (e.receiver != "node1" && e.receiver != "node2") continue;
    for (const auto& [name, value] : e.payload) {
      if (name == "a0") a0 = value.core();
      else if (name == "alpha0") alpha0 = value.core();
      else if (name == "a0_hat") a0_hat = value.core();
      else if (name == "alpha0_hat") alpha0_hat = value.core();
      else if (name == "eta" && !eta) eta = value;
    }
  }
  if (!a0 || !alpha0 || !a0_hat || !alpha0_hat || !eta)
    throw ProtocolViolation("incomplete transcript: node messages missing");
  return AdversaryView{*a0, *alpha0, *a0_hat, *alpha0_hat, *eta, t.outputs};
}

// --- analytic protocols ---

SeriesFunction quarter_mask_first(double t1, double t3, double half_period) {
  double base = kPi / (4.0 * half_period);
  return SeriesFunction({{t1, TrigKind::sine, base}, {t3, TrigKind::cosine, 3.0 * base}},
                        half_period);
}

SeriesFunction quarter_mask_second(double s1, double s3, double half_period) {
  double base = kPi / (4.0 * half_period);
  return SeriesFunction({{s1, TrigKind::sine, 3.0 * base}, {s3, TrigKind::cosine, base}},
                        half_period);
}

NormalizedMaskPair make_normalized_pair(double t1, double t3, double s1, double s3,
                                        double half_period, double q) {
  require(q > 0.0 && q < 1.0, "normalization exponent q must lie in (0,1)");
  SeriesFunction phi = quarter_mask_first(t1, t3, half_period);
  SeriesFunction psi = quarter_mask_second(s1, s3, half_period);
  double ip = integrate(phi, psi);
  if (std::abs(ip) < 1e-12) throw AnalyticError("degenerate masks: product integral vanishes");
  double eta = 1.0 / ip;
  double mag = std::abs(eta);
  double sign = eta < 0.0 ? -1.0 : 1.0;
  NormalizedMaskPair pair{phi.scaled(sign * std::pow(mag, q)),
                          psi.scaled(std::pow(mag, 1.0 - q)), eta, q};
  if (std::abs(integrate(pair.alice_mask, pair.bob_mask) - 1.0) > 1e-9)
    throw AnalyticError("normalization contract violated");
  return pair;
}

AnalyticRun run_2p_analytic(double a, double b, const NormalizedMaskPair& masks, int order,
                            SumMode mode) {
  require(order >= 1, "truncation order must be positive");
  FourierCoeffs F = fourier_coeffs(masks.alice_mask.scaled(a), order);
  FourierCoeffs G = fourier_coeffs(masks.bob_mask.scaled(b), order);
  auto sum = mode == SumMode::tail_corrected ? tail_corrected_sum : truncated_sum;
  double s1 = 0.5 * F.a0 * G.a0 + sum([&](double n) { return F.a(n) * G.a(n); }, order);
  double s2 = sum([&](double n) { return F.b(n) * G.b(n); }, order);
  return AnalyticRun{s1, s2, s1 + s2};
}

AnalyticRun run_3p_analytic(double a, double b, double c,
                            const std::array<SeriesFunction, 3>& masks, int order, double q1,
                            double q2) {
  require(order >= 1, "truncation order must be positive");
  require(q1 > 0.0 && q2 > 0.0 && q1 + q2 < 1.0,
          "normalization exponents must be positive with q1 + q2 < 1");
  double eta = normalization_three(masks[0], masks[1], masks[2], 8 * order);
  double mag = std::abs(eta);
  double sign = eta < 0.0 ? -1.0 : 1.0;
  FourierCoeffs F = fourier_coeffs(masks[0].scaled(a * std::pow(mag, q1)), order);
  FourierCoeffs G = fourier_coeffs(masks[1].scaled(b * std::pow(mag, q2)), order);
  FourierCoeffs H =
      fourier_coeffs(masks[2].scaled(c * sign * std::pow(mag, 1.0 - q1 - q2)), order);
  double s1 = 0.5 * F.a0 * G.a0 * H.a0 +
              0.5 * tail_corrected_sum(
                        [&](double n) {
                          return (F.a(n) + F.b(n)) * (G.a(n) + G.b(n)) * (H.a(n) + H.b(n));
                        },
                        order);
  double s2 = 0.5 * tail_corrected_sum(
                        [&](double n) {
                          return (F.a(n) - F.b(n)) * (G.a(n) - G.b(n)) * (H.a(n) - H.b(n));
                        },
                        order);
  return AnalyticRun{s1, s2, s1 + s2};
}

// --- n-party exact discrete protocol ---

NPartyDiscreteParams trusty_offline_np(const Fp& field, std::size_t k, std::size_t n_len,
                                       std::size_t m, SplitMix64& rng) {
  require(k >= 2, "need at least two players");
  require(m >= 2, "need at least two nodes");
  require(n_len >= 1, "mask length must be positive");
  FieldElement root = field.root_of_unity(n_len);  // validates n_len | p-1

  NPartyDiscreteParams out;
  out.resamples = 0;
  std::vector<std::vector<FieldElement>> values;
  FieldElement total;
  for (;;) {
    values.assign(k, {});
    for (std::size_t i = 0; i < k; ++i) {
      values[i].reserve(n_len);
      for (std::size_t n = 0; n < n_len; ++n) values[i].push_back(rng.element(field));
    }
    total = field(0);
    for (std::size_t n = 0; n < n_len; ++n) {
      FieldElement prod = field(1);
      for (std::size_t i = 0; i < k; ++i) prod = prod * values[i][n];
      total = total + prod;
    }
    if (!total.is_zero()) break;
    ++out.resamples;
  }
  out.eta = inv(total);
  out.masks.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.masks.emplace_back(std::move(values[i]), root);

  FieldElement prod = field(1);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    FieldElement share = rng.nonzero_element(field);
    out.eta_shares.push_back(share);
    prod = prod * share;
  }
  out.eta_shares.push_back(out.eta * inv(prod));

  out.node_partition.assign(m, {});
  for (std::size_t n = 0; n < n_len; ++n)
    out.node_partition[n % m].push_back(static_cast<std::uint32_t>(n));
  return out;
}

Transcript run_np_discrete(const Fp& field, const std::vector<FieldElement>& secrets,
                           const NPartyDiscreteParams& params, std::uint64_t seed) {
  std::size_t k = params.masks.size();
  require(k >= 2 && secrets.size() == k, "one secret per player, at least two players");
  require(params.eta_shares.size() == k, "one eta share per player");
  std::size_t n_len = params.masks.front().size();
  for (const DftSequence& mask : params.masks)
    require(mask.size() == n_len && mask.modulus() == field.p(), "masks must share length and field");

  // The partition must cover [0, N) exactly once.
  std::vector<int> seen(n_len, 0);
  for (const auto& part : params.node_partition)
    for (std::uint32_t idx : part) {
      if (idx >= n_len || seen[idx]++)
        throw ProtocolViolation("node partition is not a disjoint cover");
    }
  for (int s : seen)
    if (!s) throw ProtocolViolation("node partition is not a disjoint cover");

  FieldElement share_prod = field(1);
  for (const FieldElement& s : params.eta_shares) share_prod = share_prod * s;
  if (!(share_prod == params.eta))
    throw ProtocolViolation("eta shares do not multiply to eta");

  Transcript t;
  t.protocol = "n-party-discrete";
  t.prime = field.p();
  t.seed = seed;
  t.resamples = params.resamples;

  std::vector<std::vector<FieldElement>> payload(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::string player = "player" + std::to_string(i + 1);
    TranscriptEntry dealer{0, "trusty", player, {}};
    dealer.payload.emplace_back("eta_share", TaggedScalar::pure(params.eta_shares[i]));
    payload[i].reserve(n_len);
    for (std::size_t n = 0; n < n_len; ++n) {
      FieldElement mask_val = params.masks[i][static_cast<std::int64_t>(n)];
      dealer.payload.emplace_back("mask[" + std::to_string(n) + "]",
                                  TaggedScalar::pure(mask_val));
      payload[i].push_back(secrets[i] * params.eta_shares[i] * mask_val);
    }
    t.rounds.push_back(std::move(dealer));
    if (secrets[i].is_zero()) t.flags.push_back("zero-secret-" + player);
  }

  std::size_t m = params.node_partition.size();
  for (std::size_t i = 0; i < k; ++i) {
    std::string player = "player" + std::to_string(i + 1);
    for (std::size_t j = 0; j < m; ++j) {
      TranscriptEntry wire{1, player, "node" + std::to_string(j + 1), {}};
      for (std::uint32_t idx : params.node_partition[j])
        wire.payload.emplace_back("c[" + std::to_string(idx) + "]",
                                  TaggedScalar::pure(payload[i][idx]));
      t.rounds.push_back(std::move(wire));
    }
  }

  for (std::size_t j = 0; j < m; ++j) {
    FieldElement s_j = field(0);
    for (std::uint32_t idx : params.node_partition[j]) {
      FieldElement prod = field(1);
      for (std::size_t i = 0; i < k; ++i) prod = prod * payload[i][idx];
      s_j = s_j + prod;
    }
    t.outputs.push_back(s_j);
  }
  t.reconstructed = reconstruct(t.outputs);

  FieldElement expected = field(1);
  for (const FieldElement& s : secrets) expected = expected * s;
  if (!(t.reconstructed == expected))
    throw ProtocolViolation("reconstruction does not equal the product of the secrets");
  return t;
}

}  // namespace fourmul
