#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fourmul/field.hpp"
#include "fourmul/ntt.hpp"
#include "fourmul/rng.hpp"
#include "fourmul/series.hpp"

namespace fourmul {

/// A protocol invariant failed at runtime (impure output, broken partition).
/// Precondition violations (bad forced parameters, arity mismatches) throw
/// std::invalid_argument instead.
class ProtocolViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How the dealer splits the normalization eta between the two players:
/// a square root held by both (default), or a uniform multiplicative pair.
enum class EtaMode { exponent, multiplicative };

const char* to_string(EtaMode mode);

/// Dealer-forced parameter draw (worked examples, negative controls).
struct ForcedDraw {
  std::uint64_t tau1, tau3, sigma1, sigma3;
  std::optional<std::uint64_t> rho;  // exponent mode only; must square to eta_core
};

/// Per-player dealer packet: the two mask parameters and the player's
/// normalization factor with its formal half-pi exponent.
struct PlayerPacket2P {
  FieldElement param1, param3;
  FieldElement factor;
  int factor_pi_half;
};

struct OfflineParams2P {
  FieldElement tau1, tau3, sigma1, sigma3;
  FieldElement eta_core;  // inv(2 (tau1 sigma1 + tau3 sigma3))
  EtaMode mode;
  FieldElement alice_factor, bob_factor;  // exponent: rho, rho; multiplicative: eta_a, eta_b
  int alice_pi_half, bob_pi_half;         // +1, +1  /  0, +2
  int resamples;

  /// eta as a tagged scalar: core eta_core, one full formal pi.
  TaggedScalar eta() const { return TaggedScalar(eta_core, 2, 0); }
  PlayerPacket2P alice_packet() const {
    return PlayerPacket2P{tau1, tau3, alice_factor, alice_pi_half};
  }
  PlayerPacket2P bob_packet() const {
    return PlayerPacket2P{sigma1, sigma3, bob_factor, bob_pi_half};
  }
};

/// Samples mask parameters until 2(t1 s1 + t3 s3) is invertible and, in
/// exponent mode, a quadratic residue; derives the player factors. The root
/// sign is drawn from the rng, so both square roots occur. Deterministic in
/// the rng state; resamples are counted.
OfflineParams2P trusty_offline_2p(const Fp& field, SplitMix64& rng,
                                  EtaMode mode = EtaMode::exponent,
                                  const std::optional<ForcedDraw>& forced = std::nullopt);

/// The two wire shares a player sends: node 1 receives secret*param3*factor,
/// node 2 receives secret*param1*factor, both tagged with the factor's formal
/// half-pi exponent.
struct PlayerShare2P {
  TaggedScalar to_node1, to_node2;
};

PlayerShare2P player_online_2p(FieldElement secret, const PlayerPacket2P& packet);

/// Node output, constant-folded: s = 2 * share_a * share_b with the fold
/// carrying formal exponent pi^{-1}. Throws ProtocolViolation if the result
/// is impure (net formal exponents nonzero).
TaggedScalar node_output_2p(const TaggedScalar& share_a, const TaggedScalar& share_b);

/// Same value computed by the literal published rule: s = (3 pi / 16) * a0 *
/// alpha0 where a0 = (4 sqrt2 / (3 pi)) * share_a and alpha0 = (4 sqrt2 / pi)
/// * share_b keep every constant in tagged form until the final cancellation.
TaggedScalar node_output_2p_literal(const TaggedScalar& share_a, const TaggedScalar& share_b);

/// Sum of node outputs.
FieldElement reconstruct(const std::vector<FieldElement>& outputs);

struct TranscriptEntry {
  int round;
  std::string sender, receiver;
  std::vector<std::pair<std::string, TaggedScalar>> payload;
};

struct Transcript {
  std::string protocol;
  std::uint64_t prime = 0;
  std::uint64_t seed = 0;
  std::string mode;  // eta split for two-party runs; empty otherwise
  std::vector<TranscriptEntry> rounds;
  std::vector<FieldElement> outputs;
  FieldElement reconstructed;
  int resamples = 0;
  std::vector<std::string> flags;

  /// Canonical JSON: fixed key order, field elements as decimal strings.
  /// Byte-identical for identical runs.
  std::string to_json() const;
};

struct ExactRun2P {
  OfflineParams2P params;
  PlayerShare2P alice, bob;
  FieldElement s1, s2;
  FieldElement reconstructed;
};

/// One full dealer/player/node round without transcript assembly (the hot
/// path for statistics). Validates purity and the folded-vs-literal agreement.
ExactRun2P run_2p_core(const Fp& field, FieldElement a, FieldElement b, SplitMix64& rng,
                       EtaMode mode = EtaMode::exponent,
                       const std::optional<ForcedDraw>& forced = std::nullopt);

/// run_2p_core plus the full message transcript (dealer broadcast of eta to
/// the nodes, player wire shares, node outputs).
Transcript run_2p_exact(const Fp& field, FieldElement a, FieldElement b, std::uint64_t seed,
                        EtaMode mode = EtaMode::exponent,
                        const std::optional<ForcedDraw>& forced = std::nullopt);

/// Everything the nodes jointly observe: the four wire shares, eta, and the
/// node outputs. Never the mask parameters or the secrets.
struct AdversaryView {
  FieldElement a0, alpha0, a0_hat, alpha0_hat;
  TaggedScalar eta;
  std::vector<FieldElement> outputs;
};

/// Extracts the view from a completed two-party transcript; throws
/// ProtocolViolation if any expected message is missing.
AdversaryView adversary_view(const Transcript& t);

// --- analytic protocols ---

/// Mask at quarter-harmonic frequencies: t1 sin(pi x / 4l) + t3 cos(3 pi x / 4l).
SeriesFunction quarter_mask_first(double t1, double t3, double half_period);
/// Companion mask: s1 sin(3 pi x / 4l) + s3 cos(pi x / 4l).
SeriesFunction quarter_mask_second(double s1, double s3, double half_period);

struct NormalizedMaskPair {
  SeriesFunction alice_mask, bob_mask;  // normalization factors already applied
  double eta;
  double q;  // alice carries |eta|^q, bob |eta|^{1-q}; eta's sign rides with alice
};

/// Builds the normalized pair from the quarter-harmonic family; validates
/// (1/l) int alice*bob = 1. Throws AnalyticError on degenerate parameters.
NormalizedMaskPair make_normalized_pair(double t1, double t3, double s1, double s3,
                                        double half_period, double q = 0.5);

enum class SumMode { bare, tail_corrected };

struct AnalyticRun {
  double s1, s2;
  double value;  // s1 + s2
};

/// Real-valued two-party run: node 1 sums the constant and cosine coefficient
/// products, node 2 the sine products. value approximates a*b to the
/// truncation tail (tail-corrected by default).
AnalyticRun run_2p_analytic(double a, double b, const NormalizedMaskPair& masks, int order,
                            SumMode mode = SumMode::tail_corrected);

/// Real-valued three-party run on arbitrary masks: normalization_three at an
/// oversampled order, player scalings |eta|^{q1}, |eta|^{q2},
/// sign(eta)|eta|^{1-q1-q2}, node sums per the three-input identity split.
AnalyticRun run_3p_analytic(double a, double b, double c,
                            const std::array<SeriesFunction, 3>& masks, int order,
                            double q1 = 1.0 / 3.0, double q2 = 1.0 / 3.0);

// --- n-party exact discrete protocol ---

struct NPartyDiscreteParams {
  std::vector<DftSequence> masks;                       // one per player, length N
  FieldElement eta;                                     // inv(sum_k prod_i masks[i][k])
  std::vector<FieldElement> eta_shares;                 // product equals eta
  std::vector<std::vector<std::uint32_t>> node_partition;  // disjoint cover of [0,N)
  int resamples;
};

/// Draws k coefficient-domain masks of length n_len (resampling until the
/// product sum is invertible), multiplicative eta shares, and the index
/// partition kappa mod m. Masks are drawn before the partition, so the node
/// count never influences the draw.
NPartyDiscreteParams trusty_offline_np(const Fp& field, std::size_t k, std::size_t n_len,
                                       std::size_t m, SplitMix64& rng);

/// Player i sends secret_i * eta_share_i * mask_i restricted to each node's
/// index set; node j multiplies across players and sums its indices. The
/// reconstruction equals the product of the secrets exactly.
Transcript run_np_discrete(const Fp& field, const std::vector<FieldElement>& secrets,
                           const NPartyDiscreteParams& params, std::uint64_t seed);

}  // namespace fourmul
