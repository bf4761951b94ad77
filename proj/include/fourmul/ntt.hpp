#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fourmul/field.hpp"

namespace fourmul {

/// Length-N sequence over F_p bound to a fixed root of unity of exact order N.
/// Indexing wraps modulo N, matching the periodic extension of the signal.
class DftSequence {
 public:
  DftSequence(std::vector<FieldElement> values, FieldElement root);

  std::size_t size() const { return v_.size(); }
  FieldElement root() const { return root_; }
  std::uint64_t modulus() const { return root_.modulus(); }

  /// Periodic access: any integer index maps into [0, N).
  const FieldElement& operator[](std::int64_t n) const {
    std::int64_t N = static_cast<std::int64_t>(v_.size());
    std::int64_t i = n % N;
    if (i < 0) i += N;
    return v_[static_cast<std::size_t>(i)];
  }

  const std::vector<FieldElement>& values() const { return v_; }

 private:
  std::vector<FieldElement> v_;
  FieldElement root_;
};

/// g(k) = sum_n f(n) w^(-k n). Definitional O(N^2) evaluation; this is the
/// reference all other transform paths are checked against.
DftSequence dft_forward(const DftSequence& f);

/// f(n) = (1/N) sum_k g(k) w^(+k n); exact inverse of dft_forward.
DftSequence dft_inverse(const DftSequence& g);

/// Transform with the inverted root, i.e. sum_n f(n) w^(+k n) without the 1/N
/// factor. Plays the role of conjugation: applying it twice yields
/// N * (time-reversed input).
DftSequence conjugate_transform(const DftSequence& f);

/// Radix-2 fast paths; size must be a power of two. Outputs are identical to
/// the definitional transforms.
DftSequence dft_forward_fast(const DftSequence& f);
DftSequence dft_inverse_fast(const DftSequence& g);

/// (lhs, rhs) of the discrete power identity:
/// lhs = sum_k F[f](k) * C[g](k), rhs = N * sum_n f(n) g(n).
std::pair<FieldElement, FieldElement> parseval_discrete(const DftSequence& f,
                                                        const DftSequence& g);

/// (f * g)(n) = sum_i f(i) g(n - i) with periodic indexing. O(N^2).
DftSequence cyclic_convolve(const DftSequence& f, const DftSequence& g);

struct ConvolutionTheoremReport {
  bool product_rule;  // F[f * g] == F[f] . F[g] elementwise
  bool duality_rule;  // F[f . g] == (1/N) (F[f] * F[g])
};

/// Checks both directions of the convolution theorem exactly.
ConvolutionTheoremReport convolution_theorem_check(const DftSequence& f, const DftSequence& g);

/// sum_k U(k) V(k) W(k) over the transforms of u, v, w. Equals
/// N * sum over n+m+l = 0 (mod N) of u(n) v(m) w(l).
FieldElement triple_product_sum(const DftSequence& u, const DftSequence& v, const DftSequence& w);

}  // namespace fourmul
