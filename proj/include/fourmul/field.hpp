#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace fourmul {

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element of Z/pZ. Carries its modulus so that mixed-modulus arithmetic is
/// rejected instead of silently producing garbage.
class FieldElement {
 public:
  FieldElement() = default;  // invalid sentinel (modulus 0); usable only as a container placeholder
  FieldElement(std::uint64_t value, std::uint64_t modulus);

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  std::uint64_t v_ = 0;
  std::uint64_t p_ = 0;
};

FieldElement operator+(FieldElement a, FieldElement b);
FieldElement operator-(FieldElement a, FieldElement b);
FieldElement operator*(FieldElement a, FieldElement b);
FieldElement operator-(FieldElement a);  // additive inverse

/// a^e by square-and-multiply; 0^0 = 1.
FieldElement pow(FieldElement a, std::uint64_t e);

/// Multiplicative inverse by extended Euclid. Throws FieldError on 0.
FieldElement inv(FieldElement a);

/// Euler criterion; 0 counts as a residue.
bool is_quadratic_residue(FieldElement a);

/// Canonical square root min(r, p-r) via Tonelli-Shanks, or nullopt when a is
/// a non-residue. The non-residue used internally is the smallest z >= 2.
std::optional<FieldElement> sqrt(FieldElement a);

/// Deterministic 64-bit Miller-Rabin.
bool is_prime_u64(std::uint64_t n);

/// Prime-field context: validates primality once and mints elements.
class Fp {
 public:
  explicit Fp(std::uint64_t p);

  std::uint64_t p() const { return p_; }
  FieldElement operator()(std::uint64_t v) const { return FieldElement(v, p_); }

  /// Smallest w with multiplicative order exactly n (n must divide p-1);
  /// falls back to g^((p-1)/n) for a generator g when the direct search
  /// exceeds its candidate budget. Throws FieldError when n does not divide p-1.
  FieldElement root_of_unity(std::uint64_t n) const;

 private:
  std::uint64_t p_;
};

/// Field scalar carrying formal transcendental factors: the represented value
/// is core * pi^(pi_half/2) * sqrt2^(sqrt2_exp). pi_half counts half-steps of
/// pi (pi_half = 2 is one full power); sqrt2_exp is kept in {0,1} by folding
/// sqrt(2)*sqrt(2) = 2 into the core. Addition requires identical exponent
/// vectors; only pure scalars (both exponents zero) may be revealed.
class TaggedScalar {
 public:
  TaggedScalar() = default;
  TaggedScalar(FieldElement core, int pi_half, int sqrt2_exp);
  static TaggedScalar pure(FieldElement core) { return TaggedScalar(core, 0, 0); }

  FieldElement core() const { return core_; }
  int pi_half() const { return pi_half_; }
  int sqrt2_exp() const { return sqrt2_; }
  bool is_pure() const { return pi_half_ == 0 && sqrt2_ == 0; }

  /// Field value of a pure scalar. Throws FieldError when exponents remain.
  FieldElement reveal() const;

  friend TaggedScalar operator*(const TaggedScalar& a, const TaggedScalar& b);
  friend TaggedScalar operator+(const TaggedScalar& a, const TaggedScalar& b);
  friend bool operator==(const TaggedScalar&, const TaggedScalar&) = default;

 private:
  FieldElement core_;
  int pi_half_ = 0;
  int sqrt2_ = 0;
};

}  // namespace fourmul
