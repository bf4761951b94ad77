#include "fourmul/field.hpp"

#include <algorithm>
#include <vector>

namespace fourmul {

namespace {

void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.modulus() != b.modulus() || a.modulus() == 0)
    throw FieldError("modulus mismatch: " + std::to_string(a.modulus()) + " vs " +
                     std::to_string(b.modulus()));
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

FieldElement::FieldElement(std::uint64_t value, std::uint64_t modulus)
    : v_(modulus ? value % modulus : 0), p_(modulus) {
  if (modulus == 0) throw FieldError("zero modulus");
}

FieldElement operator+(FieldElement a, FieldElement b) {
  require_same_field(a, b);
  std::uint64_t p = a.modulus();
  std::uint64_t s = a.value() + b.value();  // p < 2^63 is enforced at context creation
  if (s >= p) s -= p;
  return FieldElement(s, p);
}

FieldElement operator-(FieldElement a, FieldElement b) {
  require_same_field(a, b);
  std::uint64_t p = a.modulus();
  std::uint64_t d = a.value() >= b.value() ? a.value() - b.value() : a.value() + p - b.value();
  return FieldElement(d, p);
}

FieldElement operator*(FieldElement a, FieldElement b) {
  require_same_field(a, b);
  return FieldElement(mulmod(a.value(), b.value(), a.modulus()), a.modulus());
}

FieldElement operator-(FieldElement a) {
  return FieldElement(a.value() == 0 ? 0 : a.modulus() - a.value(), a.modulus());
}

FieldElement pow(FieldElement a, std::uint64_t e) {
  return FieldElement(powmod(a.value(), e, a.modulus()), a.modulus());
}

FieldElement inv(FieldElement a) {
  if (a.is_zero()) throw FieldError("inverse of zero");
  // extended Euclid on (p, a); p prime so gcd = 1
  __int128 t = 0, newt = 1;
  __int128 r = a.modulus(), newr = a.value();
  while (newr != 0) {
    __int128 q = r / newr;
    __int128 tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (t < 0) t += a.modulus();
  return FieldElement(static_cast<std::uint64_t>(t), a.modulus());
}

bool is_quadratic_residue(FieldElement a) {
  if (a.is_zero()) return true;
  std::uint64_t p = a.modulus();
  if (p == 2) return true;
  return powmod(a.value(), (p - 1) / 2, p) == 1;
}

std::optional<FieldElement> sqrt(FieldElement a) {
  std::uint64_t p = a.modulus();
  if (a.is_zero()) return FieldElement(0, p);
  if (p == 2) return a;
  if (powmod(a.value(), (p - 1) / 2, p) != 1) return std::nullopt;

  std::uint64_t r;
  if (p % 4 == 3) {
    r = powmod(a.value(), (p + 1) / 4, p);
  } else {
    // Tonelli-Shanks: p-1 = q * 2^s with q odd
    std::uint64_t q = p - 1, s = 0;
    while (q % 2 == 0) {
      q /= 2;
      ++s;
    }
    std::uint64_t z = 2;  // smallest non-residue; deterministic for reproducibility
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t m = s;
    std::uint64_t c = powmod(z, q, p);
    std::uint64_t t = powmod(a.value(), q, p);
    r = powmod(a.value(), (q + 1) / 2, p);
    while (t != 1) {
      std::uint64_t i = 0, t2 = t;
      while (t2 != 1) {
        t2 = mulmod(t2, t2, p);
        ++i;
      }
      std::uint64_t b = powmod(c, std::uint64_t(1) << (m - i - 1), p);
      m = i;
      c = mulmod(b, b, p);
      t = mulmod(t, c, p);
      r = mulmod(r, b, p);
    }
  }
  if (p - r < r) r = p - r;  // canonical root
  return FieldElement(r, p);
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1, s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // these witnesses are sufficient for all n < 2^64
  for (std::uint64_t w : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(w, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (std::uint64_t i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Fp::Fp(std::uint64_t p) : p_(p) {
  if (!is_prime_u64(p)) throw FieldError("modulus " + std::to_string(p) + " is not prime");
  if (p >= (std::uint64_t(1) << 63))
    throw FieldError("modulus must fit in 63 bits");
}

namespace {

// Distinct prime factors by trial division; n fits the desk scale here.
std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> fs;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

}  // namespace

FieldElement Fp::root_of_unity(std::uint64_t n) const {
  if (n == 0 || (p_ - 1) % n != 0)
    throw FieldError("order " + std::to_string(n) + " does not divide p-1");
  if (n == 1) return FieldElement(1, p_);
  auto fs = prime_factors(n);
  auto has_order_n = [&](std::uint64_t w) {
    if (powmod(w, n, p_) != 1) return false;
    for (std::uint64_t q : fs)
      if (powmod(w, n / q, p_) == 1) return false;
    return true;
  };
  // smallest root first, so small-field fixtures are reproducible
  const std::uint64_t budget = std::min<std::uint64_t>(p_ - 1, 1 << 16);
  for (std::uint64_t w = 2; w < 2 + budget; ++w) {
    if (has_order_n(w)) return FieldElement(w, p_);
  }
  // fall back to a power of a generator of the full group
  auto pfs = prime_factors(p_ - 1);
  for (std::uint64_t g = 2;; ++g) {
    bool gen = true;
    for (std::uint64_t q : pfs) {
      if (powmod(g, (p_ - 1) / q, p_) == 1) {
        gen = false;
        break;
      }
    }
    if (gen) return FieldElement(powmod(g, (p_ - 1) / n, p_), p_);
  }
}

TaggedScalar::TaggedScalar(FieldElement core, int pi_half, int sqrt2_exp)
    : core_(core), pi_half_(pi_half) {
  // fold sqrt(2) pairs into the core: sqrt2_exp = 2q + r with r in {0,1}
  int q = sqrt2_exp >= 0 ? sqrt2_exp / 2 : -((-sqrt2_exp + 1) / 2);
  sqrt2_ = sqrt2_exp - 2 * q;
  if (q > 0) {
    core_ = core_ * pow(FieldElement(2, core.modulus()), static_cast<std::uint64_t>(q));
  } else if (q < 0) {
    core_ = core_ * pow(inv(FieldElement(2, core.modulus())), static_cast<std::uint64_t>(-q));
  }
}

FieldElement TaggedScalar::reveal() const {
  if (!is_pure())
    throw FieldError("impure scalar: pi_half=" + std::to_string(pi_half_) +
                     " sqrt2=" + std::to_string(sqrt2_));
  return core_;
}

TaggedScalar operator*(const TaggedScalar& a, const TaggedScalar& b) {
  return TaggedScalar(a.core_ * b.core_, a.pi_half_ + b.pi_half_, a.sqrt2_ + b.sqrt2_);
}

TaggedScalar operator+(const TaggedScalar& a, const TaggedScalar& b) {
  if (a.pi_half_ != b.pi_half_ || a.sqrt2_ != b.sqrt2_)
    throw FieldError("incommensurable scalars: cannot add mismatched formal exponents");
  return TaggedScalar(a.core_ + b.core_, a.pi_half_, a.sqrt2_);
}

}  // namespace fourmul
