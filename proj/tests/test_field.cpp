#include <doctest.h>

#include <cstdint>
#include <set>

#include "fourmul/field.hpp"
#include "fourmul/rng.hpp"

using namespace fourmul;

namespace {

// Independent oracles, kept deliberately naive.

std::uint64_t pow_oracle(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  unsigned __int128 r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r = r * a % p;
  return static_cast<std::uint64_t>(r);
}

// Fermat inverse; independent of the extended-Euclid implementation path.
std::uint64_t inv_oracle(std::uint64_t a, std::uint64_t p) {
  unsigned __int128 r = 1, base = a % p;
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

bool prime_oracle(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t order_oracle(std::uint64_t w, std::uint64_t p) {
  std::uint64_t x = w % p, k = 1;
  while (x != 1) {
    x = static_cast<std::uint64_t>((unsigned __int128)x * w % p);
    ++k;
  }
  return k;
}

}  // namespace

TEST_CASE("element arithmetic agrees with wide-integer oracle") {
  SplitMix64 rng(0xf1e1d);
  for (std::uint64_t p : {std::uint64_t(101), std::uint64_t(65537), (std::uint64_t(1) << 31) - 1}) {
    Fp f(p);
    for (int i = 0; i < 200; ++i) {
      std::uint64_t a = rng.below(p), b = rng.below(p);
      CHECK((f(a) + f(b)).value() == (a + b) % p);
      CHECK((f(a) - f(b)).value() == (a + p - b) % p);
      CHECK((f(a) * f(b)).value() == static_cast<std::uint64_t>((unsigned __int128)a * b % p));
      CHECK((-f(a)).value() == (p - a % p) % p);
    }
  }
}

TEST_CASE("pow matches repeated multiplication") {
  Fp f(101);
  SplitMix64 rng(42);
  for (int i = 0; i < 100; ++i) {
    std::uint64_t a = rng.below(101), e = rng.below(50);
    CHECK(pow(f(a), e).value() == pow_oracle(a, e, 101));
  }
  CHECK(pow(f(0), 0).value() == 1);
}

TEST_CASE("inverse: frozen values and Fermat oracle") {
  Fp f(101);
  CHECK(inv(f(12)).value() == 59);
  CHECK(inv(f(24)).value() == 80);
  CHECK_THROWS_AS(inv(f(0)), FieldError);

  SplitMix64 rng(7);
  for (std::uint64_t p : {std::uint64_t(101), std::uint64_t(65537), (std::uint64_t(1) << 31) - 1}) {
    Fp g(p);
    for (int i = 0; i < 100; ++i) {
      std::uint64_t a = 1 + rng.below(p - 1);
      auto ia = inv(g(a));
      CHECK(ia.value() == inv_oracle(a, p));
      CHECK((g(a) * ia).value() == 1);
    }
  }
}

TEST_CASE("mixed moduli are rejected") {
  Fp a(101), b(97);
  CHECK_THROWS_AS((void)(a(1) + b(1)), FieldError);
  CHECK_THROWS_AS((void)(a(1) * b(1)), FieldError);
  CHECK_THROWS_AS((void)(a(1) - b(1)), FieldError);
}

TEST_CASE("sqrt: frozen values, exhaustive oracle, residue census") {
  Fp f(101);
  auto r = sqrt(f(80));
  REQUIRE(r.has_value());
  CHECK(r->value() == 22);           // canonical min(22, 79)
  CHECK((-*r).value() == 79);        // companion root
  CHECK((*r * *r).value() == 80);

  Fp g(17);
  CHECK(!sqrt(g(3)).has_value());

  for (std::uint64_t p : {std::uint64_t(3), std::uint64_t(5), std::uint64_t(7), std::uint64_t(11),
                          std::uint64_t(13), std::uint64_t(17), std::uint64_t(101),
                          std::uint64_t(193), std::uint64_t(257)}) {
    Fp h(p);
    std::uint64_t with_root = 0;
    for (std::uint64_t x = 0; x < p; ++x) {
      // enumeration oracle
      std::uint64_t expect = p;  // sentinel: none
      for (std::uint64_t c = 0; c <= p / 2; ++c) {
        if (c * c % p == x) {
          expect = c;
          break;
        }
      }
      auto got = sqrt(h(x));
      if (expect == p) {
        CHECK(!got.has_value());
      } else {
        REQUIRE(got.has_value());
        CHECK(got->value() == expect);  // canonical root is the smaller one
        if (x != 0) ++with_root;
      }
    }
    CHECK(with_root == (p - 1) / 2);
  }
}

TEST_CASE("sqrt exercises the general Tonelli-Shanks branch") {
  // p = 65537: p-1 = 2^16, the deepest 2-adic tower at desk scale
  Fp f(65537);
  SplitMix64 rng(99);
  int found = 0;
  for (int i = 0; i < 200; ++i) {
    FieldElement x = rng.nonzero_element(f);
    auto r = sqrt(x);
    if (r) {
      ++found;
      CHECK((*r * *r) == x);
      CHECK(r->value() <= 65537 - r->value());
    }
  }
  CHECK(found > 60);  // about half of draws are residues
}

TEST_CASE("primality check: oracle to 10^4 and fixed large cases") {
  for (std::uint64_t n = 0; n <= 10000; ++n) CHECK(is_prime_u64(n) == prime_oracle(n));
  CHECK(is_prime_u64((std::uint64_t(1) << 31) - 1));
  CHECK(is_prime_u64(65537));
  CHECK(!is_prime_u64(561));    // Carmichael
  CHECK(!is_prime_u64(25326001));
  CHECK_THROWS_AS(Fp(100), FieldError);
  CHECK_THROWS_AS(Fp(1), FieldError);
}

TEST_CASE("root_of_unity: frozen small-field values and order oracle") {
  Fp f(17);
  CHECK(f.root_of_unity(1).value() == 1);
  auto w8 = f.root_of_unity(8);
  CHECK(w8.value() == 2);
  // powers cycle through (2,4,8,16,15,13,9,1)
  std::uint64_t want[] = {2, 4, 8, 16, 15, 13, 9, 1};
  FieldElement x = f(1);
  for (int k = 0; k < 8; ++k) {
    x = x * w8;
    CHECK(x.value() == want[k]);
  }
  CHECK(f.root_of_unity(16).value() == 3);
  CHECK_THROWS_AS(f.root_of_unity(3), FieldError);

  for (std::uint64_t n : {std::uint64_t(1), std::uint64_t(2), std::uint64_t(4), std::uint64_t(8),
                          std::uint64_t(16)}) {
    CHECK(order_oracle(f.root_of_unity(n).value(), 17) == n);
  }
  Fp big((std::uint64_t(1) << 31) - 1);
  for (std::uint64_t n : {std::uint64_t(2), std::uint64_t(3), std::uint64_t(7), std::uint64_t(462)}) {
    FieldElement w = big.root_of_unity(n);
    CHECK(pow(w, n).value() == 1);
    CHECK(order_oracle(w.value(), big.p()) == n);
  }
}

TEST_CASE("roots of unity sum to zero unless the exponent wraps") {
  Fp f(17);
  for (std::uint64_t n : {std::uint64_t(1), std::uint64_t(2), std::uint64_t(4), std::uint64_t(8),
                          std::uint64_t(16)}) {
    FieldElement w = f.root_of_unity(n);
    for (std::uint64_t k = 0; k < 2 * n; ++k) {
      FieldElement s = f(0);
      for (std::uint64_t j = 0; j < n; ++j) s = s + pow(w, k * j % n);
      CHECK(s.value() == (k % n == 0 ? n % 17 : 0));
    }
  }
}

TEST_CASE("tagged scalars: exponent algebra") {
  Fp f(101);
  TaggedScalar x(f(5), 1, 0);   // 5 * pi^(1/2)
  TaggedScalar y(f(7), -1, 0);  // 7 / pi^(1/2)
  TaggedScalar p = x * y;
  CHECK(p.is_pure());
  CHECK(p.reveal().value() == 35);

  TaggedScalar c1(f(3), 2, 0), c2(f(4), 2, 0);
  TaggedScalar s = c1 + c2;
  CHECK(s.pi_half() == 2);
  CHECK(s.core().value() == 7);
  CHECK_THROWS_AS((void)(c1 + TaggedScalar::pure(f(1))), FieldError);
  CHECK_THROWS_AS(c1.reveal(), FieldError);
}

TEST_CASE("tagged scalars: sqrt2 pairs fold into the core") {
  Fp f(101);
  TaggedScalar a(f(5), 0, 1), b(f(7), 0, 1);
  TaggedScalar p = a * b;  // 35 * sqrt2^2 = 70
  CHECK(p.is_pure());
  CHECK(p.reveal().value() == 70);

  // negative exponents fold with inverse twos: core * 2^(-1/2) squared = core^2 / 2
  TaggedScalar c(f(6), 0, -1);
  CHECK(c.sqrt2_exp() == 1);  // canonical form keeps sqrt2 in {0,1}
  TaggedScalar csq = c * c;
  CHECK(csq.is_pure());
  CHECK(csq.reveal().value() == (f(36) * inv(f(2))).value());
}

TEST_CASE("tagged scalar multiplication is commutative and associative") {
  Fp f(101);
  SplitMix64 rng(5);
  for (int i = 0; i < 50; ++i) {
    TaggedScalar a(rng.nonzero_element(f), int(rng.below(5)) - 2, int(rng.below(5)) - 2);
    TaggedScalar b(rng.nonzero_element(f), int(rng.below(5)) - 2, int(rng.below(5)) - 2);
    TaggedScalar c(rng.nonzero_element(f), int(rng.below(5)) - 2, int(rng.below(5)) - 2);
    CHECK((a * b) == (b * a));
    CHECK(((a * b) * c) == (a * (b * c)));
  }
}

TEST_CASE("rng: bounded draws are in range and deterministic") {
  SplitMix64 a(123), b(123);
  for (int i = 0; i < 1000; ++i) {
    std::uint64_t x = a.below(101);
    CHECK(x == b.below(101));
    CHECK(x < 101);
  }
  CHECK(trial_seed(1, 0) == trial_seed(1, 0));
  CHECK(trial_seed(1, 0) != trial_seed(1, 1));
  CHECK(trial_seed(1, 0) != trial_seed(2, 0));
}
