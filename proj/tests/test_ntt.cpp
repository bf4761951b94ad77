#include <doctest.h>

#include <cstdint>
#include <vector>

#include "fourmul/field.hpp"
#include "fourmul/ntt.hpp"
#include "fourmul/rng.hpp"

using namespace fourmul;

namespace {

struct Param {
  std::uint64_t p;
  std::size_t n;
};

const Param kParams[] = {{17, 8}, {97, 32}, {193, 64}, {65537, 1024}};

DftSequence random_seq(const Fp& f, std::size_t n, FieldElement root, SplitMix64& rng) {
  std::vector<FieldElement> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(rng.element(f));
  return DftSequence(std::move(v), root);
}

DftSequence unit_at(const Fp& f, std::size_t n, std::size_t at, FieldElement root) {
  std::vector<FieldElement> v(n, f(0));
  v[at] = f(1);
  return DftSequence(std::move(v), root);
}

}  // namespace

TEST_CASE("construction validates root order and moduli") {
  Fp f(17);
  std::vector<FieldElement> v(8, f(0));
  CHECK_NOTHROW(DftSequence(v, f.root_of_unity(8)));
  CHECK_THROWS_AS(DftSequence(v, f(4)), FieldError);   // order 4, not 8
  CHECK_THROWS_AS(DftSequence(v, f(1)), FieldError);   // order 1
  Fp g(97);
  CHECK_THROWS_AS(DftSequence(v, g.root_of_unity(8)), FieldError);
  CHECK_THROWS_AS(DftSequence({}, f.root_of_unity(8)), FieldError);
}

TEST_CASE("frozen transforms at p=17, N=8") {
  Fp f(17);
  FieldElement w = f.root_of_unity(8);
  REQUIRE(w.value() == 2);

  DftSequence delta = unit_at(f, 8, 0, w);
  DftSequence D = dft_forward(delta);
  for (int k = 0; k < 8; ++k) CHECK(D[k].value() == 1);

  std::vector<FieldElement> ones(8, f(1));
  DftSequence C = dft_forward(DftSequence(ones, w));
  CHECK(C[0].value() == 8);
  for (int k = 1; k < 8; ++k) CHECK(C[k].value() == 0);
}

TEST_CASE("N=1 transform is the identity") {
  Fp f(17);
  DftSequence s({f(5)}, f(1));
  CHECK(dft_forward(s)[0].value() == 5);
  CHECK(dft_inverse(s)[0].value() == 5);
}

TEST_CASE("round-trip: inverse(forward(f)) == f") {
  SplitMix64 rng(0xabc);
  for (const auto& prm : kParams) {
    Fp f(prm.p);
    FieldElement w = f.root_of_unity(prm.n);
    for (int t = 0; t < (prm.n > 128 ? 3 : 25); ++t) {
      DftSequence s = random_seq(f, prm.n, w, rng);
      DftSequence back = dft_inverse(dft_forward(s));
      CHECK(back.values() == s.values());
    }
  }
}

TEST_CASE("fast radix-2 path matches the definitional transform") {
  SplitMix64 rng(0xdef);
  for (const auto& prm : kParams) {
    Fp f(prm.p);
    FieldElement w = f.root_of_unity(prm.n);
    for (int t = 0; t < 3; ++t) {
      DftSequence s = random_seq(f, prm.n, w, rng);
      CHECK(dft_forward_fast(s).values() == dft_forward(s).values());
      CHECK(dft_inverse_fast(s).values() == dft_inverse(s).values());
    }
  }
}

TEST_CASE("orthogonality: (1/N) sum_n w^((k-k')n) is a delta, exhaustive") {
  for (const auto& prm : kParams) {
    if (prm.n > 32) continue;  // exhaustive pairs only at small N
    Fp f(prm.p);
    FieldElement w = f.root_of_unity(prm.n);
    FieldElement invN = inv(f(prm.n));
    for (std::size_t k = 0; k < prm.n; ++k) {
      for (std::size_t kp = 0; kp < prm.n; ++kp) {
        FieldElement acc = f(0);
        for (std::size_t n = 0; n < prm.n; ++n)
          acc = acc + pow(w, ((k - kp + prm.n) % prm.n) * n % prm.n);
        acc = acc * invN;
        CHECK(acc.value() == (k == kp ? 1 : 0));
      }
    }
  }
}

TEST_CASE("conjugate transform applied twice time-reverses and scales by N") {
  SplitMix64 rng(0x77);
  for (const auto& prm : kParams) {
    Fp f(prm.p);
    FieldElement w = f.root_of_unity(prm.n);
    DftSequence s = random_seq(f, prm.n, w, rng);
    DftSequence cc = conjugate_transform(conjugate_transform(s));
    FieldElement N = f(prm.n % prm.p);
    for (std::size_t n = 0; n < prm.n; ++n)
      CHECK(cc[static_cast<std::int64_t>(n)] == s[-static_cast<std::int64_t>(n)] * N);
  }
}

TEST_CASE("discrete Parseval holds exactly on random input pairs") {
  SplitMix64 rng(0x31);
  for (const auto& prm : kParams) {
    Fp f(prm.p);
    FieldElement w = f.root_of_unity(prm.n);
    for (int t = 0; t < (prm.n > 128 ? 3 : 20); ++t) {
      auto [lhs, rhs] = parseval_discrete(random_seq(f, prm.n, w, rng),
                                          random_seq(f, prm.n, w, rng));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("frozen convolution at p=17, N=8") {
  Fp f(17);
  FieldElement w = f.root_of_unity(8);
  std::vector<FieldElement> a(8, f(0)), b(8, f(0));
  a[0] = f(1);
  a[1] = f(1);
  b[0] = f(1);
  b[1] = f(2);
  DftSequence c = cyclic_convolve(DftSequence(a, w), DftSequence(b, w));
  std::uint64_t want[] = {1, 3, 2, 0, 0, 0, 0, 0};
  for (int i = 0; i < 8; ++i) CHECK(c[i].value() == want[i]);
}

TEST_CASE("convolution wraps periodically") {
  Fp f(17);
  FieldElement w = f.root_of_unity(8);
  // delta at 5 convolved with delta at 6 lands on index 3 = (5+6) mod 8
  DftSequence c = cyclic_convolve(unit_at(f, 8, 5, w), unit_at(f, 8, 6, w));
  for (int i = 0; i < 8; ++i) CHECK(c[i].value() == (i == 3 ? 1 : 0));
}

TEST_CASE("convolution theorem and duality hold on random pairs") {
  SplitMix64 rng(0x55);
  for (const auto& prm : kParams) {
    Fp f(prm.p);
    FieldElement w = f.root_of_unity(prm.n);
    for (int t = 0; t < (prm.n > 128 ? 2 : 10); ++t) {
      auto rep = convolution_theorem_check(random_seq(f, prm.n, w, rng),
                                           random_seq(f, prm.n, w, rng));
      CHECK(rep.product_rule);
      CHECK(rep.duality_rule);
    }
  }
}

TEST_CASE("triple product sum matches the O(N^3) oracle") {
  Fp f(17);
  FieldElement w = f.root_of_unity(8);
  SplitMix64 rng(0x99);
  for (int t = 0; t < 20; ++t) {
    DftSequence u = random_seq(f, 8, w, rng), v = random_seq(f, 8, w, rng),
                x = random_seq(f, 8, w, rng);
    FieldElement got = triple_product_sum(u, v, x);
    FieldElement want = f(0);
    for (int n = 0; n < 8; ++n)
      for (int m = 0; m < 8; ++m)
        for (int l = 0; l < 8; ++l)
          if ((n + m + l) % 8 == 0) want = want + u[n] * v[m] * x[l];
    want = want * f(8);
    CHECK(got == want);
  }
  // all-ones transforms: delta sequences at zero
  DftSequence d = unit_at(f, 8, 0, w);
  CHECK(triple_product_sum(d, d, d).value() == 8);
}

TEST_CASE("mismatched operands are rejected") {
  Fp f(17);
  FieldElement w8 = f.root_of_unity(8), w4 = f.root_of_unity(4);
  std::vector<FieldElement> v8(8, f(1)), v4(4, f(1));
  DftSequence a(v8, w8), b(v4, w4);
  CHECK_THROWS_AS(cyclic_convolve(a, b), FieldError);
  CHECK_THROWS_AS(parseval_discrete(a, b), FieldError);
}
