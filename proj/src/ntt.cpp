#include "fourmul/ntt.hpp"

#include <string>

namespace fourmul {

namespace {

void require_compatible(const DftSequence& a, const DftSequence& b) {
  if (a.size() != b.size()) throw FieldError("sequence length mismatch");
  if (!(a.root() == b.root())) throw FieldError("sequences bound to different roots");
}

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Core O(N^2) evaluation of sum_n f(n) r^(k n) for k = 0..N-1.
std::vector<FieldElement> slow_transform(const DftSequence& f, FieldElement r) {
  const std::size_t N = f.size();
  const Fp fp(f.modulus());
  std::vector<FieldElement> out(N, fp(0));
  // powers of r walk incrementally: r^(k n) = (r^k)^n
  FieldElement rk = fp(1);
  for (std::size_t k = 0; k < N; ++k) {
    FieldElement acc = fp(0), x = fp(1);
    for (std::size_t n = 0; n < N; ++n) {
      acc = acc + f[static_cast<std::int64_t>(n)] * x;
      x = x * rk;
    }
    out[k] = acc;
    rk = rk * r;
  }
  return out;
}

// Iterative radix-2 transform computing sum_n f(n) r^(k n); N a power of two,
// r of exact order N.
std::vector<FieldElement> fast_transform(const DftSequence& f, FieldElement r) {
  const std::size_t N = f.size();
  std::vector<FieldElement> a = f.values();
  for (std::size_t i = 1, j = 0; i < N; ++i) {
    std::size_t bit = N >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= N; len <<= 1) {
    FieldElement wlen = pow(r, N / len);
    for (std::size_t i = 0; i < N; i += len) {
      FieldElement w(1, f.modulus());
      for (std::size_t j = 0; j < len / 2; ++j) {
        FieldElement u = a[i + j];
        FieldElement v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w = w * wlen;
      }
    }
  }
  return a;
}

}  // namespace

DftSequence::DftSequence(std::vector<FieldElement> values, FieldElement root)
    : v_(std::move(values)), root_(root) {
  if (v_.empty()) throw FieldError("empty sequence");
  for (const auto& x : v_)
    if (x.modulus() != root.modulus()) throw FieldError("value modulus differs from root modulus");
  // the root must have exact order N; the walk below is O(N), fine at desk scale
  const std::size_t N = v_.size();
  FieldElement x = root;
  std::size_t order = 1;
  while (!(x.value() == 1)) {
    x = x * root;
    if (++order > N) break;
  }
  if (order != N)
    throw FieldError("root order " + std::to_string(order) + " does not match length " +
                     std::to_string(N));
}

DftSequence dft_forward(const DftSequence& f) {
  return DftSequence(slow_transform(f, inv(f.root())), f.root());
}

DftSequence dft_inverse(const DftSequence& g) {
  const Fp fp(g.modulus());
  FieldElement scale = inv(fp(g.size() % fp.p()));
  std::vector<FieldElement> v = slow_transform(g, g.root());
  for (auto& x : v) x = x * scale;
  return DftSequence(std::move(v), g.root());
}

DftSequence conjugate_transform(const DftSequence& f) {
  return DftSequence(slow_transform(f, f.root()), f.root());
}

DftSequence dft_forward_fast(const DftSequence& f) {
  if (!is_pow2(f.size())) throw FieldError("fast path requires power-of-two length");
  return DftSequence(fast_transform(f, inv(f.root())), f.root());
}

DftSequence dft_inverse_fast(const DftSequence& g) {
  if (!is_pow2(g.size())) throw FieldError("fast path requires power-of-two length");
  const Fp fp(g.modulus());
  FieldElement scale = inv(fp(g.size() % fp.p()));
  std::vector<FieldElement> v = fast_transform(g, g.root());
  for (auto& x : v) x = x * scale;
  return DftSequence(std::move(v), g.root());
}

std::pair<FieldElement, FieldElement> parseval_discrete(const DftSequence& f,
                                                        const DftSequence& g) {
  require_compatible(f, g);
  const Fp fp(f.modulus());
  DftSequence F = dft_forward(f);
  DftSequence G = conjugate_transform(g);
  FieldElement lhs = fp(0);
  for (std::size_t k = 0; k < f.size(); ++k)
    lhs = lhs + F[static_cast<std::int64_t>(k)] * G[static_cast<std::int64_t>(k)];
  FieldElement rhs = fp(0);
  for (std::size_t n = 0; n < f.size(); ++n)
    rhs = rhs + f[static_cast<std::int64_t>(n)] * g[static_cast<std::int64_t>(n)];
  rhs = rhs * fp(f.size() % fp.p());
  return {lhs, rhs};
}

DftSequence cyclic_convolve(const DftSequence& f, const DftSequence& g) {
  require_compatible(f, g);
  const std::size_t N = f.size();
  const Fp fp(f.modulus());
  std::vector<FieldElement> out(N, fp(0));
  for (std::size_t n = 0; n < N; ++n) {
    FieldElement acc = fp(0);
    for (std::size_t i = 0; i < N; ++i)
      acc = acc + f[static_cast<std::int64_t>(i)] *
                      g[static_cast<std::int64_t>(n) - static_cast<std::int64_t>(i)];
    out[n] = acc;
  }
  return DftSequence(std::move(out), f.root());
}

ConvolutionTheoremReport convolution_theorem_check(const DftSequence& f, const DftSequence& g) {
  require_compatible(f, g);
  const std::size_t N = f.size();
  const Fp fp(f.modulus());
  DftSequence F = dft_forward(f), G = dft_forward(g);

  ConvolutionTheoremReport rep{true, true};
  DftSequence conv_t = dft_forward(cyclic_convolve(f, g));
  for (std::size_t k = 0; k < N; ++k) {
    auto i = static_cast<std::int64_t>(k);
    if (!(conv_t[i] == F[i] * G[i])) rep.product_rule = false;
  }

  std::vector<FieldElement> prod(N, fp(0));
  for (std::size_t n = 0; n < N; ++n) {
    auto i = static_cast<std::int64_t>(n);
    prod[n] = f[i] * g[i];
  }
  DftSequence lhs = dft_forward(DftSequence(std::move(prod), f.root()));
  DftSequence rhs = cyclic_convolve(F, G);
  FieldElement scale = inv(fp(N % fp.p()));
  for (std::size_t k = 0; k < N; ++k) {
    auto i = static_cast<std::int64_t>(k);
    if (!(lhs[i] == rhs[i] * scale)) rep.duality_rule = false;
  }
  return rep;
}

FieldElement triple_product_sum(const DftSequence& u, const DftSequence& v,
                                const DftSequence& w) {
  require_compatible(u, v);
  require_compatible(v, w);
  const Fp fp(u.modulus());
  DftSequence U = dft_forward(u), V = dft_forward(v), W = dft_forward(w);
  FieldElement acc = fp(0);
  for (std::size_t k = 0; k < u.size(); ++k) {
    auto i = static_cast<std::int64_t>(k);
    acc = acc + U[i] * V[i] * W[i];
  }
  return acc;
}

}  // namespace fourmul
