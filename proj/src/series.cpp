#include "fourmul/series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

namespace fourmul {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// sin(t)/t with a series fallback so nearby-frequency cancellations stay exact.
double sinc(double t) {
  if (std::abs(t) < 1e-4) {
    double t2 = t * t;
    return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  }
  return std::sin(t) / t;
}

// (1/l) int_{-l}^{l} cos(w x) dx.
double mean_cos(double w, double l) { return 2.0 * sinc(w * l); }

// (1/l) int_{-l}^{l} of a product of two sinusoids, by product-to-sum.
double pair_integral(TrigKind k1, double w1, TrigKind k2, double w2, double l) {
  if (k1 != k2) return 0.0;  // odd integrand on a symmetric interval
  double diff = mean_cos(w1 - w2, l);
  double sum = mean_cos(w1 + w2, l);
  return k1 == TrigKind::cosine ? 0.5 * (diff + sum) : 0.5 * (diff - sum);
}

void require_same_interval(const SeriesFunction& f, const SeriesFunction& g) {
  if (f.half_period() != g.half_period())
    throw AnalyticError("series are defined on different intervals");
}

double pairwise(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise(v, h) + pairwise(v + h, n - h);
}

// sum_{n > order} n^{-s}, Euler-Maclaurin about a = order + 1.
double power_tail(int s, int order) {
  double a = order + 1;
  double as = std::pow(a, -s);
  return std::pow(a, 1 - s) / (s - 1) + 0.5 * as + s * (as / a) / 12.0 -
         static_cast<double>(s) * (s + 1) * (s + 2) * (as / (a * a * a)) / 720.0;
}

// Solves a 3x3 system by Gaussian elimination with partial pivoting.
std::array<double, 3> solve3(std::array<std::array<double, 4>, 3> m) {
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    std::swap(m[col], m[piv]);
    if (m[col][col] == 0.0) throw AnalyticError("singular tail fit");
    for (int r = col + 1; r < 3; ++r) {
      double f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::array<double, 3> x{};
  for (int r = 2; r >= 0; --r) {
    double acc = m[r][3];
    for (int c = r + 1; c < 3; ++c) acc -= m[r][c] * x[c];
    x[r] = acc / m[r][r];
  }
  return x;
}

// Exact integral of cos(w y + phase) over [y0, y1], stable for any w.
double cos_segment(double w, double phase, double y0, double y1) {
  double len = y1 - y0;
  double mid = 0.5 * (y0 + y1);
  return len * sinc(0.5 * w * len) * std::cos(w * mid + phase);
}

double term_phase(TrigKind k) { return k == TrigKind::sine ? -0.5 * kPi : 0.0; }

// int_{y0}^{y1} f(y) g(c - y) dy in closed form.
double piece_integral(const SeriesFunction& f, const SeriesFunction& g, double y0, double y1,
                      double c) {
  if (y1 <= y0) return 0.0;
  double total = 0.0;
  for (const TrigTerm& tf : f.terms()) {
    double w1 = tf.frequency, p1 = term_phase(tf.kind);
    for (const TrigTerm& tg : g.terms()) {
      // g-term at (c - y): frequency -w2, phase w2 c + p2.
      double w2 = -tg.frequency, p2 = tg.frequency * c + term_phase(tg.kind);
      double amp = 0.5 * tf.amplitude * tg.amplitude;
      total += amp * (cos_segment(w1 - w2, p1 - p2, y0, y1) +
                      cos_segment(w1 + w2, p1 + p2, y0, y1));
    }
  }
  return total;
}

// Composite-Simpson integral of value[k] * weight(x[k]) on a uniform grid.
double simpson_weighted(const std::vector<double>& xs, const std::vector<double>& vals,
                        const std::function<double(double)>& weight) {
  std::size_t n = xs.size() - 1;  // even interval count
  double h = (xs.back() - xs.front()) / static_cast<double>(n);
  double acc = vals.front() * weight(xs.front()) + vals.back() * weight(xs.back());
  for (std::size_t k = 1; k < n; ++k)
    acc += (k % 2 == 1 ? 4.0 : 2.0) * vals[k] * weight(xs[k]);
  return acc * h / 3.0;
}

}  // namespace

SeriesFunction::SeriesFunction(std::vector<TrigTerm> terms, double half_period)
    : terms_(std::move(terms)), l_(half_period) {
  if (!(l_ > 0.0) || !std::isfinite(l_)) throw AnalyticError("half period must be positive");
  for (const TrigTerm& t : terms_)
    if (!std::isfinite(t.amplitude) || !std::isfinite(t.frequency))
      throw AnalyticError("non-finite series term");
}

double SeriesFunction::operator()(double x) const {
  double acc = 0.0;
  for (const TrigTerm& t : terms_)
    acc += t.amplitude *
           (t.kind == TrigKind::cosine ? std::cos(t.frequency * x) : std::sin(t.frequency * x));
  return acc;
}

SeriesFunction SeriesFunction::scaled(double c) const {
  std::vector<TrigTerm> out = terms_;
  for (TrigTerm& t : out) t.amplitude *= c;
  return SeriesFunction(std::move(out), l_);
}

SeriesFunction SeriesFunction::even_part() const {
  std::vector<TrigTerm> out;
  for (const TrigTerm& t : terms_)
    if (t.kind == TrigKind::cosine) out.push_back(t);
  return SeriesFunction(std::move(out), l_);
}

double integrate(const SeriesFunction& f, const SeriesFunction& g) {
  require_same_interval(f, g);
  double l = f.half_period();
  double acc = 0.0;
  for (const TrigTerm& tf : f.terms())
    for (const TrigTerm& tg : g.terms())
      acc += tf.amplitude * tg.amplitude *
             pair_integral(tf.kind, tf.frequency, tg.kind, tg.frequency, l);
  return acc;
}

FourierCoeffs fourier_coeffs(const SeriesFunction& f, int order) {
  if (order < 0) throw AnalyticError("negative truncation order");
  double l = f.half_period();
  std::vector<TrigTerm> terms = f.terms();
  auto a = [terms, l](double n) {
    double w = n * kPi / l;
    double acc = 0.0;
    for (const TrigTerm& t : terms)
      acc += t.amplitude * pair_integral(t.kind, t.frequency, TrigKind::cosine, w, l);
    return acc;
  };
  auto b = [terms, l](double n) {
    double w = n * kPi / l;
    double acc = 0.0;
    for (const TrigTerm& t : terms)
      acc += t.amplitude * pair_integral(t.kind, t.frequency, TrigKind::sine, w, l);
    return acc;
  };
  return FourierCoeffs{a(0.0), std::move(a), std::move(b), order, l};
}

double omega(double gamma) {
  if (std::abs(gamma - std::nearbyint(gamma)) < 1e-9)
    throw AnalyticError("omega has poles at integer arguments");
  double pg = kPi * gamma;
  return kPi / (2.0 * gamma) * (std::cos(pg) / std::sin(pg)) - 1.0 / (2.0 * gamma * gamma);
}

double convergent_sum(double gamma, double delta, SumWeight w) {
  double spread = delta * delta - gamma * gamma;
  if (std::abs(spread) < 1e-9) throw AnalyticError("coincident parameters in convergent sum");
  double og = omega(gamma), od = omega(delta);
  if (w == SumWeight::unweighted) return (og - od) / spread;
  return (gamma * gamma * og - delta * delta * od) / spread;
}

double truncated_sum(const std::function<double(double)>& term, int order) {
  if (order <= 0) return 0.0;
  std::vector<double> vals(static_cast<std::size_t>(order));
  for (int n = 1; n <= order; ++n) vals[static_cast<std::size_t>(n - 1)] = term(n);
  return pairwise(vals.data(), vals.size());
}

double tail_corrected_sum(const std::function<double(double)>& term, int order) {
  double bare = truncated_sum(term, order);
  if (order < 16) return bare;
  std::array<double, 3> pts = {static_cast<double>(order - 2), static_cast<double>(order - 1),
                               static_cast<double>(order)};
  std::array<double, 3> t = {term(pts[0]), term(pts[1]), term(pts[2])};
  // Fit only a clean one-signed algebraic tail; alternating or exhausted
  // series keep the bare sum (finite sums must stay exact).
  for (double v : t)
    if (v == 0.0 || !std::isfinite(v)) return bare;
  if (!((t[0] > 0) == (t[1] > 0) && (t[1] > 0) == (t[2] > 0))) return bare;
  std::array<std::array<double, 4>, 3> system{};
  for (int r = 0; r < 3; ++r) {
    double n = pts[static_cast<std::size_t>(r)];
    system[static_cast<std::size_t>(r)] = {1.0 / (n * n), 1.0 / (n * n * n),
                                           1.0 / (n * n * n * n), t[static_cast<std::size_t>(r)]};
  }
  std::array<double, 3> c = solve3(system);
  double tail = c[0] * power_tail(2, order) + c[1] * power_tail(3, order) +
                c[2] * power_tail(4, order);
  return bare + tail;
}

FourierCoeffs convolution_coeffs(const FourierCoeffs& F, const FourierCoeffs& G,
                                 ConvolutionLaw law) {
  if (F.half_period != G.half_period)
    throw AnalyticError("convolution operands live on different intervals");
  int order = std::min(F.order, G.order);
  std::function<double(double)> a, b;
  double c0;
  if (law == ConvolutionLaw::standard) {
    c0 = F.a0 * G.a0;
    a = [Fa = F.a, Fb = F.b, Ga = G.a, Gb = G.b](double n) {
      return Fa(n) * Ga(n) - Fb(n) * Gb(n);
    };
    b = [Fa = F.a, Fb = F.b, Ga = G.a, Gb = G.b](double n) {
      return Fb(n) * Ga(n) + Fa(n) * Gb(n);
    };
  } else {
    c0 = 0.5 * F.a0 * G.a0;
    a = [Fa = F.a, Ga = G.a, Gb = G.b](double n) { return Fa(n) * Ga(n) - Fa(n) * Gb(n); };
    b = [Fb = F.b, Ga = G.a, Gb = G.b](double n) { return Fb(n) * Ga(n) + Fb(n) * Gb(n); };
  }
  return FourierCoeffs{c0, std::move(a), std::move(b), order, F.half_period};
}

double convolution_value(const SeriesFunction& f, const SeriesFunction& g, double x) {
  require_same_interval(f, g);
  double l = f.half_period();
  x -= 2.0 * l * std::floor((x + l) / (2.0 * l));  // wrap into [-l, l)
  double acc;
  if (x >= 0.0) {
    // For y < x - l the argument x - y exceeds l; shift one period down.
    acc = piece_integral(f, g, -l, x - l, x - 2.0 * l) + piece_integral(f, g, x - l, l, x);
  } else {
    // For y > x + l the argument drops below -l; shift one period up.
    acc = piece_integral(f, g, -l, x + l, x) + piece_integral(f, g, x + l, l, x + 2.0 * l);
  }
  return acc / l;
}

LawAdjudication adjudicate_convolution_law(const SeriesFunction& f, const SeriesFunction& g,
                                           int max_n) {
  require_same_interval(f, g);
  if (max_n < 0) throw AnalyticError("negative coefficient range");
  double l = f.half_period();

  // Tabulate the periodized convolution once; the kink of the periodic
  // extension sits at x = 0, so integrate the two halves separately.
  constexpr std::size_t kIntervals = 2048;
  auto tabulate = [&](double lo, double hi) {
    std::vector<double> xs(kIntervals + 1), vals(kIntervals + 1);
    for (std::size_t k = 0; k <= kIntervals; ++k) {
      double x = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(kIntervals);
      xs[k] = x;
      vals[k] = convolution_value(f, g, x);
    }
    return std::make_pair(std::move(xs), std::move(vals));
  };
  auto [xl, vl] = tabulate(-l, 0.0);
  auto [xr, vr] = tabulate(0.0, l);
  auto oracle = [&](TrigKind kind, double n) {
    auto weight = [&](double x) {
      double w = n * kPi / l;
      return kind == TrigKind::cosine ? std::cos(w * x) : std::sin(w * x);
    };
    return (simpson_weighted(xl, vl, weight) + simpson_weighted(xr, vr, weight)) / l;
  };

  FourierCoeffs F = fourier_coeffs(f, max_n), G = fourier_coeffs(g, max_n);
  FourierCoeffs std_law = convolution_coeffs(F, G, ConvolutionLaw::standard);
  FourierCoeffs prt_law = convolution_coeffs(F, G, ConvolutionLaw::printed);

  double dev_std = std::abs(std_law.a0 - oracle(TrigKind::cosine, 0.0));
  double dev_prt = std::abs(prt_law.a0 - oracle(TrigKind::cosine, 0.0));
  for (int n = 1; n <= max_n; ++n) {
    double oa = oracle(TrigKind::cosine, n), ob = oracle(TrigKind::sine, n);
    dev_std = std::max({dev_std, std::abs(std_law.a(n) - oa), std::abs(std_law.b(n) - ob)});
    dev_prt = std::max({dev_prt, std::abs(prt_law.a(n) - oa), std::abs(prt_law.b(n) - ob)});
  }
  ConvolutionLaw matching =
      dev_std <= dev_prt ? ConvolutionLaw::standard : ConvolutionLaw::printed;
  return LawAdjudication{matching, dev_std, dev_prt};
}

ParsevalResult parseval_two(const SeriesFunction& f, const SeriesFunction& g, int order) {
  FourierCoeffs F = fourier_coeffs(f, order), G = fourier_coeffs(g, order);
  double lhs = 0.5 * F.a0 * G.a0 +
               truncated_sum([&](double n) { return F.a(n) * G.a(n) + F.b(n) * G.b(n); }, order);
  return ParsevalResult{lhs, integrate(f, g)};
}

ParsevalResult parseval_two_recast(const SeriesFunction& f, const SeriesFunction& g, int order) {
  FourierCoeffs F = fourier_coeffs(f, order), G = fourier_coeffs(g, order);
  double plus = truncated_sum(
      [&](double n) { return (F.a(n) + F.b(n)) * (G.a(n) + G.b(n)); }, order);
  double minus = truncated_sum(
      [&](double n) { return (F.a(n) - F.b(n)) * (G.a(n) - G.b(n)); }, order);
  return ParsevalResult{0.5 * F.a0 * G.a0 + 0.5 * (plus + minus), integrate(f, g)};
}

double convolution_integral(const SeriesFunction& u, const SeriesFunction& v,
                            const SeriesFunction& w, int order) {
  require_same_interval(u, v);
  require_same_interval(u, w);
  FourierCoeffs U = fourier_coeffs(u, order), V = fourier_coeffs(v, order),
                W = fourier_coeffs(w, order);
  double head = 0.5 * U.a0 * V.a0 * W.a0;
  double body = tail_corrected_sum(
      [&](double n) {
        double ua = U.a(n), ub = U.b(n), va = V.a(n), vb = V.b(n), wa = W.a(n), wb = W.b(n);
        return ua * va * wa + ub * vb * wa - ua * vb * wb + ub * va * wb;
      },
      order);
  return head + body;
}

ParsevalResult parseval_three(const SeriesFunction& f, const SeriesFunction& g,
                              const SeriesFunction& h, int order) {
  require_same_interval(f, g);
  require_same_interval(f, h);
  FourierCoeffs F = fourier_coeffs(f, order), G = fourier_coeffs(g, order),
                H = fourier_coeffs(h, order);
  double plus = truncated_sum(
      [&](double n) {
        return (F.a(n) + F.b(n)) * (G.a(n) + G.b(n)) * (H.a(n) + H.b(n));
      },
      order);
  double minus = truncated_sum(
      [&](double n) {
        return (F.a(n) - F.b(n)) * (G.a(n) - G.b(n)) * (H.a(n) - H.b(n));
      },
      order);
  double lhs = 0.5 * F.a0 * G.a0 * H.a0 + 0.5 * (plus + minus);

  // The identity holds term by term, so an oversampled integral side isolates
  // the lhs truncation error.
  int dense = order > 0 ? 8 * order : 64;
  double rhs = convolution_integral(f, g, h, dense) + convolution_integral(g, f, h, dense) +
               convolution_integral(h, f, g, dense) -
               2.0 * convolution_integral(h.even_part(), f.even_part(), g.even_part(), dense);
  return ParsevalResult{lhs, rhs};
}

double normalization_three(const SeriesFunction& f1, const SeriesFunction& f2,
                           const SeriesFunction& f3, int order) {
  double inv_eta = convolution_integral(f1, f2, f3, order) +
                   convolution_integral(f2, f1, f3, order) +
                   convolution_integral(f3, f1, f2, order) -
                   2.0 * convolution_integral(f3.even_part(), f1.even_part(), f2.even_part(),
                                              order);
  if (std::abs(inv_eta) < 1e-9) throw AnalyticError("degenerate masks: normalization vanishes");
  return 1.0 / inv_eta;
}

}  // namespace fourmul
