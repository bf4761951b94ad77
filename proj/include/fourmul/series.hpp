#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace fourmul {

class AnalyticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TrigKind { cosine, sine };

/// One sinusoid: amplitude * cos(frequency * x) or amplitude * sin(frequency * x).
struct TrigTerm {
  double amplitude;
  TrigKind kind;
  double frequency;  // radians per unit; need not be a harmonic of pi/l
};

/// Finite trigonometric sum on (-l, l), read as one period of a 2l-periodic
/// function. Frequencies are arbitrary, so the Fourier coefficients on the
/// interval generally form infinite series.
class SeriesFunction {
 public:
  SeriesFunction(std::vector<TrigTerm> terms, double half_period);

  double half_period() const { return l_; }
  const std::vector<TrigTerm>& terms() const { return terms_; }

  double operator()(double x) const;
  SeriesFunction scaled(double c) const;
  /// Even part (x -> (f(x) + f(-x))/2): exactly the cosine terms.
  SeriesFunction even_part() const;

  static SeriesFunction zero(double half_period) { return SeriesFunction({}, half_period); }

 private:
  std::vector<TrigTerm> terms_;
  double l_;
};

/// (1/l) times the integral of f*g over one period, in closed form
/// (product-to-sum on every term pair; no numeric quadrature).
double integrate(const SeriesFunction& f, const SeriesFunction& g);

/// Interval Fourier coefficients of f: a(n) = (1/l) int f(x) cos(n pi x / l),
/// b(n) likewise with sin. The closures accept real n; integer arguments give
/// the series coefficients, and the real extension backs tail fitting.
struct FourierCoeffs {
  double a0;  // equals a(0)
  std::function<double(double)> a, b;
  int order;
  double half_period;
};

FourierCoeffs fourier_coeffs(const SeriesFunction& f, int order);

/// Omega(g) = pi/(2g) cot(pi g) - 1/(2 g^2), the closed form of
/// sum_{n>=1} 1/(g^2 - n^2). Throws AnalyticError at integer g (poles).
double omega(double gamma);

enum class SumWeight { unweighted, weighted };

/// Closed forms of sum_{n>=1} 1/((g^2-n^2)(d^2-n^2)) (unweighted) and
/// sum n^2/((g^2-n^2)(d^2-n^2)) (weighted), via partial fractions in Omega.
/// Throws on integer arguments or g^2 == d^2.
double convergent_sum(double gamma, double delta, SumWeight w);

/// Plain truncated sum of term(1..order) in a deterministic pairwise order.
double truncated_sum(const std::function<double(double)>& term, int order);

/// truncated_sum plus a fitted rational tail: C2/n^2 + C3/n^3 + C4/n^4 is
/// solved through the last three terms and its closed tail added. Skipped when
/// the last terms vanish or disagree in sign, so finite (harmonic) series stay
/// exact. Intended for coefficient products decaying like 1/n^2.
double tail_corrected_sum(const std::function<double(double)>& term, int order);

enum class ConvolutionLaw {
  standard,  // c0 = a0*A0, cn = an*An - bn*Bn, dn = bn*An + an*Bn
  printed    // c0 = a0*A0/2, cn = an*An - an*Bn, dn = bn*An + bn*Bn
};

/// Coefficient law for the cyclic convolution (f * g)(x) = (1/l) int f(y) g(x-y) dy.
FourierCoeffs convolution_coeffs(const FourierCoeffs& F, const FourierCoeffs& G,
                                 ConvolutionLaw law);

/// Pointwise value of (f * g)(x) with the 2l-periodic extension of g, in
/// closed form (the wrap point splits the integral into two exact pieces).
/// This is the independent oracle for the coefficient laws.
double convolution_value(const SeriesFunction& f, const SeriesFunction& g, double x);

struct LawAdjudication {
  ConvolutionLaw matching;
  double standard_max_dev;  // max |standard-law coeff - oracle coeff|, n <= max_n
  double printed_max_dev;
};

/// Compares both coefficient laws against quadrature of the periodized
/// convolution and reports which matches.
LawAdjudication adjudicate_convolution_law(const SeriesFunction& f, const SeriesFunction& g,
                                           int max_n);

struct ParsevalResult {
  double lhs;  // coefficient-side sum, truncated at the requested order
  double rhs;  // integral side, closed form
};

/// a0 A0/2 + sum (an An + bn Bn)  vs  (1/l) int f g.
ParsevalResult parseval_two(const SeriesFunction& f, const SeriesFunction& g, int order);

/// Rearranged two-input identity: a0 A0/2 + (1/2) sum (an+bn)(An+Bn)
/// + (1/2) sum (an-bn)(An-Bn); algebraically identical to parseval_two.
ParsevalResult parseval_two_recast(const SeriesFunction& f, const SeriesFunction& g, int order);

/// (1/l) int u (v * w) evaluated in coefficient space at the given order.
double convolution_integral(const SeriesFunction& u, const SeriesFunction& v,
                            const SeriesFunction& w, int order);

/// Three-input identity. lhs: (1/2) a0 A0 G0 + (1/2) sum (an+bn)(An+Bn)(Gn+Rn)
/// + (1/2) sum (an-bn)(An-Bn)(Gn-Rn), truncated at order. rhs: the three cross
/// convolution integrals minus twice the even-part correction, evaluated at an
/// oversampled order so the residual reflects the lhs truncation alone.
ParsevalResult parseval_three(const SeriesFunction& f, const SeriesFunction& g,
                              const SeriesFunction& h, int order);

/// eta with 1/eta = int f1 (f2*f3) + f2 (f1*f3) + f3 (f1*f2) - 2 f3c (f1c*f2c),
/// all scaled by 1/l. Throws AnalyticError when |1/eta| < 1e-9 (degenerate masks).
double normalization_three(const SeriesFunction& f1, const SeriesFunction& f2,
                           const SeriesFunction& f3, int order);

}  // namespace fourmul
