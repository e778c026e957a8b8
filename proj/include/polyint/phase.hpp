#pragma once

#include "polyint/section.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <span>
#include <vector>

namespace polyint {

using Rational = boost::multiprecision::cpp_rational;

struct ComplexRational {
  Rational re;
  Rational im;

  bool operator==(const ComplexRational&) const = default;
  std::complex<long double> value() const;
};

/// Exact (double to rational conversion is exact).
Rational to_rational(double x);

/// chi(r) = e^{irh+} sum_m q+_m (ir)^{-m} + e^{irh-} sum_m q-_m (ir)^{-m},
/// m = 1..N+1, every coefficient multiplied by `scale` (e.g. pi for
/// coefficients that are rational multiples of pi).
struct PhaseExpansion {
  Rational h_plus;
  Rational h_minus;
  std::vector<ComplexRational> q_plus;
  std::vector<ComplexRational> q_minus;
  double scale = 1.0;

  int degree() const { return static_cast<int>(q_plus.size()) - 1; }
};

/// Expansion of \int_{h-}^{h+} e^{irt} sum_j a_j t^j dt, from the exact
/// antiderivative of t^j e^{irt}. q+_{m+1} = (-1)^m P^(m)(h+) and
/// q-_{m+1} = -(-1)^m P^(m)(h-).
PhaseExpansion phase_expansion(std::span<const Rational> a, const Rational& h_minus,
                               const Rational& h_plus, double scale = 1.0);
PhaseExpansion phase_expansion(std::span<const double> a, double h_minus, double h_plus,
                               double scale = 1.0);

/// Throws DomainError at r = 0.
std::complex<double> eval_expansion(const PhaseExpansion& e, double r);

/// V as a polynomial on each piece and zero elsewhere.
struct PiecewisePolynomial {
  struct Piece {
    Rational lo;
    Rational hi;
    std::vector<Rational> coeffs;  // monomial, times scale
  };
  std::vector<Piece> pieces;
  double scale = 1.0;

  double operator()(double t) const;
};

/// Taylor-expands at h+ from q+ and checks that q- is reproduced exactly.
/// Throws RejectionError("not a finite-expansion transform") otherwise.
PiecewisePolynomial inverse_expansion(const PhaseExpansion& e);

enum class Regime { finite, non_finite, inconclusive };
std::string_view to_string(Regime r);

struct FinitenessReport {
  Regime verdict = Regime::inconclusive;
  int degree = -1;                        // smallest exact truncation, if finite
  std::vector<double> r;
  std::vector<std::complex<double>> chi;  // slice quadrature at each r
  std::vector<double> residual;           // per truncation degree 0..N_max, max over r, / vol
  double decay_slope = 0.0;               // d log|residual(r)| / d log r at N_max
};

/// Compares slice quadrature of chi with expansions of least-squares
/// polynomial fits of degree 0..N_max. finite: some degree reaches 1e-8
/// (relative to the volume) and every higher one stays there. non_finite:
/// the N_max residual is still above 1e-6. Evidence only, not a proof.
FinitenessReport finiteness_check(const ConvexBody& body, const Vec& omega,
                                  std::span<const double> r, int n_max,
                                  const SectionOptions& opts = {});

}  // namespace polyint
