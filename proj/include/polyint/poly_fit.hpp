#pragma once

#include "polyint/section.hpp"

#include <string_view>
#include <vector>

namespace polyint {

enum class Verdict { polynomial, non_polynomial, inconclusive };
std::string_view to_string(Verdict v);

struct PolyFit {
  int degree = 0;
  std::vector<double> coefficients;  // monomial a_0..a_d in t
  ChebSeries series;                 // the same fit in the Chebyshev basis
  double residual = 0.0;             // max |fit - V| over the nodes
  double threshold = 0.0;            // tol * max|V|
  Verdict verdict = Verdict::inconclusive;
  std::vector<double> residuals;     // residual per tried degree 0, 1, ...
};

struct FitParams {
  int nodes = 64;
  int max_degree = -1;  // -1: 2n + 6
  double tol = 1e-7;    // relative to max|V|

  int resolved_max_degree(int dim) const { return max_degree < 0 ? 2 * dim + 6 : max_degree; }
};

/// Least-squares fits of degree 0..max_degree in the Chebyshev basis of
/// [h-, h+]. polynomial: the smallest d whose residual is <= tol max|V| and
/// stays there for d+1 and d+2 (as far as max_degree allows). non_polynomial:
/// the max_degree residual exceeds 10 tol max|V| and ten times the curve's own
/// error estimate. Otherwise inconclusive.
PolyFit fit_polynomial(const SectionCurve& curve, int max_degree, double tol);

enum class End { minus, plus };

/// Slope of log V against log(distance to the endpoint) over the nodes in
/// the window [delta/100, delta] from the endpoint, delta = 1e-2 (h+ - h-).
double endpoint_exponent(const SectionCurve& curve, End end);

struct VanishingReport {
  int order = 0;          // derivatives 0..order-1 are checked
  double worst = 0.0;     // max |p^(j)(h)| (h+ - h-)^j / max|V|
  bool passed = false;
};

/// Checks that the fitted polynomial vanishes to the given order at both
/// support ends: |p^(j)(h±)| (h+ - h-)^j <= tol max|V| for j < order.
VanishingReport endpoint_vanishing(const PolyFit& fit, const SectionCurve& curve, int order,
                                   double tol = 1e-6);

std::vector<PolyFit> fit_family(const ConvexBody& body, const SphereGrid& grid,
                                const FitParams& params, const SectionOptions& opts = {});

enum class FieldFlag { fitted, above_degree, not_polynomial };
std::string_view to_string(FieldFlag f);

struct CoefficientField {
  int k = 0;
  int dim = 3;
  std::vector<Vec> omegas;
  std::vector<double> values;
  std::vector<FieldFlag> flags;
  bool valid = true;  // false if some direction was not polynomial
};

CoefficientField coefficient_field(const ConvexBody& body, int k, const SphereGrid& grid,
                                   const FitParams& params, const SectionOptions& opts = {});

/// Field built from a closed-form a_k(omega), for checks on synthetic data.
CoefficientField synthetic_field(int k, const SphereGrid& grid,
                                 const std::function<double(const Vec&)>& a);

struct ParityReport {
  double max_deviation = 0.0;  // max |a_k(-w) - (-1)^k a_k(w)|
  std::size_t pairs = 0;
  bool passed = false;
};

/// Throws InputError if some direction has no antipode in the field.
ParityReport parity_check(const CoefficientField& field, double tol = 1e-9);

/// Polynomial on R^n as a sum of monomials.
class SpherePolynomial {
 public:
  struct Term {
    double coeff;
    std::vector<int> powers;
  };

  explicit SpherePolynomial(int dim) : dim_(dim) {}
  static SpherePolynomial constant(int dim, double c);
  SpherePolynomial& add(double coeff, std::vector<int> powers);

  int dim() const { return dim_; }
  int degree() const;
  double operator()(const Vec& w) const;

 private:
  int dim_;
  std::vector<Term> terms_;
};

/// Quadrature of \int_{S^{n-1}} a_k p dA over the field's grid (equal weights,
/// antipodally symmetrized). Requires k > n-1 and deg p <= k - n + 1.
double moment_orthogonality(const CoefficientField& field, const SpherePolynomial& p);

}  // namespace polyint
