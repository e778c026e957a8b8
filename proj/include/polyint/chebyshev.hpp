#pragma once

#include <span>
#include <vector>

namespace polyint {

/// Chebyshev series sum_j c_j T_j(x) on [lo, hi], x = (2t - lo - hi) / (hi - lo).
class ChebSeries {
 public:
  ChebSeries() = default;
  ChebSeries(double lo, double hi, std::vector<double> coeffs);

  double operator()(double t) const;
  ChebSeries derivative() const;
  /// Monomial coefficients a_0..a_N in t (not in the normalized variable).
  std::vector<double> monomial_coefficients() const;

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::vector<double>& coeffs() const { return coeffs_; }

 private:
  double lo_ = -1.0;
  double hi_ = 1.0;
  std::vector<double> coeffs_;
};

/// m Chebyshev extrema (Gauss-Lobatto points) of [lo, hi] in increasing order;
/// the first and last nodes are lo and hi.
std::vector<double> lobatto_nodes(double lo, double hi, int m);

/// Interpolant through values given at lobatto_nodes(lo, hi, values.size()).
ChebSeries chebyshev_interpolant(double lo, double hi, std::span<const double> values);

/// Least-squares fit of the given degree in the Chebyshev basis of [lo, hi].
ChebSeries chebyshev_least_squares(double lo, double hi, std::span<const double> nodes,
                                   std::span<const double> values, int degree);

/// Clenshaw-Curtis weights matching lobatto_nodes(lo, hi, m).
std::vector<double> clenshaw_curtis_weights(double lo, double hi, int m);

}  // namespace polyint
