#include "polyint/chebyshev.hpp"

#include "polyint/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace polyint {

ChebSeries::ChebSeries(double lo, double hi, std::vector<double> coeffs)
    : lo_(lo), hi_(hi), coeffs_(std::move(coeffs)) {
  if (!(hi > lo)) throw InputError("Chebyshev interval must satisfy lo < hi");
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double ChebSeries::operator()(double t) const {
  const double x = (2.0 * t - lo_ - hi_) / (hi_ - lo_);
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t j = coeffs_.size(); j-- > 1;) {
    const double b0 = 2.0 * x * b1 - b2 + coeffs_[j];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + coeffs_[0];
}

ChebSeries ChebSeries::derivative() const {
  const std::size_t n = coeffs_.size();
  if (n <= 1) return {lo_, hi_, {0.0}};
  std::vector<double> d(n - 1, 0.0);
  // c'_{k-1} = c'_{k+1} + 2 k c_k, then halve c'_0.
  for (std::size_t k = n - 1; k >= 1; --k) {
    const double next = k + 1 < n - 1 ? d[k + 1] : 0.0;
    d[k - 1] = next + 2.0 * k * coeffs_[k];
  }
  d[0] *= 0.5;
  const double scale = 2.0 / (hi_ - lo_);
  for (double& c : d) c *= scale;
  return {lo_, hi_, std::move(d)};
}

std::vector<double> ChebSeries::monomial_coefficients() const {
  const std::size_t n = coeffs_.size();
  // Monomial expansion in the normalized variable x.
  std::vector<long double> px(n, 0.0L);
  std::vector<long double> tprev(n, 0.0L);
  std::vector<long double> tcur(n, 0.0L);
  tprev[0] = 1.0L;  // T_0
  px[0] += coeffs_[0];
  if (n > 1) {
    tcur[1] = 1.0L;  // T_1
    px[1] += coeffs_[1];
  }
  for (std::size_t j = 2; j < n; ++j) {
    std::vector<long double> tnext(n, 0.0L);
    for (std::size_t i = 0; i + 1 < n; ++i) tnext[i + 1] += 2.0L * tcur[i];
    for (std::size_t i = 0; i < n; ++i) tnext[i] -= tprev[i];
    for (std::size_t i = 0; i < n; ++i) px[i] += coeffs_[j] * tnext[i];
    tprev = std::move(tcur);
    tcur = std::move(tnext);
  }
  // Substitute x = alpha t + beta.
  const long double alpha = 2.0L / (static_cast<long double>(hi_) - lo_);
  const long double beta = -(static_cast<long double>(hi_) + lo_) / (static_cast<long double>(hi_) - lo_);
  std::vector<long double> pt(n, 0.0L);
  for (std::size_t i = 0; i < n; ++i) {
    long double binom = 1.0L;  // C(i, k)
    for (std::size_t k = 0; k <= i; ++k) {
      pt[k] += px[i] * binom * std::pow(alpha, static_cast<long double>(k)) *
               std::pow(beta, static_cast<long double>(i - k));
      binom = binom * static_cast<long double>(i - k) / static_cast<long double>(k + 1);
    }
  }
  return {pt.begin(), pt.end()};
}

std::vector<double> lobatto_nodes(double lo, double hi, int m) {
  if (m < 2) throw InputError("need at least two Lobatto nodes");
  std::vector<double> t(m);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (int k = 0; k < m; ++k) t[k] = mid - half * std::cos(std::numbers::pi * k / (m - 1));
  t.front() = lo;
  t.back() = hi;
  if (m % 2 == 1) t[m / 2] = mid;
  return t;
}

ChebSeries chebyshev_interpolant(double lo, double hi, std::span<const double> values) {
  const int m = static_cast<int>(values.size());
  if (m < 2) throw InputError("interpolation needs at least two values");
  const int N = m - 1;
  std::vector<double> c(m, 0.0);
  for (int j = 0; j <= N; ++j) {
    double s = 0.0;
    for (int k = 0; k <= N; ++k) {
      // Node k sits at x = -cos(pi k / N) = cos(pi (N - k) / N).
      const double w = (k == 0 || k == N) ? 0.5 : 1.0;
      s += w * values[k] * std::cos(std::numbers::pi * j * (N - k) / N);
    }
    c[j] = 2.0 * s / N;
  }
  c[0] *= 0.5;
  c[N] *= 0.5;
  return {lo, hi, std::move(c)};
}

ChebSeries chebyshev_least_squares(double lo, double hi, std::span<const double> nodes,
                                   std::span<const double> values, int degree) {
  if (nodes.size() != values.size()) throw InputError("nodes and values differ in length");
  if (degree < 0 || static_cast<std::size_t>(degree) >= nodes.size())
    throw InputError("least-squares degree must be below the node count");
  const Eigen::Index rows = static_cast<Eigen::Index>(nodes.size());
  const Eigen::Index cols = degree + 1;
  Eigen::MatrixXd A(rows, cols);
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double x = std::clamp((2.0 * nodes[i] - lo - hi) / (hi - lo), -1.0, 1.0);
    double t0 = 1.0;
    double t1 = x;
    A(i, 0) = 1.0;
    if (cols > 1) A(i, 1) = x;
    for (Eigen::Index j = 2; j < cols; ++j) {
      const double t2 = 2.0 * x * t1 - t0;
      A(i, j) = t2;
      t0 = t1;
      t1 = t2;
    }
    b[i] = values[i];
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  return {lo, hi, std::vector<double>(c.data(), c.data() + c.size())};
}

std::vector<double> clenshaw_curtis_weights(double lo, double hi, int m) {
  if (m < 2) throw InputError("Clenshaw-Curtis needs at least two nodes");
  const int N = m - 1;
  std::vector<double> w(m);
  for (int k = 0; k <= N; ++k) {
    const double theta = std::numbers::pi * k / N;
    double s = 0.0;
    for (int j = 1; j <= N / 2; ++j) {
      const double b = (2 * j == N) ? 1.0 : 2.0;
      s += b / (4.0 * j * j - 1.0) * std::cos(2.0 * j * theta);
    }
    const double c = (k == 0 || k == N) ? 1.0 : 2.0;
    w[k] = c / N * (1.0 - s) * 0.5 * (hi - lo);
  }
  return w;
}

}  // namespace polyint
