#include "polyint/numerics.hpp"

#include "polyint/errors.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace polyint {

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw InputError("Gauss-Legendre rule needs at least one node");
  static std::mutex guard;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(guard);
  auto& slot = cache[n];
  if (slot) return *slot;

  auto rule = std::make_unique<GaussRule>();
  rule->nodes.resize(n);
  rule->weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule->nodes[i] = -x;
    rule->nodes[n - 1 - i] = x;
    rule->weights[i] = w;
    rule->weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule->nodes[n / 2] = 0.0;
  slot = std::move(rule);
  return *slot;
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  double best = 0.5 * (a + b);
  double fbest = f(best);
  // The bracket may have collapsed onto an end of [lo, hi].
  for (double x : {lo, hi}) {
    const double fx = f(x);
    if (fx > fbest) {
      fbest = fx;
      best = x;
    }
  }
  return best;
}

double bracketed_root(const std::function<double(double)>& f, double lo, double hi) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw DegenerateError("root is not bracketed");
  boost::uintmax_t max_iter = 300;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52), max_iter);
  return 0.5 * (a + b);
}

std::pair<double, double> linear_regression(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DegenerateError("regression needs at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DegenerateError("regression abscissae are all equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

double chord_integral(const std::function<double(double)>& F, double lo, double hi, int samples,
                      double rel_tol, double* error) {
  if (error) *error = 0.0;
  if (!(hi > lo)) return 0.0;
  thread_local boost::math::quadrature::tanh_sinh<double> integrator;

  std::vector<double> x(samples + 1);
  std::vector<double> v(samples + 1);
  for (int i = 0; i <= samples; ++i) {
    x[i] = lo + (hi - lo) * i / samples;
    v[i] = F(x[i]);
  }
  double total = 0.0;
  int i = 0;
  while (i <= samples) {
    if (v[i] <= 0.0) {
      ++i;
      continue;
    }
    double a = x[i];
    if (i > 0) a = bracketed_root(F, x[i - 1], x[i]);
    int j = i;
    while (j + 1 <= samples && v[j + 1] > 0.0) ++j;
    double b = x[j];
    if (j < samples) b = bracketed_root(F, x[j], x[j + 1]);
    double err = 0.0;
    double l1 = 0.0;
    std::size_t levels = 0;
    const double piece = integrator.integrate(
        [&](double s) { return 2.0 * std::sqrt(std::max(F(s), 0.0)); }, a, b, rel_tol, &err,
        &l1, &levels);
    total += piece;
    if (error) *error += err;
    i = j + 1;
  }
  return total;
}

}  // namespace polyint
