#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace polyint {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], increasing
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, cached per n.
const GaussRule& gauss_legendre(int n);

/// Maximizer of a unimodal f on [lo, hi] by golden-section search.
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol = 1e-12);

/// Root of f on a bracket [lo, hi] with f(lo), f(hi) of opposite signs.
double bracketed_root(const std::function<double(double)>& f, double lo, double hi);

/// Ordinary least-squares slope and intercept of y on x.
std::pair<double, double> linear_regression(std::span<const double> x, std::span<const double> y);

/// Integral of 2 sqrt(max(F, 0)) over [lo, hi]. The positive set of F is
/// located by sampling on `samples` cells and refining sign changes; each
/// positive interval is integrated by tanh-sinh, which absorbs the square-root
/// endpoint behaviour. `error` receives the summed error estimate.
double chord_integral(const std::function<double(double)>& F, double lo, double hi,
                      int samples, double rel_tol, double* error = nullptr);

}  // namespace polyint
