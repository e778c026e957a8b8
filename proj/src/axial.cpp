#include "polyint/axial.hpp"

#include "polyint/errors.hpp"
#include "polyint/numerics.hpp"
#include "polyint/parallel.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <fmt/format.h>

#include <cmath>
#include <numbers>

namespace polyint {

double omega_area(const RevolutionProfile& profile, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InputError("alpha must be positive");
  const std::vector<double>& b = profile.coeffs();
  const double a2 = alpha * alpha;
  // F(w) = a^2 + sum_{k>=1} b_2k w^k with w = z^2; Cauchy bound on its roots.
  double bound = 1.0;
  for (std::size_t k = 1; k + 1 < b.size(); ++k) bound = std::max(bound, 1.0 + std::abs(b[k] / b.back()));
  bound = std::max(bound, 1.0 + a2 / std::abs(b.back()));
  const double Z = std::sqrt(bound) * (1.0 + 1e-12);
  auto F = [&](double z) {
    const double w = z * z;
    double s = 0.0;
    for (std::size_t k = b.size() - 1; k >= 1; --k) s = (s + b[k]) * w;
    return a2 + s;
  };
  return chord_integral(F, -Z, Z, 2048, 1e-13);
}

GrowthFit growth_exponent(const RevolutionProfile& profile, double alpha_min, double alpha_max,
                          int samples) {
  if (!(alpha_min > 0.0) || !(alpha_max > alpha_min))
    throw InputError("alpha range must satisfy 0 < min < max");
  if (alpha_max / alpha_min < 1e3 * (1.0 - 1e-12))
    throw InputError(fmt::format("alpha range spans {:.3g}; need max/min >= 1e3",
                                 alpha_max / alpha_min));
  if (samples < 4) throw InputError("need at least 4 alpha samples");
  GrowthFit out;
  out.alpha.resize(samples);
  out.area.resize(samples);
  const double l0 = std::log(alpha_min);
  const double l1 = std::log(alpha_max);
  for (int i = 0; i < samples; ++i)
    out.alpha[i] = std::exp(l0 + (l1 - l0) * i / (samples - 1));
  out.alpha.back() = alpha_max;
  parallel_for(samples, [&](std::size_t i) { out.area[i] = omega_area(profile, out.alpha[i]); });
  std::vector<double> x;
  std::vector<double> y;
  for (int i = 0; i < samples; ++i) {
    if (out.alpha[i] < alpha_max / 10.0 * (1.0 - 1e-12)) continue;
    x.push_back(std::log(out.alpha[i]));
    y.push_back(std::log(out.area[i]));
  }
  if (x.size() < 2) throw InputError("too few alpha samples in the top decade");
  out.exponent = linear_regression(x, y).first;
  return out;
}

double limit_constant_oracle(const RevolutionProfile& profile) {
  const int N = profile.order();
  const double c = -profile.leading();
  return 2.0 * boost::math::beta(1.0 / (2.0 * N), 1.5) / (N * std::pow(c, 1.0 / (2.0 * N)));
}

AxialReport axial_verdict(const ConvexBody& body, const AxialOptions& opts) {
  if (body.kind() != BodyKind::revolution) throw InputError("axial verdict needs a revolution body");
  const RevolutionProfile& P = body.profile();
  AxialReport out;

  const GrowthFit g = growth_exponent(P, opts.alpha_min, opts.alpha_max, opts.samples);
  out.exponent = g.exponent;
  const double nearest = std::round(g.exponent);
  out.consistent = std::abs(g.exponent - nearest) <= 0.05;
  out.n_fit = g.exponent > 1.0 ? static_cast<int>(std::lround(1.0 / (g.exponent - 1.0))) : 0;
  const int N = P.order();
  out.limit_constant = g.area.back() / std::pow(g.alpha.back(), 1.0 + 1.0 / N);
  out.limit_oracle = limit_constant_oracle(P);

  const Vec xi = body.rotation().col(2);
  const Vec eta = body.rotation().col(0);
  const int max_degree = opts.fit.resolved_max_degree(3);
  const SectionCurve axis = section_curve(body, xi, opts.fit.nodes);
  for (std::size_t i = 0; i < axis.nodes.size(); ++i) {
    const double z = axis.nodes[i] - body.center().dot(xi);
    const double expect = std::abs(z) < P.half_height() ? std::numbers::pi * P(z) : 0.0;
    out.axis_identity_error = std::max(out.axis_identity_error,
                                       std::abs(axis.values[i] - expect) / (std::numbers::pi * P.b0()));
  }
  out.axis_fit = fit_polynomial(axis, max_degree, opts.fit.tol);
  out.transverse_fit = fit_polynomial(section_curve(body, eta, opts.fit.nodes), max_degree, opts.fit.tol);

  if (out.consistent && N == 1) {
    const double r = std::sqrt(P.b0());
    EllipsoidParams e;
    e.semi_axes = Vec(3);
    e.semi_axes << r, r, std::sqrt(P.b0() / -P.leading());
    e.center = body.center();
    e.rotation = body.rotation();
    out.ellipsoid = e;
  }
  return out;
}

}  // namespace polyint
