#include "polyint/recovery.hpp"

#include "polyint/errors.hpp"
#include "polyint/parallel.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <fmt/format.h>

#include <cmath>

namespace polyint {

MomentTriple moments_from_curve(const SectionCurve& curve) {
  const int m = static_cast<int>(curve.nodes.size());
  const std::vector<double> w = clenshaw_curtis_weights(curve.h_minus, curve.h_plus, m);
  MomentTriple out;
  for (int i = 0; i < m; ++i) {
    const double t = curve.nodes[i];
    const double v = w[i] * curve.values[i];
    out.m0 += v;
    out.m1 += v * t;
    out.m2 += v * t * t;
  }
  return out;
}

WidthData width_from_moments(const MomentTriple& m, int n) {
  if (n < 2) throw InputError("dimension must be at least 2");
  if (!(m.m0 > 0.0)) throw DegenerateError("zeroth moment is not positive");
  const double alpha = boost::math::beta(0.5, 0.5 * (n + 1));
  const double beta = boost::math::beta(1.5, 0.5 * (n + 1));
  const double B = m.m1 / m.m0;
  const double var = m.m2 / m.m0 - B * B;
  if (!(var > 0.0)) throw DegenerateError("m2/m0 - B^2 is not positive");
  return {B, std::sqrt(alpha / beta * var)};
}

namespace {

void require_odd(int n) {
  if (n % 2 == 0)
    throw RejectionError(fmt::format("n = {} is even: no polynomially integrable bodies exist", n));
}

// Degree gate, then moments and widths of one direction.
void gate(const SectionCurve& c, std::size_t i, int n, const RecoveryOptions& opts,
          MomentTriple& moments, WidthData& width) {
  if (c.omega.size() != n) throw InputError("curve direction has wrong dimension");
  const PolyFit fit = fit_polynomial(c, opts.fit.resolved_max_degree(n), opts.fit.tol);
  if (fit.verdict != Verdict::polynomial)
    throw RejectionError(fmt::format(
        "degree gate: direction {} is {} (residual {:.3e}); the body is not polynomially integrable",
        i, to_string(fit.verdict), fit.residual));
  if (fit.degree > n - 1)
    throw RejectionError(fmt::format("degree gate: direction {} has degree {} > n - 1 = {}", i,
                                     fit.degree, n - 1));
  moments = moments_from_curve(c);
  width = width_from_moments(moments, n);
}

Recovery assemble(const std::vector<Vec>& omegas, const std::vector<MomentTriple>& moments,
                  const std::vector<WidthData>& widths, int n, const RecoveryOptions& opts);

}  // namespace

Recovery recover_ellipsoid(std::span<const SectionCurve> curves, int n,
                           const RecoveryOptions& opts) {
  require_odd(n);
  const std::size_t N = curves.size();
  std::vector<MomentTriple> moments(N);
  std::vector<WidthData> widths(N);
  std::vector<Vec> omegas(N);
  parallel_for(N, [&](std::size_t i) {
    gate(curves[i], i, n, opts, moments[i], widths[i]);
    omegas[i] = curves[i].omega;
  });
  return assemble(omegas, moments, widths, n, opts);
}

Recovery recover_ellipsoid(const ConvexBody& body, const SphereGrid& grid,
                           const RecoveryOptions& opts) {
  if (grid.dim != body.dim()) throw InputError("grid dimension does not match the body");
  const int n = body.dim();
  require_odd(n);
  const std::size_t N = grid.size();
  std::vector<MomentTriple> moments(N);
  std::vector<WidthData> widths(N);
  parallel_for(N, [&](std::size_t i) {
    const SectionCurve c = section_curve(body, grid.points[i], opts.fit.nodes, opts.section);
    gate(c, i, n, opts, moments[i], widths[i]);
  });
  return assemble(grid.points, moments, widths, n, opts);
}

namespace {

Recovery assemble(const std::vector<Vec>& omegas, const std::vector<MomentTriple>& moments,
                  const std::vector<WidthData>& widths, int n, const RecoveryOptions& opts) {
  const std::size_t N = omegas.size();
  if (N < static_cast<std::size_t>(n * (n + 1) / 2 + n))
    throw InputError("too few directions to fit the quadratic form");
  // C^2 = sum_{j<=l} q_jl w_j w_l and B = <b, w>, both by least squares.
  const int nq = n * (n + 1) / 2;
  Mat A(N, nq);
  Vec c2(N);
  Mat L(N, n);
  Vec bvec(N);
  for (std::size_t i = 0; i < N; ++i) {
    const Vec& w = omegas[i];
    int col = 0;
    for (int j = 0; j < n; ++j)
      for (int l = j; l < n; ++l) A(i, col++) = (j == l ? 1.0 : 2.0) * w[j] * w[l];
    c2[i] = widths[i].C * widths[i].C;
    L.row(i) = w.transpose();
    bvec[i] = widths[i].B;
  }
  const Vec q = A.colPivHouseholderQr().solve(c2);
  const Vec center = L.colPivHouseholderQr().solve(bvec);
  Mat Q(n, n);
  {
    int col = 0;
    for (int j = 0; j < n; ++j)
      for (int l = j; l < n; ++l) Q(j, l) = Q(l, j) = q[col++];
  }

  Recovery out;
  out.widths = widths;
  double mean = 0.0;
  double lo = moments[0].m0;
  double hi = moments[0].m0;
  for (const MomentTriple& m : moments) {
    mean += m.m0;
    lo = std::min(lo, m.m0);
    hi = std::max(hi, m.m0);
  }
  mean /= static_cast<double>(N);
  out.volume = mean;
  out.m0_spread = (hi - lo) / mean;

  double scale = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const Vec& w = omegas[i];
    const double r = std::abs(c2[i] - w.dot(Q * w)) + std::abs(bvec[i] - w.dot(center));
    out.residual = std::max(out.residual, r);
    scale = std::max(scale, c2[i]);
  }

  Eigen::SelfAdjointEigenSolver<Mat> eig(Q);
  const Vec ev = eig.eigenvalues();
  if (!(ev.minCoeff() > 0.0))
    throw RejectionError(fmt::format("not an ellipsoid: quadratic form has eigenvalue {:.3e}",
                                     ev.minCoeff()));
  Mat frame = eig.eigenvectors();
  bool tied = true;
  for (int j = 0; j + 1 < n; ++j) tied = tied && std::abs(ev[j + 1] - ev[j]) < 1e-8;
  if (tied) frame = Mat::Identity(n, n);
  if (frame.determinant() < 0.0) frame.col(0) *= -1.0;
  out.params.semi_axes = ev.cwiseSqrt();
  out.params.center = center;
  out.params.rotation = frame;

  if (out.residual > opts.residual_tol * std::max(1.0, scale))
    throw RejectionError(fmt::format("not an ellipsoid: fit residual {:.3e} exceeds {:.3e}",
                                     out.residual, opts.residual_tol * std::max(1.0, scale)));
  if (out.m0_spread > opts.spread_tol)
    throw RejectionError(fmt::format("m0 varies across directions: relative spread {:.3e}",
                                     out.m0_spread));
  return out;
}

}  // namespace

}  // namespace polyint
