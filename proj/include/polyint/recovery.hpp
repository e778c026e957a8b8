#pragma once

#include "polyint/poly_fit.hpp"

#include <span>
#include <vector>

namespace polyint {

struct MomentTriple {
  double m0 = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
};

/// Clenshaw-Curtis integrals of t^k V(t), k = 0, 1, 2, on the curve's
/// Lobatto nodes.
MomentTriple moments_from_curve(const SectionCurve& curve);

struct WidthData {
  double B = 0.0;  // (h+ + h-) / 2
  double C = 0.0;  // (h+ - h-) / 2
};

/// For V = A [(h+ - t)(t - h-)]^{(n-1)/2}: B = m1/m0 and
/// C^2 = (alpha/beta)(m2/m0 - B^2), alpha = B(1/2, (n+1)/2), beta = B(3/2, (n+1)/2).
WidthData width_from_moments(const MomentTriple& m, int n);

struct RecoveryOptions {
  FitParams fit{32, -1, 1e-7};
  double residual_tol = 1e-6;  // relative to max C^2
  double spread_tol = 1e-6;
  SectionOptions section;
};

struct Recovery {
  EllipsoidParams params;
  double residual = 0.0;
  double m0_spread = 0.0;
  double volume = 0.0;  // mean m0
  std::vector<WidthData> widths;
};

/// Fits C^2 = w^T Q w and B = <b, w> over the curves and diagonalizes Q.
/// Throws RejectionError when a curve fails the degree gate (polynomial of
/// degree <= n - 1), for even n, for an indefinite Q, or when the residual or
/// the m0 spread exceed their tolerances.
Recovery recover_ellipsoid(std::span<const SectionCurve> curves, int n,
                           const RecoveryOptions& opts = {});
Recovery recover_ellipsoid(const ConvexBody& body, const SphereGrid& grid,
                           const RecoveryOptions& opts = {});

}  // namespace polyint
