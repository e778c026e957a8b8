#pragma once

#include "polyint/poly_fit.hpp"

#include <optional>
#include <vector>

namespace polyint {

/// Area of Omega(alpha) = {x^2 - (b2 z^2 + ... + b2N z^2N) <= alpha^2}; b0 of
/// the profile is ignored.
double omega_area(const RevolutionProfile& profile, double alpha);

struct GrowthFit {
  double exponent = 0.0;
  std::vector<double> alpha;
  std::vector<double> area;
};

/// Log-log slope of the area over the top decade of `samples` log-spaced
/// alphas in [alpha_min, alpha_max]. Requires alpha_max / alpha_min >= 1e3.
GrowthFit growth_exponent(const RevolutionProfile& profile, double alpha_min, double alpha_max,
                          int samples);

/// Area of {u^2 + c v^2N <= 1}, c = -b2N: 2 B(1/(2N), 3/2) / (N c^{1/(2N)}).
double limit_constant_oracle(const RevolutionProfile& profile);

struct AxialReport {
  double exponent = 0.0;
  int n_fit = 0;                  // round(1 / (exponent - 1))
  bool consistent = false;        // exponent within 0.05 of an integer
  double limit_constant = 0.0;    // area(alpha_max) / alpha_max^{1 + 1/N}
  double limit_oracle = 0.0;
  double axis_identity_error = 0.0;  // max |V(xi, t) - pi P(t)| / (pi b0)
  PolyFit axis_fit;
  PolyFit transverse_fit;
  std::optional<EllipsoidParams> ellipsoid;  // when consistent
};

struct AxialOptions {
  double alpha_min = 1.0;
  double alpha_max = 1e3;
  int samples = 31;
  FitParams fit{64, -1, 1e-7};
};

AxialReport axial_verdict(const ConvexBody& body, const AxialOptions& opts = {});

}  // namespace polyint
