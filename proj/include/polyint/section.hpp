#pragma once

#include "polyint/body.hpp"
#include "polyint/chebyshev.hpp"
#include "polyint/sphere.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace polyint {

enum class SectionMethod { automatic, quadrature };

struct SectionOptions {
  /// automatic uses the closed form for balls and ellipsoids.
  SectionMethod method = SectionMethod::automatic;
  int rays = 512;                    // n = 3 ray casting
  int radial_nodes = 16;             // n >= 4: polar rule over 2D slices
  int directions = 32;               // n >= 5: directions of the polar rule
  std::uint64_t seed = 1;
};

struct SectionValue {
  double value = 0.0;
  double est_error = 0.0;
};

/// (n-1)-volume of body ∩ {<omega, x> = t}; exactly 0 outside the open
/// support interval.
SectionValue section_volume_with_error(const ConvexBody& body, const Vec& omega, double t,
                                       const SectionOptions& opts = {});
double section_volume(const ConvexBody& body, const Vec& omega, double t,
                      const SectionOptions& opts = {});

/// kappa_{n-1} (b_1...b_n / h^n)(h^2 - t^2)^{(n-1)/2} for |t| < h, else 0.
/// `t` is the offset relative to the center, i.e. t_world - <center, omega>.
double ellipsoid_closed_form(const EllipsoidParams& e, const Vec& omega, double t);

enum class CurveSource { closed_form, quadrature };
std::string_view to_string(CurveSource source);

struct SectionCurve {
  Vec omega;
  double h_minus = 0.0;
  double h_plus = 0.0;
  std::vector<double> nodes;      // Chebyshev-Lobatto points of [h-, h+]
  std::vector<double> values;
  std::vector<double> est_error;  // absolute, per node
  CurveSource source = CurveSource::closed_form;

  double max_value() const;
  double max_error() const;
  ChebSeries interpolant() const;
};

SectionCurve section_curve(const ConvexBody& body, const Vec& omega, int m,
                           const SectionOptions& opts = {});

enum class FourierMethod { slice, boundary };

/// Estimate of the Fourier transform of the indicator at r * omega.
/// slice: integral of e^{irt} V(omega, t) dt. boundary: surface integral
/// (-i/r) \oint e^{ir<omega,x>} <omega, nu> dS (n = 2, 3 only).
std::complex<double> fourier_chi(const ConvexBody& body, const Vec& omega, double r,
                                 FourierMethod method, const SectionOptions& opts = {});

/// Section curves of one body over a direction grid together with the
/// second derivatives of their interpolants.
struct SectionFamily {
  ConvexBody body;
  SphereGrid grid;
  int nodes = 0;
  std::vector<SectionCurve> curves;
  std::vector<ChebSeries> second_derivative;
  SectionOptions options;
};

SectionFamily sample_family(const ConvexBody& body, const SphereGrid& grid, int m,
                            const SectionOptions& opts = {});

struct BackProjection {
  double value = 0.0;
  double interior_term = 0.0;   // curves evaluated inside their support
  double boundary_term = 0.0;   // jumps of dV/dt at the support ends
  bool accuracy_warning = false;
  std::string note;
};

/// -1/(8 pi^2) \int_{S^2} V''(omega, <omega, x>) domega in R^3, V extended by
/// zero. The jump of dV/dt at h+ contributes a delta term on the curve
/// {<omega, x> = h+(omega)}, which is non-empty only for exterior x.
BackProjection back_project(const SectionFamily& family, const Vec& x);

constexpr double kInversionConstant3 = -1.0 / (8.0 * 3.14159265358979323846 * 3.14159265358979323846);

}  // namespace polyint
