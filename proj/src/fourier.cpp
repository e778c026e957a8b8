#include "polyint/errors.hpp"
#include "polyint/numerics.hpp"
#include "polyint/section.hpp"

#include <cmath>
#include <numbers>

namespace polyint {

namespace {

using cplx = std::complex<double>;

cplx cis(double a) { return {std::cos(a), std::sin(a)}; }

cplx slice_transform(const ConvexBody& body, const Vec& omega, double r,
                     const SectionOptions& opts) {
  const SupportInterval s = support(body, omega);
  const double B = 0.5 * (s.upper + s.lower);
  const double C = 0.5 * (s.upper - s.lower);
  // t = B + C cos(theta): the Jacobian C sin(theta) flattens the endpoint
  // behaviour of V, so Gauss-Legendre in theta converges fast.
  int m = static_cast<int>(std::ceil(1.2 * std::abs(r) * C + 24.0));
  m = std::max(m, body.has_closed_form_sections() && opts.method == SectionMethod::automatic ? 32 : 96);
  const GaussRule& g = gauss_legendre(m);
  cplx sum = 0.0;
  for (int i = 0; i < m; ++i) {
    const double theta = 0.5 * std::numbers::pi * (g.nodes[i] + 1.0);
    const double t = B + C * std::cos(theta);
    const double v = section_volume(body, omega, t, opts);
    sum += g.weights[i] * v * C * std::sin(theta) * cis(r * t);
  }
  return 0.5 * std::numbers::pi * sum;
}

// \oint e^{ir<omega,x>} <omega, nu> dS for gauge bodies in R^3. The boundary
// is x = c + R s / g(s) over the unit sphere, where nu dS = grad g(s) / g(s)^3 dA(s).
cplx gauge_surface_3(const ConvexBody& body, const Vec& omega, double r) {
  const Vec u = body.rotation().transpose() * omega;
  // Polar axis through the support points, where the phase is stationary
  // (both poles, the kinds with a gauge being centrally symmetric).
  const Vec axis = body.to_local(support_points(body, omega).upper).normalized();
  const Mat F = orthonormal_complement(axis);
  const double offset = body.center().dot(omega);
  const SupportInterval s = support(body, omega);
  const double C = 0.5 * (s.upper - s.lower);
  const int nt = std::max(64, static_cast<int>(std::ceil(std::abs(r) * C + 48.0)));
  const int np = 2 * nt;
  const GaussRule& g = gauss_legendre(nt);
  cplx sum = 0.0;
  for (int i = 0; i < nt; ++i) {
    const double theta = 0.5 * std::numbers::pi * (g.nodes[i] + 1.0);
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    cplx ring = 0.0;
    for (int j = 0; j < np; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / np;
      const Vec dir = st * (std::cos(phi) * F.col(0) + std::sin(phi) * F.col(1)) + ct * axis;
      const double gs = body.gauge(dir);
      const double flux = u.dot(body.gauge_gradient(dir)) / (gs * gs * gs);
      ring += flux * cis(r * (offset + u.dot(dir) / gs));
    }
    sum += g.weights[i] * st * ring;
  }
  return sum * (0.5 * std::numbers::pi) * (2.0 * std::numbers::pi / np);
}

cplx gauge_surface_2(const ConvexBody& body, const Vec& omega, double r) {
  const Vec u = body.rotation().transpose() * omega;
  const double offset = body.center().dot(omega);
  const SupportInterval s = support(body, omega);
  const double C = 0.5 * (s.upper - s.lower);
  const int np = std::max(128, static_cast<int>(std::ceil(2.0 * std::abs(r) * C + 128.0)));
  cplx sum = 0.0;
  Vec dir(2);
  for (int j = 0; j < np; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / np;
    dir << std::cos(phi), std::sin(phi);
    const double gs = body.gauge(dir);
    const double flux = u.dot(body.gauge_gradient(dir)) / (gs * gs);
    sum += flux * cis(r * (offset + u.dot(dir) / gs));
  }
  return sum * (2.0 * std::numbers::pi / np);
}

// Revolution surface (rho(z) cos phi, rho(z) sin phi, z) with rho^2 = P;
// nu dS = (rho cos phi, rho sin phi, -P'(z)/2) dphi dz, z = z* sin(psi).
cplx revolution_surface(const ConvexBody& body, const Vec& omega, double r) {
  const RevolutionProfile& P = body.profile();
  const double zs = P.half_height();
  const Vec u = body.rotation().transpose() * omega;
  const double offset = body.center().dot(omega);
  const double R = body.bounding_radius();
  const int nz = std::max(96, static_cast<int>(std::ceil(2.0 * std::abs(r) * R + 64.0)));
  const int np = nz;
  const GaussRule& g = gauss_legendre(nz);
  cplx sum = 0.0;
  for (int i = 0; i < nz; ++i) {
    const double psi = 0.5 * std::numbers::pi * g.nodes[i];
    const double z = zs * std::sin(psi);
    const double dz = zs * std::cos(psi);
    const double rho = std::sqrt(std::max(P(z), 0.0));
    const double slope = 0.5 * P.derivative(z);
    cplx ring = 0.0;
    for (int j = 0; j < np; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / np;
      const double c = std::cos(phi);
      const double sn = std::sin(phi);
      const double flux = rho * (u[0] * c + u[1] * sn) - u[2] * slope;
      const double height = rho * (u[0] * c + u[1] * sn) + u[2] * z;
      ring += flux * cis(r * (offset + height));
    }
    sum += g.weights[i] * dz * ring;
  }
  return sum * (0.5 * std::numbers::pi) * (2.0 * std::numbers::pi / np);
}

}  // namespace

std::complex<double> fourier_chi(const ConvexBody& body, const Vec& omega, double r,
                                 FourierMethod method, const SectionOptions& opts) {
  require_unit(omega, body.dim());
  if (!std::isfinite(r)) throw InputError("frequency r must be finite");
  if (method == FourierMethod::slice) return slice_transform(body, omega, r, opts);

  if (r == 0.0) throw DomainError("boundary method is singular at r = 0");
  cplx flux;
  if (body.kind() == BodyKind::revolution) {
    flux = revolution_surface(body, omega, r);
  } else if (body.dim() == 3) {
    flux = gauge_surface_3(body, omega, r);
  } else if (body.dim() == 2) {
    flux = gauge_surface_2(body, omega, r);
  } else {
    throw InputError("boundary method is implemented for n = 2 and n = 3");
  }
  // div(e^{ir<omega,x>} omega) = ir e^{ir<omega,x>}.
  return flux * cplx(0.0, -1.0 / r);
}

}  // namespace polyint
