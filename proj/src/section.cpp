#include "polyint/section.hpp"

#include "polyint/errors.hpp"
#include "polyint/numerics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

namespace polyint {

namespace {

// Point of the section plane inside the body: the chord between the two
// support points crosses the plane at an interior point.
Vec section_anchor(const ConvexBody& body, const Vec& omega, const SupportInterval& s, double t) {
  const SupportPoints p = support_points(body, omega);
  const double lam = (t - s.lower) / (s.upper - s.lower);
  Vec c = p.lower + lam * (p.upper - p.lower);
  c += (t - omega.dot(c)) * omega;
  return c;
}

// Distance from local point y along local unit direction d to the boundary.
double ray_to_boundary(const ConvexBody& body, const Vec& y, const Vec& d, double limit) {
  auto f = [&](double rho) { return body.gauge(y + rho * d) - 1.0; };
  if (f(0.0) >= 0.0) return 0.0;
  double hi = limit;
  while (f(hi) < 0.0) hi *= 2.0;
  return bracketed_root(f, 0.0, hi);
}

// Area of the planar convex region {yc + a e1 + b e2} ∩ body (local
// coordinates, e1 and e2 orthonormal) by polar ray casting from yc, which
// must be interior. Richardson-extrapolated shoelace sums over `rays` rays.
SectionValue polar_area(const ConvexBody& body, Vec yc, const Vec& e1, const Vec& e2, int rays) {
  const double limit = 2.0 * body.bounding_radius();
  auto radii = [&](const Vec& centre, int count) {
    std::vector<double> rho(count);
    for (int i = 0; i < count; ++i) {
      const double th = 2.0 * std::numbers::pi * i / count;
      rho[i] = ray_to_boundary(body, centre, std::cos(th) * e1 + std::sin(th) * e2, limit);
    }
    return rho;
  };

  // Move the ray origin to the centroid of a coarse polygon; eccentric
  // origins cost accuracy in the polar sums.
  {
    constexpr int kCoarse = 64;
    const std::vector<double> rho = radii(yc, kCoarse);
    double area2 = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    for (int i = 0; i < kCoarse; ++i) {
      const double a = 2.0 * std::numbers::pi * i / kCoarse;
      const double b = 2.0 * std::numbers::pi * (i + 1) / kCoarse;
      const double x0 = rho[i] * std::cos(a);
      const double y0 = rho[i] * std::sin(a);
      const double x1 = rho[(i + 1) % kCoarse] * std::cos(b);
      const double y1 = rho[(i + 1) % kCoarse] * std::sin(b);
      const double cross = x0 * y1 - x1 * y0;
      area2 += cross;
      cx += (x0 + x1) * cross;
      cy += (y0 + y1) * cross;
    }
    if (area2 > 0.0) {
      const Vec shifted = yc + (cx / (3.0 * area2)) * e1 + (cy / (3.0 * area2)) * e2;
      if (body.gauge(shifted) < 1.0) yc = shifted;
    }
  }

  const int n = std::max(16, rays - rays % 4);
  const std::vector<double> rho = radii(yc, n);
  auto shoelace = [&](int stride) {
    const int count = n / stride;
    double sum = 0.0;
    for (int i = 0; i < count; ++i) sum += rho[i * stride] * rho[((i + 1) % count) * stride];
    return 0.5 * std::sin(2.0 * std::numbers::pi / count) * sum;
  };
  const double a1 = shoelace(1);
  const double a2 = shoelace(2);
  const double a4 = shoelace(4);
  const double extrapolated = (4.0 * a1 - a2) / 3.0;
  const double previous = (4.0 * a2 - a4) / 3.0;
  return {extrapolated, std::abs(extrapolated - previous)};
}

SectionValue area_by_rays(const ConvexBody& body, const Vec& omega, const SupportInterval& s,
                          double t, int rays) {
  const Mat E = orthonormal_complement(omega);
  const Mat Rt = body.rotation().transpose();
  return polar_area(body, body.to_local(section_anchor(body, omega, s, t)), Rt * E.col(0),
                    Rt * E.col(1), rays);
}

SectionValue chord_length(const ConvexBody& body, const Vec& omega, const SupportInterval& s,
                          double t) {
  const Mat E = orthonormal_complement(omega);
  const Vec e = body.rotation().transpose() * E.col(0);
  const Vec yc = body.to_local(section_anchor(body, omega, s, t));
  const double limit = 2.0 * body.bounding_radius();
  const double len = ray_to_boundary(body, yc, e, limit) + ray_to_boundary(body, yc, -e, limit);
  return {len, 4.0 * std::numeric_limits<double>::epsilon() * len};
}

SectionValue revolution_area(const ConvexBody& body, const Vec& omega, double t) {
  const RevolutionProfile& P = body.profile();
  const double zs = P.half_height();
  const Vec u = body.rotation().transpose() * omega;
  const double tau = t - body.center().dot(omega);
  const double u_perp = std::hypot(u[0], u[1]);
  if (u_perp < 1e-14) {
    const double z = tau / u[2];
    if (std::abs(z) >= zs) return {0.0, 0.0};
    return {std::numbers::pi * P(z), 0.0};
  }
  // In-plane coordinates: p along the steepest z direction, q horizontal.
  // z(p) = tau u_z + p |u_perp| and the chord in q is 2 sqrt(F(p)).
  auto F = [&](double p) {
    const double z = tau * u[2] + p * u_perp;
    if (std::abs(z) > zs) return -1.0;
    return P(z) + z * z - tau * tau - p * p;
  };
  const double R = body.bounding_radius();
  const double lo = std::max((-zs - tau * u[2]) / u_perp, -R);
  const double hi = std::min((zs - tau * u[2]) / u_perp, R);
  double err = 0.0;
  const double area = chord_integral(F, lo, hi, 256, 1e-12, &err);
  return {area, err};
}

// Minimum of the gauge over the plane {p + a e1 + b e2} (nested golden
// sections) and where it is attained.
struct SliceCentre {
  Vec point;
  double gauge = 0.0;
};

SliceCentre slice_centre(const ConvexBody& body, const Vec& p, const Vec& e1, const Vec& e2, double half) {
  double b_best = 0.0;
  auto inner = [&](double a) {
    const Vec q = p + a * e1;
    const double b = golden_section_max([&](double b) { return -body.gauge(q + b * e2); }, -half,
                                        half, 1e-7 * half);
    b_best = b;
    return -body.gauge(q + b * e2);
  };
  const double a = golden_section_max(inner, -half, half, 1e-7 * half);
  const double g = -inner(a);
  return {p + a * e1 + b_best * e2, g};
}

SectionValue slice_area(const ConvexBody& body, const Vec& p, const Vec& e1, const Vec& e2,
                        double half, int rays) {
  const SliceCentre c = slice_centre(body, p, e1, e2, half);
  if (c.gauge >= 1.0) return {0.0, 0.0};
  return polar_area(body, c.point, e1, e2, rays);
}

// n >= 4: the section is swept by 2D slices indexed by its first k = n - 3
// in-plane coordinates s. Over the convex projection of the section onto
// s-space, polar coordinates around an interior point s0 give
//   vol = \int_{S^{k-1}} \int_0^{R(theta)} A(s0 + rho theta) rho^{k-1} drho dtheta,
// with A the exact slice area (ray casting). Gauss-Legendre in rho; for the
// directions, the two signs (k = 1), a trapezoid rule (k = 2) or a randomly
// rotated sphere grid (k >= 3, seeded). The error estimate compares with
// the rule at half resolution.
SectionValue volume_by_slices(const ConvexBody& body, const Vec& omega, const SupportInterval& sup,
                              double t, const SectionOptions& opts) {
  const int n = body.dim();
  const int k = n - 3;
  const double d = t - body.center().dot(omega);
  const double R = body.bounding_radius();
  if (std::abs(d) >= R) return {0.0, 0.0};
  const double half = std::sqrt(R * R - d * d);
  const Mat E = body.rotation().transpose() * orthonormal_complement(omega);
  const Vec base = body.rotation().transpose() * (d * omega);
  const Mat S = E.leftCols(k);
  constexpr int kSliceRays = 128;

  const Vec anchor = body.to_local(section_anchor(body, omega, sup, t));
  const Vec s0 = S.transpose() * (anchor - base);
  auto point = [&](const Vec& s) -> Vec { return base + S * s; };
  auto min_gauge = [&](const Vec& s) {
    return slice_centre(body, point(s), E.col(k), E.col(k + 1), half).gauge;
  };

  std::vector<Vec> dirs;
  std::vector<double> weights;
  const int count = std::max(opts.directions, 4);
  if (k == 1) {
    dirs = {Vec::Constant(1, 1.0), Vec::Constant(1, -1.0)};
    weights = {1.0, 1.0};
  } else if (k == 2) {
    const int m = 2 * (count / 2);
    for (int i = 0; i < m; ++i) {
      const double th = 2.0 * std::numbers::pi * i / m;
      Vec u(2);
      u << std::cos(th), std::sin(th);
      dirs.push_back(u);
      weights.push_back(2.0 * std::numbers::pi / m);
    }
  } else {
    std::seed_seq seq{static_cast<std::uint64_t>(opts.seed), std::bit_cast<std::uint64_t>(t),
                      std::bit_cast<std::uint64_t>(omega[0]),
                      std::bit_cast<std::uint64_t>(omega[n - 1])};
    std::mt19937_64 rng(seq);
    const Mat Q = random_rotation(k, rng);
    const SphereGrid g = sphere_grid(k, static_cast<std::size_t>(count));
    for (const Vec& u : g.points) {
      dirs.push_back(Q * u);
      weights.push_back(g.weight);
    }
  }

  auto radial = [&](const Vec& u, double rmax, int nodes, double& ray_error) {
    const GaussRule& gl = gauss_legendre(nodes);
    double sum = 0.0;
    for (int i = 0; i < nodes; ++i) {
      const double rho = 0.5 * rmax * (gl.nodes[i] + 1.0);
      const SectionValue a = slice_area(body, point(s0 + rho * u), E.col(k), E.col(k + 1), half, kSliceRays);
      const double w = 0.5 * rmax * gl.weights[i] * std::pow(rho, k - 1);
      sum += w * a.value;
      ray_error += w * a.est_error;
    }
    return sum;
  };

  const int nodes = std::max(opts.radial_nodes, 4);
  double fine = 0.0;
  double coarse = 0.0;
  double ray_error = 0.0;
  double unused = 0.0;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const Vec& u = dirs[i];
    double hi = 2.0 * half;
    while (min_gauge(s0 + hi * u) < 1.0) hi *= 2.0;
    const double rmax = bracketed_root([&](double rho) { return min_gauge(s0 + rho * u) - 1.0; }, 0.0, hi);
    fine += weights[i] * radial(u, rmax, nodes, ray_error);
    // Half resolution: every other direction (k = 2), half the radial nodes.
    if (k == 2 && i % 2 == 1) continue;
    const double w = k == 2 ? 2.0 * weights[i] : weights[i];
    coarse += w * radial(u, rmax, nodes / 2, unused);
  }
  return {fine, std::abs(fine - coarse) + ray_error};
}

}  // namespace

double ellipsoid_closed_form(const EllipsoidParams& e, const Vec& omega, double t) {
  const int n = e.dim();
  require_unit(omega, n);
  const Vec u = e.rotation.transpose() * omega;
  const double h = e.semi_axes.cwiseProduct(u).norm();
  if (!(std::abs(t) < h)) return 0.0;
  const double kappa = unit_ball_volume(n - 1);
  return kappa * e.semi_axes.prod() / std::pow(h, n) * std::pow((h - t) * (h + t), 0.5 * (n - 1));
}

SectionValue section_volume_with_error(const ConvexBody& body, const Vec& omega, double t,
                                       const SectionOptions& opts) {
  const SupportInterval s = support(body, omega);
  if (!std::isfinite(t)) throw InputError("section offset must be finite");
  if (!(t > s.lower && t < s.upper)) return {0.0, 0.0};
  const int n = body.dim();
  if (opts.method == SectionMethod::automatic && body.has_closed_form_sections()) {
    const EllipsoidParams e = *body.as_ellipsoid();
    return {ellipsoid_closed_form(e, omega, t - e.center.dot(omega)), 0.0};
  }
  if (body.kind() == BodyKind::revolution) return revolution_area(body, omega, t);
  if (n == 2) return chord_length(body, omega, s, t);
  if (n == 3) return area_by_rays(body, omega, s, t, opts.rays);
  return volume_by_slices(body, omega, s, t, opts);
}

double section_volume(const ConvexBody& body, const Vec& omega, double t,
                      const SectionOptions& opts) {
  return section_volume_with_error(body, omega, t, opts).value;
}

std::string_view to_string(CurveSource source) {
  return source == CurveSource::closed_form ? "closed_form" : "quadrature";
}

double SectionCurve::max_value() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double SectionCurve::max_error() const {
  double m = 0.0;
  for (double e : est_error) m = std::max(m, e);
  return m;
}

ChebSeries SectionCurve::interpolant() const {
  return chebyshev_interpolant(h_minus, h_plus, values);
}

SectionCurve section_curve(const ConvexBody& body, const Vec& omega, int m,
                           const SectionOptions& opts) {
  if (m < 8) throw InputError("section curves need at least 8 nodes");
  const SupportInterval s = support(body, omega);
  SectionCurve curve;
  curve.omega = omega;
  curve.h_minus = s.lower;
  curve.h_plus = s.upper;
  curve.nodes = lobatto_nodes(s.lower, s.upper, m);
  curve.values.assign(m, 0.0);
  curve.est_error.assign(m, 0.0);
  curve.source = opts.method == SectionMethod::automatic && body.has_closed_form_sections()
                     ? CurveSource::closed_form
                     : CurveSource::quadrature;
  for (int i = 1; i + 1 < m; ++i) {
    const SectionValue v = section_volume_with_error(body, omega, curve.nodes[i], opts);
    curve.values[i] = v.value;
    curve.est_error[i] = v.est_error;
  }
  return curve;
}

}  // namespace polyint
