#include "polyint/errors.hpp"
#include "polyint/numerics.hpp"
#include "polyint/parallel.hpp"
#include "polyint/section.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

namespace polyint {

SectionFamily sample_family(const ConvexBody& body, const SphereGrid& grid, int m,
                            const SectionOptions& opts) {
  if (grid.dim != body.dim()) throw InputError("grid dimension does not match the body");
  SectionFamily family{body, grid, m, {}, {}, opts};
  family.curves.resize(grid.size());
  family.second_derivative.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    family.curves[i] = section_curve(body, grid.points[i], m, opts);
    family.second_derivative[i] = family.curves[i].interpolant().derivative().derivative();
  });
  return family;
}

BackProjection back_project(const SectionFamily& family, const Vec& x) {
  const ConvexBody& body = family.body;
  if (body.dim() != 3) throw InputError("back-projection is implemented for n = 3 only");
  if (x.size() != 3 || !x.allFinite()) throw InputError("point must be a finite vector in R^3");
  const SphereGrid& grid = family.grid;

  double interior = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const SectionCurve& c = family.curves[i];
    const double t = grid.points[i].dot(x);
    if (t > c.h_minus && t < c.h_plus) interior += family.second_derivative[i](t);
  }
  interior *= grid.weight;

  // Delta term from the jump of dV/dt at h+. On the curve g = 0 with
  // g(omega) = <omega, x> - h+(omega), integrate -p'(h+) / |grad g| in polar
  // coordinates around the maximizer of g. The h- jump gives the same
  // amount by the evenness of V.
  auto g = [&](const Vec& w) { return w.dot(x) - support(body, w).upper; };
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = grid.points[i].dot(x) - family.curves[i].h_plus;
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const Vec pole = sphere_ascent(g, grid.points[best]);
  double boundary = 0.0;
  if (g(pole) > 0.0) {
    const Mat F = orthonormal_complement(pole);
    constexpr int kAngles = 256;
    const int m = std::max(family.nodes, 8);
    for (int j = 0; j < kAngles; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / kAngles;
      const Vec e = std::cos(phi) * F.col(0) + std::sin(phi) * F.col(1);
      auto along = [&](double th) { return g(std::cos(th) * pole + std::sin(th) * e); };
      const double th = bracketed_root(along, 0.0, std::numbers::pi);
      const Vec w = std::cos(th) * pole + std::sin(th) * e;
      const Vec dw = -std::sin(th) * pole + std::cos(th) * e;
      const double slope = std::abs(dw.dot(x - support_points(body, w).upper));
      const SectionCurve curve = section_curve(body, w, m, family.options);
      const double dv = curve.interpolant().derivative()(curve.h_plus);
      boundary += -dv * std::sin(th) / slope;
    }
    boundary *= 2.0 * (2.0 * std::numbers::pi / kAngles);
  }

  BackProjection out;
  out.interior_term = kInversionConstant3 * interior;
  out.boundary_term = kInversionConstant3 * boundary;
  out.value = out.interior_term + out.boundary_term;
  std::vector<std::string> notes;
  if (grid.size() < 1024) notes.push_back(fmt::format("grid of {} directions is coarse", grid.size()));
  if (family.nodes < 12) notes.push_back(fmt::format("{} nodes per curve", family.nodes));
  double err = 0.0;
  for (const SectionCurve& c : family.curves) err = std::max(err, c.max_error() / std::max(c.max_value(), 1e-300));
  if (err > 1e-4) notes.push_back(fmt::format("relative section error up to {:.2e}", err));
  out.accuracy_warning = !notes.empty();
  for (std::size_t i = 0; i < notes.size(); ++i) out.note += (i ? "; " : "") + notes[i];
  return out;
}

}  // namespace polyint
