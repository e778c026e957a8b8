#include "polyint/poly_fit.hpp"

#include "polyint/errors.hpp"
#include "polyint/numerics.hpp"
#include "polyint/parallel.hpp"

#include <fmt/format.h>

#include <cmath>
#include <optional>

namespace polyint {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::polynomial: return "polynomial";
    case Verdict::non_polynomial: return "non_polynomial";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string_view to_string(FieldFlag f) {
  switch (f) {
    case FieldFlag::fitted: return "fitted";
    case FieldFlag::above_degree: return "above_degree";
    case FieldFlag::not_polynomial: return "not_polynomial";
  }
  return "not_polynomial";
}

PolyFit fit_polynomial(const SectionCurve& curve, int max_degree, double tol) {
  if (!(tol > 0.0)) throw InputError("fit tolerance must be positive");
  if (max_degree < 0) throw InputError("max_degree must be non-negative");
  const int m = static_cast<int>(curve.nodes.size());
  if (m < max_degree + 8)
    throw InputError(fmt::format("fit needs at least max_degree + 8 = {} nodes, curve has {}",
                                 max_degree + 8, m));
  const double vmax = curve.max_value();
  if (vmax == 0.0) throw DegenerateError("section curve is identically zero");

  PolyFit out;
  out.threshold = tol * vmax;
  std::vector<std::optional<ChebSeries>> fits(max_degree + 1);
  auto residual = [&](int d) {
    if (!fits[d]) {
      fits[d] = chebyshev_least_squares(curve.h_minus, curve.h_plus, curve.nodes, curve.values, d);
      double r = 0.0;
      for (int i = 0; i < m; ++i) r = std::max(r, std::abs((*fits[d])(curve.nodes[i]) - curve.values[i]));
      if (static_cast<int>(out.residuals.size()) <= d) out.residuals.resize(d + 1, -1.0);
      out.residuals[d] = r;
    }
    return out.residuals[d];
  };

  auto finish = [&](int d, Verdict v) {
    out.degree = d;
    out.series = *fits[d];
    out.residual = out.residuals[d];
    out.coefficients = out.series.monomial_coefficients();
    out.verdict = v;
    return out;
  };

  for (int d = 0; d <= max_degree; ++d) {
    if (residual(d) > out.threshold) continue;
    bool stays = true;
    for (int e = d + 1; e <= std::min(d + 2, max_degree) && stays; ++e)
      stays = residual(e) <= out.threshold;
    if (stays) return finish(d, Verdict::polynomial);
  }
  const double last = residual(max_degree);
  const bool clear = last > 10.0 * out.threshold && last > 10.0 * curve.max_error();
  return finish(max_degree, clear ? Verdict::non_polynomial : Verdict::inconclusive);
}

double endpoint_exponent(const SectionCurve& curve, End end) {
  const double width = curve.h_plus - curve.h_minus;
  const double delta = 1e-2 * width;
  std::vector<double> x;
  std::vector<double> y;
  double closest = width;
  for (std::size_t i = 0; i < curve.nodes.size(); ++i) {
    const double dist =
        end == End::plus ? curve.h_plus - curve.nodes[i] : curve.nodes[i] - curve.h_minus;
    if (dist > 0.0) closest = std::min(closest, dist);
    if (dist < delta / 100.0 || dist > delta) continue;
    if (!(curve.values[i] > 0.0))
      throw DegenerateError(fmt::format("V = {} is not positive at t = {} in the endpoint window",
                                        curve.values[i], curve.nodes[i]));
    x.push_back(std::log(dist));
    y.push_back(std::log(curve.values[i]));
  }
  if (closest > 1e-4 * width * (1.0 + 1e-9))
    throw InputError(fmt::format(
        "curve is not resolved near the endpoint: closest node at {:.3g} (h+ - h-), need <= 1e-4",
        closest / width));
  if (x.size() < 3) throw InputError("fewer than three nodes in the endpoint window");
  return linear_regression(x, y).first;
}

VanishingReport endpoint_vanishing(const PolyFit& fit, const SectionCurve& curve, int order,
                                   double tol) {
  VanishingReport r;
  r.order = order;
  const double width = curve.h_plus - curve.h_minus;
  const double vmax = curve.max_value();
  ChebSeries d = fit.series;
  for (int j = 0; j < order; ++j) {
    const double scale = std::pow(width, j) / vmax;
    r.worst = std::max({r.worst, std::abs(d(curve.h_minus)) * scale, std::abs(d(curve.h_plus)) * scale});
    d = d.derivative();
  }
  r.passed = r.worst <= tol;
  return r;
}

std::vector<PolyFit> fit_family(const ConvexBody& body, const SphereGrid& grid,
                                const FitParams& params, const SectionOptions& opts) {
  std::vector<PolyFit> fits(grid.size());
  const int max_degree = params.resolved_max_degree(body.dim());
  parallel_for(grid.size(), [&](std::size_t i) {
    const SectionCurve c = section_curve(body, grid.points[i], params.nodes, opts);
    fits[i] = fit_polynomial(c, max_degree, params.tol);
  });
  return fits;
}

CoefficientField coefficient_field(const ConvexBody& body, int k, const SphereGrid& grid,
                                   const FitParams& params, const SectionOptions& opts) {
  if (k < 0) throw InputError("coefficient index must be non-negative");
  const std::vector<PolyFit> fits = fit_family(body, grid, params, opts);
  CoefficientField field;
  field.k = k;
  field.dim = body.dim();
  field.omegas = grid.points;
  field.values.assign(grid.size(), 0.0);
  field.flags.assign(grid.size(), FieldFlag::fitted);
  for (std::size_t i = 0; i < fits.size(); ++i) {
    if (fits[i].verdict != Verdict::polynomial) {
      field.flags[i] = FieldFlag::not_polynomial;
      field.valid = false;
    } else if (k > fits[i].degree) {
      field.flags[i] = FieldFlag::above_degree;
    } else {
      field.values[i] = fits[i].coefficients[k];
    }
  }
  return field;
}

CoefficientField synthetic_field(int k, const SphereGrid& grid,
                                 const std::function<double(const Vec&)>& a) {
  CoefficientField field;
  field.k = k;
  field.dim = grid.dim;
  field.omegas = grid.points;
  for (const Vec& w : grid.points) field.values.push_back(a(w));
  field.flags.assign(grid.size(), FieldFlag::fitted);
  return field;
}

namespace {

std::vector<std::size_t> antipodes(const std::vector<Vec>& pts) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t guess = (i + n / 2) % n;
    if ((pts[guess] + pts[i]).norm() <= 1e-12) {
      idx[i] = guess;
      continue;
    }
    std::size_t j = 0;
    while (j < n && (pts[j] + pts[i]).norm() > 1e-12) ++j;
    if (j == n)
      throw InputError(fmt::format("direction {} has no antipode in the grid", i));
    idx[i] = j;
  }
  return idx;
}

}  // namespace

ParityReport parity_check(const CoefficientField& field, double tol) {
  const std::vector<std::size_t> anti = antipodes(field.omegas);
  ParityReport r;
  const double sign = field.k % 2 == 0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < anti.size(); ++i) {
    if (anti[i] < i) continue;
    ++r.pairs;
    r.max_deviation = std::max(r.max_deviation, std::abs(field.values[anti[i]] - sign * field.values[i]));
  }
  r.passed = r.max_deviation <= tol;
  return r;
}

SpherePolynomial SpherePolynomial::constant(int dim, double c) {
  SpherePolynomial p(dim);
  p.add(c, std::vector<int>(dim, 0));
  return p;
}

SpherePolynomial& SpherePolynomial::add(double coeff, std::vector<int> powers) {
  if (static_cast<int>(powers.size()) != dim_) throw InputError("monomial has wrong dimension");
  for (int e : powers)
    if (e < 0) throw InputError("monomial powers must be non-negative");
  terms_.push_back({coeff, std::move(powers)});
  return *this;
}

int SpherePolynomial::degree() const {
  int d = 0;
  for (const Term& t : terms_) {
    if (t.coeff == 0.0) continue;
    int s = 0;
    for (int e : t.powers) s += e;
    d = std::max(d, s);
  }
  return d;
}

double SpherePolynomial::operator()(const Vec& w) const {
  double sum = 0.0;
  for (const Term& t : terms_) {
    double v = t.coeff;
    for (int j = 0; j < dim_; ++j)
      for (int e = 0; e < t.powers[j]; ++e) v *= w[j];
    sum += v;
  }
  return sum;
}

double moment_orthogonality(const CoefficientField& field, const SpherePolynomial& p) {
  const int n = field.dim;
  if (p.dim() != n) throw InputError("polynomial dimension does not match the field");
  if (!(field.k > n - 1))
    throw InputError(fmt::format("hypothesis k > n - 1 fails: k = {}, n - 1 = {}", field.k, n - 1));
  if (!(p.degree() <= field.k - n + 1))
    throw InputError(fmt::format("hypothesis deg p <= k - n + 1 fails: deg p = {}, k - n + 1 = {}",
                                 p.degree(), field.k - n + 1));
  const std::vector<std::size_t> anti = antipodes(field.omegas);
  const double weight = sphere_area(n) / static_cast<double>(field.omegas.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < anti.size(); ++i) {
    const std::size_t j = anti[i];
    sum += 0.5 * (field.values[i] * p(field.omegas[i]) + field.values[j] * p(field.omegas[j]));
  }
  return weight * sum;
}

}  // namespace polyint
