#include "polyint/sphere.hpp"

#include "polyint/errors.hpp"
#include "polyint/numerics.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <array>
#include <cmath>
#include <numbers>

namespace polyint {

namespace {

double radical_inverse(std::size_t index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

constexpr std::array<int, 12> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

double unit_ball_volume(int k) {
  return std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

double sphere_area(int dim) { return dim * unit_ball_volume(dim); }

SphereGrid sphere_grid(int dim, std::size_t count) {
  if (dim < 2) throw InputError("sphere grid needs dimension >= 2");
  if (count < 2) throw InputError("sphere grid needs at least two points");
  const std::size_t half = (count + 1) / 2;
  SphereGrid grid;
  grid.dim = dim;
  grid.points.reserve(2 * half);

  if (dim == 2) {
    const std::size_t total = 2 * half;
    for (std::size_t i = 0; i < total; ++i) {
      const double a = 2.0 * std::numbers::pi * (i + 0.5) / static_cast<double>(total);
      Vec p(2);
      p << std::cos(a), std::sin(a);
      grid.points.push_back(p);
    }
  } else if (dim == 3) {
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    const double total = 2.0 * static_cast<double>(half);
    for (std::size_t i = 0; i < half; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / total;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = 2.0 * std::numbers::pi * std::fmod(i / golden, 1.0);
      Vec p(3);
      p << rho * std::cos(phi), rho * std::sin(phi), z;
      grid.points.push_back(p);
    }
    for (std::size_t i = 0; i < half; ++i) grid.points.push_back(-grid.points[i]);
  } else {
    if (dim > static_cast<int>(kPrimes.size())) throw InputError("sphere grid supports dim <= 12");
    for (std::size_t i = 0; i < half; ++i) {
      Vec p(dim);
      for (int j = 0; j < dim; ++j) {
        const double u = radical_inverse(i + 1, kPrimes[j]);
        p[j] = std::numbers::sqrt2 * boost::math::erf_inv(2.0 * u - 1.0);
      }
      grid.points.push_back(p.normalized());
    }
    for (std::size_t i = 0; i < half; ++i) grid.points.push_back(-grid.points[i]);
  }
  grid.weight = sphere_area(dim) / static_cast<double>(grid.points.size());
  return grid;
}

Vec random_direction(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vec v(dim);
  do {
    for (int j = 0; j < dim; ++j) v[j] = normal(rng);
  } while (v.norm() < 1e-8);
  return v.normalized();
}

Mat random_rotation(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Mat g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return q;
}

Mat orthonormal_complement(const Vec& omega) {
  const int n = static_cast<int>(omega.size());
  Mat a(n, n);
  a.col(0) = omega.normalized();
  // Complete with the identity columns least aligned with omega.
  std::vector<int> order(n);
  for (int j = 0; j < n; ++j) order[j] = j;
  std::sort(order.begin(), order.end(),
            [&](int l, int r) { return std::abs(omega[l]) < std::abs(omega[r]); });
  for (int j = 1; j < n; ++j) a.col(j) = Vec::Unit(n, order[j - 1]);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  return q.rightCols(n - 1);
}

Vec sphere_ascent(const std::function<double(const Vec&)>& f, Vec start, double tol,
                  int max_sweeps) {
  Vec s = start.normalized();
  double fs = f(s);
  double delta = 0.5;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const Mat tangent = orthonormal_complement(s);
    double max_step = 0.0;
    const double before = fs;
    for (Eigen::Index k = 0; k < tangent.cols(); ++k) {
      const Vec e = tangent.col(k);
      const Vec base = s;
      auto along = [&](double th) { return f(std::cos(th) * base + std::sin(th) * e); };
      const double th = golden_section_max(along, -delta, delta, 1e-3 * tol);
      const double v = along(th);
      if (v > fs) {
        s = (std::cos(th) * base + std::sin(th) * e).normalized();
        fs = v;
        max_step = std::max(max_step, std::abs(th));
      }
    }
    delta = std::clamp(4.0 * max_step, 1e-7, 0.5);
    if (fs - before <= tol * std::max(std::abs(fs), 1.0) && max_step < 1e-6) break;
  }
  return s;
}

}  // namespace polyint
