#pragma once

#include "polyint/body.hpp"

#include <cstddef>
#include <functional>
#include <random>
#include <vector>

namespace polyint {

/// Equal-weight direction grid on S^{n-1} that is closed under antipodes:
/// point i + size/2 is -point i.
struct SphereGrid {
  int dim = 3;
  std::vector<Vec> points;
  double weight = 0.0;  // |S^{n-1}| / size

  std::size_t size() const { return points.size(); }
  std::size_t antipode(std::size_t i) const { return (i + size() / 2) % size(); }
};

/// n = 2: uniform angles. n = 3: Fibonacci spiral on the upper hemisphere
/// mirrored through the origin. n >= 4: Halton points pushed through the
/// normal quantile and normalized, mirrored. `count` is rounded up to even.
SphereGrid sphere_grid(int dim, std::size_t count);

/// Surface area of S^{n-1}.
double sphere_area(int dim);
/// Volume of the unit k-ball.
double unit_ball_volume(int k);

Vec random_direction(int dim, std::mt19937_64& rng);
/// Haar-distributed rotation (determinant +1).
Mat random_rotation(int dim, std::mt19937_64& rng);
/// Orthonormal basis of omega's complement as the columns of an n x (n-1) matrix.
Mat orthonormal_complement(const Vec& omega);

/// Maximizes f over the unit sphere from `start` by cyclic golden-section
/// searches along great circles through the current point. Returns the
/// maximizer.
Vec sphere_ascent(const std::function<double(const Vec&)>& f, Vec start, double tol = 1e-11,
                  int max_sweeps = 400);

}  // namespace polyint
