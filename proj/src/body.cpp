#include "polyint/body.hpp"

#include "polyint/errors.hpp"
#include "polyint/numerics.hpp"
#include "polyint/sphere.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace polyint {

namespace {

double abs_pow(double x, double p) {
  x = std::abs(x);
  if (p == 2.0) return x * x;
  if (p == 4.0) {
    const double x2 = x * x;
    return x2 * x2;
  }
  if (p == 6.0) {
    const double x2 = x * x;
    return x2 * x2 * x2;
  }
  return std::pow(x, p);
}

// max_j |v_j| * (sum_j (|v_j| / max)^q)^(1/q), q = infinity allowed.
double q_norm(const Vec& v, double q) {
  const double m = v.cwiseAbs().maxCoeff();
  if (m == 0.0 || std::isinf(q)) return m;
  double s = 0.0;
  for (Eigen::Index j = 0; j < v.size(); ++j) s += abs_pow(v[j] / m, q);
  return m * std::pow(s, 1.0 / q);
}

Vec default_center(Vec center, int dim) {
  if (center.size() == 0) return Vec::Zero(dim);
  if (center.size() != dim)
    throw InputError(fmt::format("center has {} entries, expected {}", center.size(), dim));
  if (!center.allFinite()) throw InputError("center must be finite");
  return center;
}

Mat default_rotation(Mat rotation, int dim) {
  if (rotation.size() == 0) return Mat::Identity(dim, dim);
  if (rotation.rows() != dim || rotation.cols() != dim)
    throw InputError(fmt::format("rotation must be {0}x{0}", dim));
  if (!is_orthonormal(rotation)) throw InputError("rotation is not orthonormal (R^T R != I)");
  return rotation;
}

void require_positive_axes(const Vec& axes) {
  if (axes.size() < 2) throw InputError("dimension must be at least 2");
  for (Eigen::Index j = 0; j < axes.size(); ++j)
    if (!(axes[j] > 0.0) || !std::isfinite(axes[j]))
      throw InputError(fmt::format("semi-axis {} must be positive and finite", j));
}

// Local support data of a revolution body: maximizer z of
// |u_perp| sqrt(P(z)) + u_z z over [-z*, z*].
double revolution_argmax(const RevolutionProfile& P, double u_perp, double u_z) {
  const double zs = P.half_height();
  auto f = [&](double z) { return u_perp * std::sqrt(std::max(P(z), 0.0)) + u_z * z; };
  constexpr int kSamples = 512;
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kSamples; ++i) {
    const double z = -zs + 2.0 * zs * i / kSamples;
    const double v = f(z);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double lo = -zs + 2.0 * zs * std::max(best - 1, 0) / kSamples;
  const double hi = -zs + 2.0 * zs * std::min(best + 1, kSamples) / kSamples;
  const double z = golden_section_max(f, lo, hi, 1e-13 * std::max(zs, 1.0));
  const double z_grid = -zs + 2.0 * zs * best / kSamples;
  return f(z) >= best_value ? z : z_grid;
}

Vec revolution_point(const RevolutionProfile& P, const Vec& u, double z) {
  Vec y = Vec::Zero(3);
  const double u_perp = std::hypot(u[0], u[1]);
  const double rho = std::sqrt(std::max(P(z), 0.0));
  if (u_perp > 0.0) {
    y[0] = rho * u[0] / u_perp;
    y[1] = rho * u[1] / u_perp;
  }
  y[2] = z;
  return y;
}

// Local maximizer of <u, y> over the body.
Vec local_argmax(const ConvexBody& body, const Vec& u) {
  switch (body.kind()) {
    case BodyKind::ball:
      return body.radius() * u;
    case BodyKind::ellipsoid: {
      const Vec& b = body.semi_axes();
      const Vec b2u = b.cwiseProduct(b).cwiseProduct(u);
      return b2u / std::sqrt(u.dot(b2u));
    }
    case BodyKind::superellipsoid: {
      const Vec& b = body.semi_axes();
      const double p = body.exponent();
      const Vec v = b.cwiseProduct(u);
      Vec z = Vec::Zero(v.size());
      if (p == 1.0) {
        Eigen::Index k = 0;
        v.cwiseAbs().maxCoeff(&k);
        z[k] = v[k] >= 0.0 ? 1.0 : -1.0;
      } else {
        const double q = p / (p - 1.0);
        const double norm = q_norm(v, q);
        for (Eigen::Index j = 0; j < v.size(); ++j)
          z[j] = std::copysign(std::pow(std::abs(v[j]) / norm, q - 1.0), v[j]);
      }
      return b.cwiseProduct(z);
    }
    case BodyKind::revolution: {
      const double u_perp = std::hypot(u[0], u[1]);
      const double z = revolution_argmax(body.profile(), u_perp, u[2]);
      return revolution_point(body.profile(), u, z);
    }
  }
  return {};
}

double local_support(const ConvexBody& body, const Vec& u) {
  switch (body.kind()) {
    case BodyKind::ball:
      return body.radius();
    case BodyKind::ellipsoid:
      return body.semi_axes().cwiseProduct(u).norm();
    case BodyKind::superellipsoid: {
      const double p = body.exponent();
      const double q = p == 1.0 ? std::numeric_limits<double>::infinity() : p / (p - 1.0);
      return q_norm(body.semi_axes().cwiseProduct(u), q);
    }
    case BodyKind::revolution:
      return u.dot(local_argmax(body, u));
  }
  return 0.0;
}

}  // namespace

std::string_view to_string(BodyKind kind) {
  switch (kind) {
    case BodyKind::ball: return "ball";
    case BodyKind::ellipsoid: return "ellipsoid";
    case BodyKind::superellipsoid: return "superellipsoid";
    case BodyKind::revolution: return "revolution";
  }
  return "unknown";
}

double EllipsoidParams::support(const Vec& omega) const {
  const Vec u = rotation.transpose() * omega;
  return center.dot(omega) + semi_axes.cwiseProduct(u).norm();
}

void EllipsoidParams::validate() const {
  require_positive_axes(semi_axes);
  if (center.size() != semi_axes.size()) throw InputError("ellipsoid center has wrong dimension");
  if (rotation.rows() != semi_axes.size() || rotation.cols() != semi_axes.size() ||
      !is_orthonormal(rotation))
    throw InputError("ellipsoid rotation is not an orthonormal frame");
}

// ---------------------------------------------------------------------------
// RevolutionProfile

RevolutionProfile::RevolutionProfile(std::vector<double> even_coeffs)
    : coeffs_(std::move(even_coeffs)) {
  if (coeffs_.size() < 2) throw InputError("revolution profile needs b0 and at least b2 (N >= 1)");
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw InputError("revolution profile coefficients must be finite");
  if (!(b0() > 0.0)) throw InputError("revolution profile requires b0 > 0");
  if (!(leading() < 0.0)) throw InputError("revolution profile requires b2N < 0 (bounded body)");

  // P as a polynomial in w = z^2 has Q(0) > 0 and a negative leading term.
  double bound = 1.0;
  for (double c : coeffs_) bound = std::max(bound, 1.0 + std::abs(c / leading()));
  auto Q = [&](double w) {
    double s = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) s = s * w + *it;
    return s;
  };
  constexpr int kScan = 8192;
  double lo = 0.0;
  double hi = bound;
  for (int i = 1; i <= kScan; ++i) {
    const double w = bound * i / kScan;
    if (Q(w) <= 0.0) {
      hi = w;
      lo = bound * (i - 1) / kScan;
      break;
    }
  }
  half_height_ = std::sqrt(bracketed_root(Q, lo, hi));

  convex_ = true;
  constexpr int kCheck = 2000;
  double scale = 0.0;
  for (int i = 1; i < kCheck; ++i) {
    const double z = -half_height_ + 2.0 * half_height_ * i / kCheck;
    scale = std::max(scale, std::abs(derivative(z) * derivative(z)));
  }
  for (int i = 1; i < kCheck; ++i) {
    const double z = -half_height_ + 2.0 * half_height_ * i / kCheck;
    const double d1 = derivative(z);
    if (2.0 * (*this)(z) * second_derivative(z) - d1 * d1 > 1e-12 * std::max(scale, 1.0)) {
      convex_ = false;
      break;
    }
  }
}

double RevolutionProfile::operator()(double z) const {
  const double w = z * z;
  double s = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) s = s * w + *it;
  return s;
}

double RevolutionProfile::derivative(double z) const {
  double s = 0.0;
  for (std::size_t k = coeffs_.size() - 1; k >= 1; --k) {
    s = s * z * z + 2.0 * k * coeffs_[k];
  }
  return s * z;
}

double RevolutionProfile::second_derivative(double z) const {
  double s = 0.0;
  for (std::size_t k = coeffs_.size() - 1; k >= 1; --k) {
    s = s * z * z + 2.0 * k * (2.0 * k - 1.0) * coeffs_[k];
  }
  return s;
}

// ---------------------------------------------------------------------------
// ConvexBody

void ConvexBody::finish(Vec center, Mat rotation, int dim) {
  if (dim < 2) throw InputError("dimension must be at least 2");
  center_ = default_center(std::move(center), dim);
  rotation_ = default_rotation(std::move(rotation), dim);
  switch (kind_) {
    case BodyKind::ball:
      bounding_radius_ = radius_;
      break;
    case BodyKind::ellipsoid:
      bounding_radius_ = semi_axes_.maxCoeff();
      break;
    case BodyKind::superellipsoid:
      bounding_radius_ = semi_axes_.norm();
      break;
    case BodyKind::revolution: {
      const double zs = profile_->half_height();
      double r2 = 0.0;
      for (int i = 0; i <= 4096; ++i) {
        const double z = -zs + 2.0 * zs * i / 4096;
        r2 = std::max(r2, std::max((*profile_)(z), 0.0) + z * z);
      }
      bounding_radius_ = 1.01 * std::sqrt(r2);
      break;
    }
  }
}

ConvexBody ConvexBody::ball(int dim, double radius, Vec center) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InputError("ball radius must be positive");
  ConvexBody b;
  b.kind_ = BodyKind::ball;
  b.radius_ = radius;
  b.finish(std::move(center), {}, dim);
  return b;
}

ConvexBody ConvexBody::ellipsoid(Vec semi_axes, Vec center, Mat rotation) {
  require_positive_axes(semi_axes);
  ConvexBody b;
  b.kind_ = BodyKind::ellipsoid;
  const int dim = static_cast<int>(semi_axes.size());
  b.semi_axes_ = std::move(semi_axes);
  b.finish(std::move(center), std::move(rotation), dim);
  return b;
}

ConvexBody ConvexBody::ellipsoid(const EllipsoidParams& params) {
  return ellipsoid(params.semi_axes, params.center, params.rotation);
}

ConvexBody ConvexBody::superellipsoid(double exponent, Vec semi_axes, Vec center, Mat rotation) {
  if (!(exponent >= 1.0) || !std::isfinite(exponent))
    throw InputError("superellipsoid exponent must satisfy p >= 1");
  require_positive_axes(semi_axes);
  ConvexBody b;
  b.kind_ = BodyKind::superellipsoid;
  b.exponent_ = exponent;
  const int dim = static_cast<int>(semi_axes.size());
  b.semi_axes_ = std::move(semi_axes);
  b.finish(std::move(center), std::move(rotation), dim);
  return b;
}

ConvexBody ConvexBody::revolution(RevolutionProfile profile, Vec center, Mat rotation) {
  ConvexBody b;
  b.kind_ = BodyKind::revolution;
  b.profile_ = std::move(profile);
  b.finish(std::move(center), std::move(rotation), 3);
  return b;
}

double ConvexBody::radius() const {
  if (kind_ != BodyKind::ball) throw InputError("radius() is only defined for balls");
  return radius_;
}

const Vec& ConvexBody::semi_axes() const {
  if (kind_ != BodyKind::ellipsoid && kind_ != BodyKind::superellipsoid)
    throw InputError("semi_axes() is only defined for ellipsoids and superellipsoids");
  return semi_axes_;
}

double ConvexBody::exponent() const {
  if (kind_ != BodyKind::superellipsoid)
    throw InputError("exponent() is only defined for superellipsoids");
  return exponent_;
}

const RevolutionProfile& ConvexBody::profile() const {
  if (kind_ != BodyKind::revolution) throw InputError("profile() is only defined for revolution bodies");
  return *profile_;
}

std::optional<EllipsoidParams> ConvexBody::as_ellipsoid() const {
  if (kind_ == BodyKind::ball)
    return EllipsoidParams{Vec::Constant(dim(), radius_), center_, rotation_};
  if (kind_ == BodyKind::ellipsoid) return EllipsoidParams{semi_axes_, center_, rotation_};
  return std::nullopt;
}

double ConvexBody::gauge(const Vec& y) const {
  switch (kind_) {
    case BodyKind::ball:
      return y.norm() / radius_;
    case BodyKind::ellipsoid:
      return y.cwiseQuotient(semi_axes_).norm();
    case BodyKind::superellipsoid: {
      const Vec z = y.cwiseQuotient(semi_axes_);
      const double m = z.cwiseAbs().maxCoeff();
      if (m == 0.0) return 0.0;
      double s = 0.0;
      for (Eigen::Index j = 0; j < z.size(); ++j) s += abs_pow(z[j] / m, exponent_);
      return m * std::pow(s, 1.0 / exponent_);
    }
    case BodyKind::revolution:
      break;
  }
  throw InputError("revolution bodies have no gauge function");
}

Vec ConvexBody::gauge_gradient(const Vec& y) const {
  switch (kind_) {
    case BodyKind::ball:
      return y / (y.norm() * radius_);
    case BodyKind::ellipsoid: {
      const Vec z = y.cwiseQuotient(semi_axes_);
      return z.cwiseQuotient(semi_axes_) / z.norm();
    }
    case BodyKind::superellipsoid: {
      const double g = gauge(y);
      const double p = exponent_;
      Vec grad(y.size());
      for (Eigen::Index j = 0; j < y.size(); ++j) {
        const double z = y[j] / (semi_axes_[j] * g);
        grad[j] = std::copysign(abs_pow(z, p - 1.0), z) / semi_axes_[j];
      }
      return grad;
    }
    case BodyKind::revolution:
      break;
  }
  throw InputError("revolution bodies have no gauge function");
}

bool ConvexBody::contains_local(const Vec& y) const {
  if (kind_ == BodyKind::revolution) {
    const double z = y[2];
    if (std::abs(z) > profile_->half_height()) return false;
    return y[0] * y[0] + y[1] * y[1] <= (*profile_)(z);
  }
  return gauge(y) <= 1.0 + 1e-15;
}

double ConvexBody::bounding_radius() const { return bounding_radius_; }

double ConvexBody::volume() const {
  const int n = dim();
  switch (kind_) {
    case BodyKind::ball:
      return unit_ball_volume(n) * std::pow(radius_, n);
    case BodyKind::ellipsoid:
      return unit_ball_volume(n) * semi_axes_.prod();
    case BodyKind::superellipsoid: {
      const double p = exponent_;
      return std::pow(2.0, n) * semi_axes_.prod() * std::pow(std::tgamma(1.0 + 1.0 / p), n) /
             std::tgamma(1.0 + n / p);
    }
    case BodyKind::revolution: {
      const double zs = profile_->half_height();
      double s = 0.0;
      const auto& b = profile_->coeffs();
      for (std::size_t k = 0; k < b.size(); ++k)
        s += b[k] * std::pow(zs, 2.0 * k + 1.0) / (2.0 * k + 1.0);
      return 2.0 * std::numbers::pi * s;
    }
  }
  return 0.0;
}

bool ConvexBody::convex() const {
  return kind_ != BodyKind::revolution || profile_->convex();
}

// ---------------------------------------------------------------------------
// Oracles

void require_unit(const Vec& omega, int dim) {
  if (omega.size() != dim)
    throw InputError(fmt::format("direction has {} components, expected {}", omega.size(), dim));
  if (!omega.allFinite() || std::abs(omega.norm() - 1.0) > 1e-12)
    throw InputError(fmt::format("direction is not a unit vector (|omega| = {:.17g})", omega.norm()));
}

bool is_orthonormal(const Mat& frame, double tol) {
  if (frame.rows() != frame.cols()) return false;
  return ((frame.transpose() * frame) - Mat::Identity(frame.rows(), frame.cols()))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

SupportInterval support(const ConvexBody& body, const Vec& omega) {
  require_unit(omega, body.dim());
  const Vec u = body.rotation().transpose() * omega;
  const double offset = body.center().dot(omega);
  const double upper = local_support(body, u);
  // Every supported kind except revolution is centrally symmetric; revolution
  // profiles are even, so the same holds.
  return {offset - upper, offset + upper};
}

SupportPoints support_points(const ConvexBody& body, const Vec& omega) {
  require_unit(omega, body.dim());
  const Vec u = body.rotation().transpose() * omega;
  const Vec y = local_argmax(body, u);
  return {body.to_world(-y), body.to_world(y)};
}

SupportInterval numeric_support(const ConvexBody& body, const Vec& omega, double tol) {
  require_unit(omega, body.dim());
  const int n = body.dim();
  const double R = 2.0 * body.bounding_radius();
  auto radial = [&](const Vec& s) {
    double lo = 0.0;
    double hi = R;
    while (hi - lo > 1e-16 * R) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      (body.contains_local(mid * s) ? lo : hi) = mid;
    }
    return lo;
  };
  auto one_side = [&](const Vec& u) {
    auto f = [&](const Vec& s) { return radial(s) * s.dot(u); };
    const SphereGrid seeds = sphere_grid(n, 256);
    Vec best = seeds.points.front();
    double best_value = f(best);
    for (const Vec& s : seeds.points) {
      const double v = f(s);
      if (v > best_value) {
        best_value = v;
        best = s;
      }
    }
    const Vec s = sphere_ascent(f, best, tol);
    return f(s);
  };
  const Vec u = body.rotation().transpose() * omega;
  const double offset = body.center().dot(omega);
  return {offset - one_side(-u), offset + one_side(u)};
}

bool contains(const ConvexBody& body, const Vec& x) {
  if (x.size() != body.dim()) throw InputError("point has wrong dimension");
  return body.contains_local(body.to_local(x));
}

ConvexBody transform(const ConvexBody& body, const Vec& translation, const Mat& rotation) {
  const int n = body.dim();
  if (translation.size() != n) throw InputError("translation has wrong dimension");
  if (rotation.rows() != n || rotation.cols() != n || !is_orthonormal(rotation))
    throw InputError("transform frame is not orthonormal");
  const Vec center = rotation * body.center() + translation;
  const Mat frame = rotation * body.rotation();
  switch (body.kind()) {
    case BodyKind::ball:
      return ConvexBody::ball(n, body.radius(), center);
    case BodyKind::ellipsoid:
      return ConvexBody::ellipsoid(body.semi_axes(), center, frame);
    case BodyKind::superellipsoid:
      return ConvexBody::superellipsoid(body.exponent(), body.semi_axes(), center, frame);
    case BodyKind::revolution:
      return ConvexBody::revolution(body.profile(), center, frame);
  }
  return body;
}

ConvexBody dilate(const ConvexBody& body, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw InputError("dilation factor must be positive");
  const int n = body.dim();
  const Vec center = s * body.center();
  switch (body.kind()) {
    case BodyKind::ball:
      return ConvexBody::ball(n, s * body.radius(), center);
    case BodyKind::ellipsoid:
      return ConvexBody::ellipsoid(s * body.semi_axes(), center, body.rotation());
    case BodyKind::superellipsoid:
      return ConvexBody::superellipsoid(body.exponent(), s * body.semi_axes(), center,
                                        body.rotation());
    case BodyKind::revolution: {
      // x'^2 + y'^2 <= s^2 P(z' / s)
      std::vector<double> b = body.profile().coeffs();
      for (std::size_t k = 0; k < b.size(); ++k) b[k] *= std::pow(s, 2.0 - 2.0 * k);
      return ConvexBody::revolution(RevolutionProfile(std::move(b)), center, body.rotation());
    }
  }
  return body;
}

}  // namespace polyint
