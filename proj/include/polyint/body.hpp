#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string_view>
#include <vector>

namespace polyint {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class BodyKind { ball, ellipsoid, superellipsoid, revolution };

std::string_view to_string(BodyKind kind);

/// Center, orthonormal axis frame (columns are the body axes in world
/// coordinates) and semi-axes of an ellipsoid.
struct EllipsoidParams {
  Vec semi_axes;
  Vec center;
  Mat rotation;

  int dim() const { return static_cast<int>(semi_axes.size()); }
  /// h+(omega) = <center, omega> + sqrt(sum_j b_j^2 (R^T omega)_j^2).
  double support(const Vec& omega) const;
  /// Throws InputError unless all semi-axes are positive and the frame is orthonormal.
  void validate() const;
};

/// Even profile P(z) = b0 + b2 z^2 + ... + b2N z^2N of a body of revolution
/// x^2 + y^2 <= P(z). Stored as the even coefficients {b0, b2, ..., b2N}.
class RevolutionProfile {
 public:
  explicit RevolutionProfile(std::vector<double> even_coeffs);

  double operator()(double z) const;
  double derivative(double z) const;
  double second_derivative(double z) const;

  /// N: the profile has degree 2N.
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  double b0() const { return coeffs_.front(); }
  double leading() const { return coeffs_.back(); }
  const std::vector<double>& coeffs() const { return coeffs_; }

  /// First positive root of P; the body occupies |z| <= half_height().
  double half_height() const { return half_height_; }
  /// sqrt(P) concave on [-z*, z*], i.e. 2 P P'' - P'^2 <= 0 (sampled).
  bool convex() const { return convex_; }

 private:
  std::vector<double> coeffs_;
  double half_height_ = 0.0;
  bool convex_ = false;
};

/// Immutable description of a test body with its geometric oracles. World
/// coordinates relate to body-local ones by x = center + rotation * y.
class ConvexBody {
 public:
  static ConvexBody ball(int dim, double radius, Vec center = {});
  static ConvexBody ellipsoid(Vec semi_axes, Vec center = {}, Mat rotation = {});
  static ConvexBody ellipsoid(const EllipsoidParams& params);
  static ConvexBody superellipsoid(double exponent, Vec semi_axes, Vec center = {},
                                   Mat rotation = {});
  static ConvexBody revolution(RevolutionProfile profile, Vec center = {},
                               Mat rotation = {});

  BodyKind kind() const { return kind_; }
  int dim() const { return static_cast<int>(center_.size()); }
  const Vec& center() const { return center_; }
  const Mat& rotation() const { return rotation_; }

  double radius() const;            // ball
  const Vec& semi_axes() const;     // ellipsoid, superellipsoid
  double exponent() const;          // superellipsoid
  const RevolutionProfile& profile() const;  // revolution

  /// Ball or ellipsoid: section volumes have a closed form.
  bool has_closed_form_sections() const {
    return kind_ == BodyKind::ball || kind_ == BodyKind::ellipsoid;
  }
  std::optional<EllipsoidParams> as_ellipsoid() const;

  /// Level function of the convex kinds in local coordinates, positively
  /// homogeneous of degree one; the body is {gauge <= 1}. Revolution bodies
  /// have no gauge and throw InputError.
  double gauge(const Vec& local) const;
  /// Gradient of the gauge in local coordinates (homogeneous of degree zero).
  Vec gauge_gradient(const Vec& local) const;

  bool contains_local(const Vec& local) const;

  /// max |x - center| over the body.
  double bounding_radius() const;
  double volume() const;
  /// Convex by construction except revolution bodies, which report their flag.
  bool convex() const;

  Vec to_local(const Vec& x) const { return rotation_.transpose() * (x - center_); }
  Vec to_world(const Vec& y) const { return center_ + rotation_ * y; }

 private:
  ConvexBody() = default;
  void finish(Vec center, Mat rotation, int dim);

  BodyKind kind_ = BodyKind::ball;
  Vec center_;
  Mat rotation_;
  double radius_ = 0.0;
  Vec semi_axes_;
  double exponent_ = 2.0;
  std::optional<RevolutionProfile> profile_;
  double bounding_radius_ = 0.0;
};

struct SupportInterval {
  double lower = 0.0;
  double upper = 0.0;
};

struct SupportPoints {
  Vec lower;
  Vec upper;
};

/// Throws InputError unless |omega| = 1 within 1e-12 and the size is dim.
void require_unit(const Vec& omega, int dim);
bool is_orthonormal(const Mat& frame, double tol = 1e-12);

/// (h-, h+): the hyperplane <omega, x> = t meets the closed body iff t lies in
/// [h-, h+]. Closed forms for every kind except revolution, whose profile is
/// maximized numerically.
SupportInterval support(const ConvexBody& body, const Vec& omega);
/// Boundary points attaining h- and h+.
SupportPoints support_points(const ConvexBody& body, const Vec& omega);
/// Support from the membership oracle alone: radial bisection plus golden
/// section ascent over the boundary. Slow; used to cross-check closed forms.
SupportInterval numeric_support(const ConvexBody& body, const Vec& omega, double tol = 1e-10);

bool contains(const ConvexBody& body, const Vec& x);

/// The body {rotation * x + translation : x in body}.
ConvexBody transform(const ConvexBody& body, const Vec& translation, const Mat& rotation);
/// The body {s x : x in body}, s > 0.
ConvexBody dilate(const ConvexBody& body, double s);

}  // namespace polyint
