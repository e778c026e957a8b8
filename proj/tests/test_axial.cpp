#include "oracles.hpp"

#include "polyint/axial.hpp"
#include "polyint/errors.hpp"

#include <doctest.h>

using namespace polyint;
using oracle::vec;
using std::numbers::pi;

namespace {

// \int\int_{u^2 - b v^{2N} <= 1} du dv for the leading coefficient b < 0
double limit_oracle(double b, int N) {
  const double vmax = std::pow(-1.0 / b, 0.5 / N);
  return oracle::integrate([&](double v) { return 2.0 * std::sqrt(std::max(0.0, 1.0 + b * std::pow(v, 2 * N))); },
                           -vmax, vmax);
}

}  // namespace

TEST_CASE("omega areas") {
  CHECK(omega_area(RevolutionProfile({1, -1}), 2.0) == doctest::Approx(4.0 * pi).epsilon(1e-10));
  const double ref = oracle::integrate([](double z) { return 2.0 * std::sqrt(1.0 - z * z * z * z); }, -1, 1);
  CHECK(ref == doctest::Approx(3.49608).epsilon(1e-6));
  CHECK(omega_area(RevolutionProfile({1, 0, -1}), 1.0) == doctest::Approx(ref).epsilon(1e-8));
  const RevolutionProfile p({2, -0.7});
  for (double s : {0.5, 3.0, 40.0})
    CHECK(omega_area(p, s * 1.3) == doctest::Approx(s * s * omega_area(p, 1.3)).epsilon(1e-8));
  CHECK_THROWS_AS(omega_area(p, 0.0), InputError);
}

TEST_CASE("growth exponents are 1 + 1/N") {
  CHECK(std::abs(growth_exponent(RevolutionProfile({1, -1}), 1, 1e3, 31).exponent - 2.0) <= 0.03);
  CHECK(std::abs(growth_exponent(RevolutionProfile({1, 0.5, -1}), 1, 1e3, 31).exponent - 1.5) <= 0.03);
  CHECK(std::abs(growth_exponent(RevolutionProfile({1, 0, 0, -2}), 1, 1e3, 31).exponent - 4.0 / 3.0) <= 0.03);
  CHECK_THROWS_AS(growth_exponent(RevolutionProfile({1, -1}), 1, 100, 31), InputError);
}

TEST_CASE("area ratio approaches the limit constant") {
  for (auto [coeffs, N] : {std::pair{std::vector<double>{1, 0, -1}, 2}, std::pair{std::vector<double>{1, 0.3, 0, -0.5}, 3}}) {
    const RevolutionProfile p(coeffs);
    const double lead = coeffs.back();
    const double c = limit_oracle(lead, N);
    CHECK(limit_constant_oracle(p) == doctest::Approx(c).epsilon(1e-8));
    const double e = 1.0 + 1.0 / N;
    const double top = omega_area(p, 1e3) / std::pow(1e3, e);
    const double lower = omega_area(p, 1e2) / std::pow(1e2, e);
    CHECK(top == doctest::Approx(c).epsilon(1e-3));
    CHECK(std::abs(top - lower) < std::abs(lower - c) + 1e-12);
  }
}

TEST_CASE("axial slice identity") {
  const RevolutionProfile p({1.2, 0.3, -0.9});
  const ConvexBody body = ConvexBody::revolution(p);
  for (int i = 0; i < 20; ++i) {
    const double t = -0.98 * p.half_height() + 1.96 * p.half_height() * i / 19.0;
    CHECK(section_volume(body, vec({0, 0, 1}), t) == doctest::Approx(pi * p(t)).epsilon(1e-8));
  }
}

TEST_CASE("transverse sections are members of the omega family") {
  const RevolutionProfile p({1.0, 0.0, -1.0});
  const ConvexBody body = ConvexBody::revolution(p);
  for (double t : {0.0, 0.3, -0.6, 0.9})
    CHECK(section_volume(body, vec({0, 1, 0}), t) == doctest::Approx(omega_area(p, std::sqrt(1.0 - t * t))).epsilon(1e-6));
}

TEST_CASE("axial verdicts") {
  const AxialReport ball = axial_verdict(ConvexBody::revolution(RevolutionProfile({1, -1})));
  CHECK(ball.consistent);
  CHECK(ball.n_fit == 1);
  REQUIRE(ball.ellipsoid.has_value());
  for (int j = 0; j < 3; ++j) CHECK(ball.ellipsoid->semi_axes[j] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(ball.axis_identity_error < 1e-8);

  const AxialReport quartic = axial_verdict(ConvexBody::revolution(RevolutionProfile({1, 0, -1})));
  CHECK_FALSE(quartic.consistent);
  CHECK(std::abs(quartic.exponent - 1.5) <= 0.03);
  CHECK(quartic.n_fit == 2);
  CHECK_FALSE(quartic.ellipsoid.has_value());
  CHECK(quartic.transverse_fit.verdict != Verdict::polynomial);

  const AxialReport stretched = axial_verdict(ConvexBody::revolution(RevolutionProfile({1, -0.5})));
  CHECK(stretched.consistent);
  REQUIRE(stretched.ellipsoid.has_value());
  Vec axes = stretched.ellipsoid->semi_axes;
  std::sort(axes.data(), axes.data() + 3);
  CHECK(axes[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(axes[1] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(axes[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));

  CHECK_THROWS_AS(axial_verdict(ConvexBody::ball(3, 1.0)), InputError);
}
