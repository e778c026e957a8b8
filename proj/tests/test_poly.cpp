#include "oracles.hpp"

#include "polyint/errors.hpp"
#include "polyint/poly_fit.hpp"
#include "polyint/sphere.hpp"

#include <doctest.h>

using namespace polyint;
using oracle::vec;
using std::numbers::pi;

TEST_CASE("ball curve is the quadratic pi (1 - t^2)") {
  const SectionCurve c = section_curve(ConvexBody::ball(3, 1.0), vec({0, 0, 1}), 64);
  const PolyFit f = fit_polynomial(c, 12, 1e-7);
  CHECK(f.verdict == Verdict::polynomial);
  CHECK(f.degree == 2);
  CHECK(f.residual < 1e-10);
  REQUIRE(f.coefficients.size() == 3);
  CHECK(f.coefficients[0] == doctest::Approx(pi).epsilon(1e-12));
  CHECK(std::abs(f.coefficients[1]) < 1e-12);
  CHECK(f.coefficients[2] == doctest::Approx(-pi).epsilon(1e-12));
}

TEST_CASE("disk curve is not a polynomial") {
  const SectionCurve c = section_curve(ConvexBody::ball(2, 1.0), vec({0.6, 0.8}), 64);
  CHECK(fit_polynomial(c, 10, 1e-7).verdict == Verdict::non_polynomial);
}

TEST_CASE("ellipsoid coefficients match the closed-form expansion") {
  const Vec b = vec({1, 2, 3});
  const ConvexBody e = ConvexBody::ellipsoid(b);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 8; ++i) {
    const Vec w = random_direction(3, rng);
    const PolyFit f = fit_polynomial(section_curve(e, w, 64), 12, 1e-7);
    REQUIRE(f.verdict == Verdict::polynomial);
    REQUIRE(f.degree == 2);
    const double h = b.cwiseProduct(w).norm();
    const double k = pi * b.prod();
    CHECK(std::abs(f.coefficients[0] - k / h) <= 1e-9);
    CHECK(std::abs(f.coefficients[1]) <= 1e-9);
    CHECK(std::abs(f.coefficients[2] + k / (h * h * h)) <= 1e-9);
  }
}

TEST_CASE("fit preconditions") {
  const SectionCurve c = section_curve(ConvexBody::ball(3, 1.0), vec({0, 0, 1}), 16);
  CHECK_THROWS_AS(fit_polynomial(c, 12, 1e-7), InputError);
  CHECK_THROWS_AS(fit_polynomial(c, 4, 0.0), InputError);
  CHECK_NOTHROW(fit_polynomial(c, 8, 1e-7));
}

TEST_CASE("quadrature curves are not overclaimed") {
  // A tolerance below the quadrature error cannot certify either way.
  const ConvexBody s = ConvexBody::superellipsoid(2.0, vec({1, 1.5, 2}));
  const SectionCurve c = section_curve(s, vec({0.6, 0, 0.8}), 64);
  REQUIRE(c.source == CurveSource::quadrature);
  const PolyFit loose = fit_polynomial(c, 12, 1e-7);
  CHECK(loose.verdict == Verdict::polynomial);
  CHECK(loose.degree == 2);
  CHECK(fit_polynomial(c, 12, 1e-15).verdict != Verdict::non_polynomial);
}

TEST_CASE("endpoint exponents are (n - 1) / 2") {
  const ConvexBody b3 = ConvexBody::ball(3, 1.0);
  const SectionCurve c3 = section_curve(b3, vec({0, 0, 1}), 256);
  CHECK(endpoint_exponent(c3, End::plus) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(endpoint_exponent(c3, End::minus) == doctest::Approx(1.0).epsilon(0.02));
  const SectionCurve c2 = section_curve(ConvexBody::ball(2, 1.0), vec({0, 1}), 256);
  CHECK(std::abs(endpoint_exponent(c2, End::plus) - 0.5) <= 0.05);
  const SectionCurve c4 = section_curve(ConvexBody::ball(4, 1.0), vec({0, 0, 0, 1}), 256);
  CHECK(std::abs(endpoint_exponent(c4, End::minus) - 1.5) <= 0.05);
  const SectionCurve c5 = section_curve(ConvexBody::ball(5, 1.0), vec({0, 0, 0, 0, 1}), 256);
  CHECK(std::abs(endpoint_exponent(c5, End::plus) - 2.0) <= 0.05);
  // Superellipsoid p = 4 along a flat axis point: not an elliptic point.
  const SectionCurve cs = section_curve(ConvexBody::superellipsoid(4.0, vec({1, 1, 1})), vec({0, 0, 1}), 256);
  CHECK(std::abs(endpoint_exponent(cs, End::plus) - 1.0) > 0.1);
}

TEST_CASE("endpoint exponent needs resolved endpoints") {
  const SectionCurve coarse = section_curve(ConvexBody::ball(3, 1.0), vec({0, 0, 1}), 16);
  CHECK_THROWS_AS(endpoint_exponent(coarse, End::plus), InputError);
}

TEST_CASE("polynomial verdicts vanish at both support values") {
  std::mt19937_64 rng(13);
  const ConvexBody e = ConvexBody::ellipsoid(vec({0.7, 1.1, 2.4}), vec({0.3, -0.2, 0.1}), random_rotation(3, rng));
  for (int i = 0; i < 5; ++i) {
    const SectionCurve c = section_curve(e, random_direction(3, rng), 64);
    const PolyFit f = fit_polynomial(c, 12, 1e-7);
    REQUIRE(f.verdict == Verdict::polynomial);
    CHECK(f.degree >= 2);
    const VanishingReport v = endpoint_vanishing(f, c, 1);
    CHECK(v.passed);
    CHECK(v.worst <= 1e-6);
  }
}

TEST_CASE("coefficient fields") {
  const SphereGrid g = sphere_grid(3, 64);
  const FitParams p{32, -1, 1e-7};
  const CoefficientField odd = coefficient_field(ConvexBody::ellipsoid(vec({1, 2, 3})), 1, g, p);
  CHECK(odd.valid);
  for (double a : odd.values) CHECK(std::abs(a) <= 1e-9);

  const CoefficientField a0 = coefficient_field(ConvexBody::ball(3, 1.0), 0, g, p);
  for (double a : a0.values) CHECK(a == doctest::Approx(pi).epsilon(1e-10));

  // V = c (h^2 - (t - <x0, w>)^2): a1 = 2 c <x0, w>
  const Vec x0 = vec({0.4, -0.2, 0.3});
  const Vec b = vec({1, 2, 3});
  const CoefficientField moved = coefficient_field(ConvexBody::ellipsoid(b, x0), 1, g, p);
  double biggest = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec& w = g.points[i];
    const double h = b.cwiseProduct(w).norm();
    const double expected = 2.0 * pi * b.prod() / (h * h * h) * x0.dot(w);
    CHECK(std::abs(moved.values[i] - expected) <= 1e-9);
    biggest = std::max(biggest, std::abs(moved.values[i]));
  }
  CHECK(biggest > 0.1);

  const CoefficientField high = coefficient_field(ConvexBody::ellipsoid(b), 3, g, p);
  CHECK(high.valid);
  for (FieldFlag f : high.flags) CHECK(f == FieldFlag::above_degree);

  const CoefficientField bad = coefficient_field(ConvexBody::superellipsoid(4.0, b), 0, sphere_grid(3, 8), p);
  CHECK_FALSE(bad.valid);
  CHECK(std::count(bad.flags.begin(), bad.flags.end(), FieldFlag::not_polynomial) > 0);
}

TEST_CASE("parity of coefficient fields") {
  const SphereGrid g = sphere_grid(3, 128);
  const FitParams p{32, -1, 1e-7};
  CHECK(parity_check(coefficient_field(ConvexBody::ball(3, 1.0), 0, g, p)).max_deviation == 0.0);
  std::mt19937_64 rng(14);
  const ConvexBody e = ConvexBody::ellipsoid(vec({1, 2, 3}), vec({0.2, 0.1, -0.3}), random_rotation(3, rng));
  for (int k = 0; k <= 2; ++k) {
    const ParityReport r = parity_check(coefficient_field(e, k, g, p));
    CHECK(r.max_deviation <= 1e-9);
    CHECK(r.passed);
    CHECK(r.pairs == g.size() / 2);
  }
  CHECK(parity_check(synthetic_field(1, g, [](const Vec& w) { return w[0]; })).max_deviation == 0.0);
  // an even field labelled odd must fail
  CHECK_FALSE(parity_check(synthetic_field(1, g, [](const Vec& w) { return w[0] * w[0]; })).passed);

  CoefficientField broken = synthetic_field(0, g, [](const Vec&) { return 1.0; });
  broken.omegas.pop_back();
  broken.values.pop_back();
  broken.flags.pop_back();
  CHECK_THROWS_AS(parity_check(broken), InputError);
}

TEST_CASE("moment orthogonality") {
  const SphereGrid g = sphere_grid(3, 4096);
  const CoefficientField a3 = synthetic_field(3, g, [](const Vec& w) { return w[0] * w[1] * w[2]; });
  CHECK(std::abs(moment_orthogonality(a3, SpherePolynomial::constant(3, 1.0))) <= 1e-5);

  // Re (x + iy)^4 is harmonic of degree 4.
  const CoefficientField a4 = synthetic_field(4, g, [](const Vec& w) {
    const double x = w[0], y = w[1];
    return x * x * x * x - 6.0 * x * x * y * y + y * y * y * y;
  });
  SpherePolynomial x1(3);
  x1.add(1.0, {1, 0, 0});
  CHECK(std::abs(moment_orthogonality(a4, x1)) <= 1e-5);
  // Even integrands of degree 6 are where the equal-weight grid is weakest.
  SpherePolynomial x1sq(3);
  x1sq.add(1.0, {2, 0, 0});
  CHECK(std::abs(moment_orthogonality(a4, x1sq)) <= 1e-3);

  // Not orthogonal: \int w1^2 dA = 4 pi / 3.
  const CoefficientField sq = synthetic_field(4, g, [](const Vec& w) { return w[0] * w[0]; });
  CHECK(moment_orthogonality(sq, SpherePolynomial::constant(3, 1.0)) == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-3));

  const CoefficientField ell = coefficient_field(ConvexBody::ellipsoid(vec({1, 2, 3})), 3, sphere_grid(3, 256), {32, -1, 1e-7});
  CHECK(moment_orthogonality(ell, SpherePolynomial::constant(3, 1.0)) == 0.0);
  CHECK(moment_orthogonality(ell, x1) == 0.0);
}

TEST_CASE("moment orthogonality rejects the Lemma's excluded cases") {
  const SphereGrid g = sphere_grid(3, 64);
  const CoefficientField a2 = synthetic_field(2, g, [](const Vec&) { return 1.0; });
  try {
    moment_orthogonality(a2, SpherePolynomial::constant(3, 1.0));
    FAIL("expected an input error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("k > n - 1") != std::string::npos);
  }
  const CoefficientField a3 = synthetic_field(3, g, [](const Vec&) { return 1.0; });
  SpherePolynomial x1(3);
  x1.add(1.0, {1, 0, 0});
  CHECK_NOTHROW(moment_orthogonality(a3, x1));
  SpherePolynomial x1x2(3);
  x1x2.add(1.0, {1, 1, 0});
  try {
    moment_orthogonality(a3, x1x2);
    FAIL("expected an input error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("deg p <= k - n + 1") != std::string::npos);
  }
}

TEST_CASE("verdicts are deterministic") {
  const ConvexBody s = ConvexBody::superellipsoid(3.0, vec({1, 1.2, 0.8}));
  const SphereGrid g = sphere_grid(3, 16);
  const std::vector<PolyFit> a = fit_family(s, g, {32, -1, 1e-7});
  const std::vector<PolyFit> b = fit_family(s, g, {32, -1, 1e-7});
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].verdict == b[i].verdict);
    CHECK(a[i].coefficients == b[i].coefficients);
  }
}
