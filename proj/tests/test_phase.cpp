#include "oracles.hpp"

#include "polyint/errors.hpp"
#include "polyint/phase.hpp"

#include <doctest.h>

using namespace polyint;
using oracle::vec;
using std::numbers::pi;

namespace {

std::vector<ComplexRational> real_list(std::initializer_list<long> xs) {
  std::vector<ComplexRational> out;
  for (long x : xs) out.push_back({Rational(x), Rational(0)});
  return out;
}

std::vector<Rational> rationals(std::initializer_list<Rational> xs) { return xs; }

}  // namespace

TEST_CASE("unit ball expansion") {
  // V = pi (1 - t^2): q+_{m+1} = (-1)^m V^(m)(1), q-_{m+1} = -(-1)^m V^(m)(-1)
  const std::vector<Rational> a = rationals({1, 0, -1});
  const PhaseExpansion e = phase_expansion(a, Rational(-1), Rational(1), pi);
  CHECK(e.q_plus == real_list({0, 2, -2}));
  CHECK(e.q_minus == real_list({0, 2, 2}));
  CHECK(e.degree() == 2);
  for (double r : {pi, 2.0 * pi, 0.3, 11.0})
    CHECK(std::abs(eval_expansion(e, r) - oracle::ball_chi3(r)) <= 1e-12);
  CHECK(eval_expansion(e, pi).real() == doctest::Approx(4.0 / pi).epsilon(1e-12));
  CHECK(eval_expansion(e, 2.0 * pi).real() == doctest::Approx(-1.0 / pi).epsilon(1e-12));
  CHECK(std::abs(fourier_chi(ConvexBody::ball(3, 1.0), vec({0, 0, 1}), pi, FourierMethod::slice) -
                 eval_expansion(e, pi)) <= 1e-9);
}

TEST_CASE("the displayed unit ball expansion belongs to t^2") {
  // (1/ir - 2/(ir)^2 + 2/(ir)^3) e^{ir} + (-1/ir - 2/(ir)^2 - 2/(ir)^3) e^{-ir}
  const PhaseExpansion e = phase_expansion(rationals({0, 0, 1}), Rational(-1), Rational(1));
  CHECK(e.q_plus == real_list({1, -2, 2}));
  CHECK(e.q_minus == real_list({-1, -2, -2}));
}

TEST_CASE("constant and linear curves") {
  const PhaseExpansion c = phase_expansion(rationals({1}), Rational(0), Rational(1));
  CHECK(c.q_plus == real_list({1}));
  CHECK(c.q_minus == real_list({-1}));
  for (double r : {0.7, 3.0, 40.0}) {
    const std::complex<double> ir(0.0, r);
    CHECK(std::abs(eval_expansion(c, r) - (std::exp(ir) - 1.0) / ir) <= 1e-14);
  }
  const PhaseExpansion l = phase_expansion(rationals({0, 1}), Rational(-1), Rational(1));
  CHECK(l.q_plus == real_list({1, -1}));
  CHECK(l.q_minus == real_list({1, 1}));
  const std::complex<double> ref = oracle::fourier([](double t) { return t; }, -1, 1, 2.5);
  CHECK(std::abs(eval_expansion(l, 2.5) - ref) <= 1e-13);
}

TEST_CASE("expansion preconditions") {
  CHECK_THROWS_AS(phase_expansion(rationals({1}), Rational(1), Rational(1)), InputError);
  CHECK_THROWS_AS(phase_expansion(rationals({1}), Rational(2), Rational(1)), InputError);
  const PhaseExpansion c = phase_expansion(rationals({1}), Rational(0), Rational(1));
  CHECK_THROWS_AS(eval_expansion(c, 0.0), DomainError);
}

TEST_CASE("expansion equals high-precision quadrature") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 9);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Rational> a;
    for (int j = 0; j <= 4; ++j) a.emplace_back(num(rng), den(rng));
    const Rational lo(-num(rng) * num(rng) - 401, 400);
    const Rational hi(std::abs(num(rng)) + 1, 7);
    const PhaseExpansion e = phase_expansion(a, lo, hi);
    auto P = [&](long double t) {
      long double v = 0.0L;
      for (int j = 4; j >= 0; --j) v = v * t + static_cast<long double>(a[j]);
      return v;
    };
    for (double r : {0.5, 5.0, 50.0, 500.0}) {
      const std::complex<long double> ref =
          oracle::fourier_ld(P, static_cast<long double>(lo), static_cast<long double>(hi), r);
      const std::complex<double> got = eval_expansion(e, r);
      const double err = std::abs(std::complex<double>(got.real() - static_cast<double>(ref.real()),
                                                       got.imag() - static_cast<double>(ref.imag())));
      CHECK(err <= 1e-12 * static_cast<double>(std::abs(ref)));
    }
  }
}

TEST_CASE("leading coefficients are the endpoint values") {
  const std::vector<Rational> a = rationals({3, Rational(1, 2), -2, 1});
  const PhaseExpansion e = phase_expansion(a, Rational(-2), Rational(3, 2));
  auto P = [&](const Rational& t) { return a[0] + a[1] * t + a[2] * t * t + a[3] * t * t * t; };
  CHECK(e.q_plus.front().re == P(Rational(3, 2)));
  CHECK(e.q_minus.front().re == -P(Rational(-2)));
  // curves vanishing at the ends start one power deeper
  const PhaseExpansion b = phase_expansion(rationals({1, 0, -1}), Rational(-1), Rational(1));
  CHECK(b.q_plus.front() == ComplexRational{0, 0});
  CHECK(b.q_minus.front() == ComplexRational{0, 0});
}

TEST_CASE("inverse expansion round trip") {
  const PiecewisePolynomial ball = inverse_expansion(phase_expansion(rationals({1, 0, -1}), Rational(-1), Rational(1), pi));
  REQUIRE(ball.pieces.size() == 1);
  CHECK(ball.pieces[0].coeffs == rationals({1, 0, -1}));
  CHECK(ball.pieces[0].lo == -1);
  CHECK(ball.pieces[0].hi == 1);
  CHECK(ball.scale == pi);
  CHECK(ball(0.5) == doctest::Approx(0.75 * pi));
  CHECK(ball(1.5) == 0.0);

  const PiecewisePolynomial one = inverse_expansion(phase_expansion(rationals({1}), Rational(0), Rational(1)));
  CHECK(one.pieces[0].coeffs == rationals({1}));

  std::mt19937_64 rng(32);
  std::uniform_int_distribution<int> num(-50, 50);
  std::uniform_int_distribution<int> den(1, 30);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> a;
    for (int j = 0; j <= 4; ++j) a.emplace_back(num(rng), den(rng));
    if (a.back() == 0) a.back() = 1;
    const Rational lo(-std::abs(num(rng)) - 1, den(rng));
    const Rational hi(std::abs(num(rng)) + 1, den(rng));
    CHECK(inverse_expansion(phase_expansion(a, lo, hi)).pieces[0].coeffs == a);
  }
}

TEST_CASE("inconsistent coefficient lists have no preimage") {
  PhaseExpansion e = phase_expansion(rationals({1, 0, -1}), Rational(-1), Rational(1));
  e.q_minus[2].re += 1;
  try {
    inverse_expansion(e);
    FAIL("expected a rejection");
  } catch (const RejectionError& err) {
    CHECK(std::string(err.what()).find("not a finite-expansion transform") != std::string::npos);
  }
  PhaseExpansion f = phase_expansion(rationals({1, 2}), Rational(0), Rational(1));
  f.q_plus[0].im = 1;
  CHECK_THROWS_AS(inverse_expansion(f), RejectionError);
}

TEST_CASE("boundary integral identity for the ball") {
  // \oint e^{irz} z dS over the unit sphere = 2 pi \int_{-1}^{1} z e^{irz} dz
  const PhaseExpansion e = phase_expansion(rationals({1, 0, -1}), Rational(-1), Rational(1), pi);
  for (double r : {5.0, 20.0}) {
    const double boundary = std::abs(2.0 * pi * oracle::fourier([](double z) { return z; }, -1, 1, r));
    CHECK(r * std::abs(eval_expansion(e, r)) == doctest::Approx(boundary).epsilon(1e-10));
  }
}

TEST_CASE("finiteness of the expansion") {
  const std::vector<double> r = {0.5, 1, 2, 5, 10, 20, 50};
  const FinitenessReport ball = finiteness_check(ConvexBody::ball(3, 1.0), vec({0, 0, 1}), r, 6);
  CHECK(ball.verdict == Regime::finite);
  CHECK(ball.degree == 2);
  for (int d = 2; d <= 6; ++d) CHECK(ball.residual[d] < 1e-9);

  std::mt19937_64 rng(33);
  const ConvexBody e = ConvexBody::ellipsoid(vec({1, 2, 3}), vec({0.1, 0.2, 0.3}), random_rotation(3, rng));
  const FinitenessReport ell = finiteness_check(e, random_direction(3, rng), r, 6);
  CHECK(ell.verdict == Regime::finite);
  CHECK(ell.degree == 2);

  const FinitenessReport sup = finiteness_check(ConvexBody::superellipsoid(4.0, vec({1, 1, 1})), vec({0, 0, 1}), r, 8);
  CHECK(sup.verdict == Regime::non_finite);
  CHECK(sup.residual.back() > 1e-6);

  CHECK_THROWS_AS(finiteness_check(ConvexBody::ball(3, 1.0), vec({0, 0, 1}), std::vector<double>{1, 2, 5}, 4),
                  InputError);
}
