#include "polyint/phase.hpp"

#include "polyint/errors.hpp"
#include "polyint/numerics.hpp"

#include <fmt/format.h>

#include <cmath>

namespace polyint {

namespace {

Rational factorial_ratio(int j, int m) {  // j! / (j - m)!
  Rational out = 1;
  for (int i = j - m + 1; i <= j; ++i) out *= i;
  return out;
}

Rational power(const Rational& x, int k) {
  Rational out = 1;
  for (int i = 0; i < k; ++i) out *= x;
  return out;
}

long double to_ld(const Rational& x) { return x.convert_to<long double>(); }

// sum_{m=0}^{N} [(-1)^m P^(m)(h)] for each m, from the monomial coefficients.
std::vector<Rational> signed_derivatives(std::span<const Rational> a, const Rational& h) {
  const int N = static_cast<int>(a.size()) - 1;
  std::vector<Rational> out(N + 1, Rational(0));
  for (int j = 0; j <= N; ++j) {
    if (a[j] == 0) continue;
    for (int m = 0; m <= j; ++m) {
      Rational term = a[j] * factorial_ratio(j, m) * power(h, j - m);
      if (m % 2 == 1) term = -term;
      out[m] += term;
    }
  }
  return out;
}

}  // namespace

std::complex<long double> ComplexRational::value() const { return {to_ld(re), to_ld(im)}; }

Rational to_rational(double x) {
  if (!std::isfinite(x)) throw InputError("cannot convert a non-finite value to a rational");
  return Rational(x);
}

PhaseExpansion phase_expansion(std::span<const Rational> a, const Rational& h_minus,
                               const Rational& h_plus, double scale) {
  if (a.empty()) throw InputError("expansion needs at least one coefficient");
  if (!(h_minus < h_plus)) throw InputError("expansion needs h- < h+");
  PhaseExpansion e;
  e.h_minus = h_minus;
  e.h_plus = h_plus;
  e.scale = scale;
  for (const Rational& v : signed_derivatives(a, h_plus)) e.q_plus.push_back({v, 0});
  for (const Rational& v : signed_derivatives(a, h_minus)) e.q_minus.push_back({-v, 0});
  return e;
}

PhaseExpansion phase_expansion(std::span<const double> a, double h_minus, double h_plus,
                               double scale) {
  std::vector<Rational> exact;
  exact.reserve(a.size());
  for (double v : a) exact.push_back(to_rational(v));
  return phase_expansion(exact, to_rational(h_minus), to_rational(h_plus), scale);
}

std::complex<double> eval_expansion(const PhaseExpansion& e, double r) {
  if (r == 0.0) throw DomainError("expansion is in powers of 1/r; r = 0 is excluded");
  if (!std::isfinite(r)) throw InputError("frequency r must be finite");
  using cl = std::complex<long double>;
  const cl inv = cl(1.0L) / cl(0.0L, static_cast<long double>(r));
  auto series = [&](const std::vector<ComplexRational>& q) {
    cl sum = 0.0L;
    cl p = inv;
    for (const ComplexRational& c : q) {
      sum += c.value() * p;
      p *= inv;
    }
    return sum;
  };
  auto cis = [&](const Rational& h) {
    const long double phase = static_cast<long double>(r) * to_ld(h);
    return cl(std::cos(phase), std::sin(phase));
  };
  const cl total = (cis(e.h_plus) * series(e.q_plus) + cis(e.h_minus) * series(e.q_minus)) *
                   static_cast<long double>(e.scale);
  return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

double PiecewisePolynomial::operator()(double t) const {
  for (const Piece& p : pieces) {
    if (t < to_ld(p.lo) || t > to_ld(p.hi)) continue;
    long double s = 0.0L;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) s = s * t + to_ld(*it);
    return static_cast<double>(s * scale);
  }
  return 0.0;
}

PiecewisePolynomial inverse_expansion(const PhaseExpansion& e) {
  const auto reject = [](const std::string& why) {
    return RejectionError("not a finite-expansion transform: " + why);
  };
  if (e.q_plus.empty() || e.q_plus.size() != e.q_minus.size())
    throw reject("coefficient lists differ in length");
  if (!(e.h_minus < e.h_plus)) throw reject("h- >= h+");
  for (const auto* q : {&e.q_plus, &e.q_minus})
    for (const ComplexRational& c : *q)
      if (c.im != 0) throw reject("imaginary coefficient has no real polynomial preimage");

  // P^(m)(h+) = (-1)^m q+_{m+1}; Taylor at h+, then expand to monomials.
  const int N = static_cast<int>(e.q_plus.size()) - 1;
  std::vector<Rational> a(N + 1, Rational(0));
  Rational m_fact = 1;
  for (int m = 0; m <= N; ++m) {
    if (m > 0) m_fact *= m;
    Rational d = m % 2 == 0 ? e.q_plus[m].re : Rational(-e.q_plus[m].re);
    if (d == 0) continue;
    d /= m_fact;
    // (t - h)^m = sum_k C(m, k) t^k (-h)^{m-k}
    Rational binom = 1;
    for (int k = 0; k <= m; ++k) {
      a[k] += d * binom * power(Rational(-e.h_plus), m - k);
      binom = binom * (m - k) / (k + 1);
    }
  }
  const PhaseExpansion check = phase_expansion(a, e.h_minus, e.h_plus, e.scale);
  if (check.q_minus != e.q_minus) throw reject("q- is inconsistent with the polynomial fixed by q+");

  PiecewisePolynomial out;
  out.scale = e.scale;
  out.pieces.push_back({e.h_minus, e.h_plus, std::move(a)});
  return out;
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::finite: return "finite";
    case Regime::non_finite: return "non_finite";
    case Regime::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

FinitenessReport finiteness_check(const ConvexBody& body, const Vec& omega,
                                  std::span<const double> r, int n_max,
                                  const SectionOptions& opts) {
  if (r.empty()) throw InputError("r list is empty");
  double lo = r[0];
  double hi = r[0];
  for (double v : r) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError("r values must be positive and finite");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi / lo < 100.0 * (1.0 - 1e-12)) throw InputError("r list must span at least two decades");
  if (n_max < 0) throw InputError("N_max must be non-negative");

  constexpr double kFinite = 1e-8;
  constexpr double kNonFinite = 1e-6;
  FinitenessReport out;
  out.r.assign(r.begin(), r.end());
  const double vol = body.volume();
  for (double v : r) out.chi.push_back(fourier_chi(body, omega, v, FourierMethod::slice, opts));

  const SectionCurve curve = section_curve(body, omega, std::max(64, n_max + 16), opts);
  std::vector<double> last(r.size(), 0.0);
  for (int d = 0; d <= n_max; ++d) {
    const ChebSeries fit =
        chebyshev_least_squares(curve.h_minus, curve.h_plus, curve.nodes, curve.values, d);
    const PhaseExpansion e =
        phase_expansion(fit.monomial_coefficients(), curve.h_minus, curve.h_plus);
    double worst = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) {
      last[j] = std::abs(out.chi[j] - eval_expansion(e, r[j])) / vol;
      worst = std::max(worst, last[j]);
    }
    out.residual.push_back(worst);
  }
  for (int d = 0; d <= n_max; ++d) {
    bool stays = true;
    for (int e = d; e <= n_max && stays; ++e) stays = out.residual[e] <= kFinite;
    if (stays) {
      out.verdict = Regime::finite;
      out.degree = d;
      break;
    }
  }
  if (out.verdict != Regime::finite && out.residual[n_max] > kNonFinite)
    out.verdict = Regime::non_finite;

  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (last[j] <= 0.0) continue;
    lx.push_back(std::log(r[j]));
    ly.push_back(std::log(last[j]));
  }
  if (lx.size() >= 2 && lx.front() != lx.back()) out.decay_slope = linear_regression(lx, ly).first;
  return out;
}

}  // namespace polyint
