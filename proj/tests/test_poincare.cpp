#include <doctest.h>

#include <cmath>

#include "modasym/errors.hpp"
#include "modasym/faber.hpp"
#include "modasym/poincare.hpp"
#include "modasym/specfun.hpp"

using namespace modasym;
using namespace modasym::poincare;

namespace {

const PrecisionContext kCtx{256, 1e-12};

PoincareOptions loose(double y_min = 0.5, long r_max = -1, long c_max = 500) {
  PoincareOptions o;
  o.y_min = y_min;
  o.r_max = r_max;
  o.c_max = c_max;
  o.enforce_tail = false;
  return o;
}

double rel(const LogSigned& a, const LogSigned& b) { return std::fabs(ratio(a, b) - 1.0); }

Real fact(long n) { return factorial(n, 320); }

// f_{2-k,m}(iy) from the exact q-expansion.
Real faber_at(long k, long m, double y) {
  const auto fe = faber::faber_form(faber::weight_data(k), m, 80);
  return qseries::eval_deriv_at_iy(fe.series, y, 0, PrecisionContext{320, 1e-30}).value.to_real(320);
}

}  // namespace

TEST_CASE("principal and constant terms have the expected shape") {
  const auto terms = build_terms(6, 2, loose(), kCtx);
  bool saw_holo = false, saw_const = false;
  for (const auto& t : terms) {
    if (t.kind == TermKind::principal_holo) {
      saw_holo = true;
      CHECK(t.freq == -2);
      REQUIRE(t.poly.size() == 1);
      CHECK((abs(t.poly[0] - fact(5)) / fact(5)).to_double() < 1e-70);
      CHECK((abs(t.rate - pi(320) * 4L) / t.rate).to_double() < 1e-70);
    }
    if (t.kind == TermKind::constant) {
      saw_const = true;
      CHECK(t.poly.size() == 1);
      CHECK(t.rate.is_zero());
    }
    if (t.kind == TermKind::positive) CHECK(t.poly.size() == 1);
  }
  CHECK(saw_holo);
  CHECK(saw_const);
}

TEST_CASE("c = 1 summand is the bare Bessel value") {
  for (long n : {1L, 3L}) {
    const auto s = c_sum(6, 2, n, 1, 256);
    const Real x = pi(256) * 4L * sqrt(Real(2L * n, 256));
    const Real I = specfun::bessel(specfun::BesselKind::I, 5, x, kCtx);
    CHECK((abs(s.value - I) / I).to_double() < 1e-60);
    CHECK(s.c_used == 1);
  }
}

TEST_CASE("constant term closed form matches the exact q-expansion") {
  // c(0) = 2 k! sigma_{k-1}(m) / B_k; for d = 0 it is Gamma(k) times coeff_0(f).
  CHECK(constant_term(4, 1) == Rational(-1440));
  for (long k : {4L, 6L, 8L}) {
    for (long m : {1L, 2L}) {
      const auto fe = faber::faber_form(faber::weight_data(k), m, 5);
      BigInt g = 1;
      for (long i = 2; i < k; ++i) g *= i;
      CHECK(constant_term(k, m) == Rational(g * fe.series.coeff(0)));
    }
  }
}

TEST_CASE("d = 0: F / Gamma(k) equals the exact form on the imaginary axis") {
  for (long k : {6L, 10L}) {
    for (long m : {1L, 2L}) {
      const PoincareSeries F(k, m, loose(0.9), kCtx);
      for (double y : {0.9, 1.3}) {
        const Real ev = F.deriv_eval(y, 0).value.to_real(320) / fact(k - 1);
        const Real fv = faber_at(k, m, y);
        CHECK((abs(ev - fv) / abs(fv)).to_double() <= 1e-10);
      }
    }
  }
}

TEST_CASE("weight 2-k = 2 mod 4 vanishes at z = i") {
  for (long m : {1L, 2L}) {
    const PoincareSeries F(8, m, loose(), kCtx);
    const auto r = F.deriv_eval(1.0, 0);
    const double scaled = r.value.is_zero() ? -INFINITY : r.value.logmag().to_double() - r.term_scale.logmag().to_double();
    CHECK(scaled < std::log(1e-12));
  }
}

TEST_CASE("imaginary part is exactly zero on the axis") {
  const PoincareSeries F(6, 2, loose(), kCtx);
  const auto r = F.eval(Real(0L, F.bits()), Real(1.1, F.bits()));
  CHECK(r.imag.is_zero());
  CHECK(rel(r.value, F.deriv_eval(1.1, 0).value) < 1e-60);
  const auto off = F.eval(Real(0.2, F.bits()), Real(1.1, F.bits()));
  CHECK_FALSE(off.imag.is_zero());
}

TEST_CASE("symbolic derivatives agree with central differences at second order") {
  const PoincareSeries F(6, 2, loose(0.8, 4), kCtx);
  const Real y(1.1, 320);
  for (long r : {0L, 1L, 2L}) {
    const Real exact = F.deriv_eval(y, r + 1).value.to_real(320);
    double prev = 0, order = 0;
    for (double h : {1e-2, 5e-3, 2.5e-3}) {
      const Real H(h, 320);
      const Real fd = (F.deriv_eval(y + H, r).value.to_real(320) - F.deriv_eval(y - H, r).value.to_real(320)) / (H * 2L);
      const double err = (abs(fd - exact) / abs(exact)).to_double();
      if (prev > 0) order = std::log2(prev / err);
      prev = err;
    }
    CHECK(order >= 1.9);
  }
}

TEST_CASE("holomorphic part coincides with the full series when d = 0") {
  const PoincareSeries F(4, 1, loose(0.9, 3, 2000), kCtx);
  for (long r : {0L, 1L, 3L}) {
    const auto full = F.deriv_eval(1.2, r, Part::full);
    const auto holo = F.deriv_eval(1.2, r, Part::holomorphic);
    CHECK(rel(holo.value, full.value) < 1e-10);
  }
}

TEST_CASE("holomorphic part is dominated by the leading exponential for large y") {
  const PoincareSeries F(6, 1, loose(), kCtx);
  double prev = INFINITY;
  for (double y : {2.0, 3.0, 4.0}) {
    const auto v = F.deriv_eval(y, 0, Part::holomorphic);
    const Real lead = fact(5) * exp(pi(320) * 2L * Real(y, 320));
    const double dev = std::fabs((v.value.to_real(320) / lead).to_double() - 1.0);
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("raising truncations moves the value by at most the reported tail") {
  for (long r : {0L, 2L}) {
    auto a = loose(0.9, 2, 250);
    auto b = loose(0.9, 2, 500);
    b.n_max = 300;
    const auto lo = PoincareSeries(6, 2, a, kCtx).deriv_eval(1.0, r);
    const auto hi = PoincareSeries(6, 2, b, kCtx).deriv_eval(1.0, r);
    const Real diff = abs(lo.value.to_real(320) - hi.value.to_real(320));
    CHECK(diff <= lo.tail_estimate.to_real(320));
    CHECK(hi.tail_estimate <= lo.tail_estimate);
  }
}

TEST_CASE("tail enforcement raises TruncationError with a suggestion") {
  PoincareOptions o;
  o.c_max = 2;
  o.n_max = 4;
  o.y_min = 0.5;
  const PoincareSeries F(6, 2, o, PrecisionContext{256, 1e-30});
  try {
    (void)F.deriv_eval(0.5, 0);
    FAIL("expected TruncationError");
  } catch (const TruncationError& e) {
    CHECK(e.suggested() > 0);
  }
}

TEST_CASE("nonholomorphic coefficients vanish when there are no cusp forms") {
  const auto six = nonholo_residual(6, 2, -1, 500, kCtx);
  CHECK(six.relative() <= 1e-6);
  const auto four = nonholo_residual(4, 1, -1, 2000, kCtx);
  CHECK(four.relative() <= 1e-6);
  // C_max = 500 leaves about 1.2e-6 for k = 4; the c-tail decays like C^{-3}.
  CHECK(nonholo_residual(4, 1, -1, 500, kCtx).relative() > four.relative());
  // A cusp form exists for k = 12: the residual stays O(1).
  CHECK(nonholo_residual(12, 2, -1, 500, kCtx).relative() > 1e-3);
}

TEST_CASE("serial and parallel construction are identical") {
  auto s = loose();
  s.exec = Exec::serial;
  auto p = loose();
  p.exec = Exec::parallel;
  const auto a = build_terms(6, 3, s, kCtx);
  const auto b = build_terms(6, 3, p, kCtx);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].freq == b[i].freq);
    REQUIRE(a[i].poly.size() == b[i].poly.size());
    for (size_t j = 0; j < a[i].poly.size(); ++j) CHECK(a[i].poly[j] == b[i].poly[j]);
  }
}

TEST_CASE("long double Kloosterman path agrees with exact sums within the tail") {
  for (long n : {-3L, -1L, 1L, 4L}) {
    const auto fast = c_sum(14, 2, n, 300, 256);
    const auto exact = c_sum(14, 2, n, 300, 256, -INFINITY, true);
    CHECK(fast.c_used == exact.c_used);
    CHECK(abs(fast.value - exact.value) <= fast.tail);
  }
}

TEST_CASE("root scan on the imaginary axis") {
  const auto eight = root_scan(8, 6, 0.6, 1.8, 24, kCtx);
  REQUIRE(eight.roots.size() == 1);
  CHECK(std::fabs(eight.roots[0].root - 1.0) <= 1e-8);
  CHECK(eight.roots[0].simple);
  CHECK(root_scan(8, 6, 1.1, 1.8, 12, kCtx).roots.empty());
  CHECK(root_scan(6, 6, 0.6, 1.8, 24, kCtx).roots.empty());
  CHECK_THROWS_AS(root_scan(6, 6, 1.8, 0.6, 24, kCtx), DomainError);
}

TEST_CASE("hyperbolic Laplacian annihilates F up to O(h^2)") {
  const PoincareSeries F(6, 3, loose(1.0, 0), kCtx);
  const Real x(0.1, 320), y(1.2, 320);
  double prev = 0, order = 0;
  for (double h : {0.02, 0.01, 0.005}) {
    const double v = std::exp(laplacian_residual(F, x, y, Real(h, 320)).logmag().to_double());
    if (prev > 0) order = std::log2(prev / v);
    prev = v;
  }
  CHECK(order >= 1.9);
}

TEST_CASE("Laplacian of a holomorphic q-series and of Gamma(k) f for d = 0") {
  const auto fe = faber::faber_form(faber::weight_data(4), 1, 120);
  const Real x(0.15, 320), y(1.1, 320), h(0.005, 320);
  const LogSigned series_res = laplacian_residual_series(fe.series, -2, x, y, h, kCtx);
  const PoincareSeries F(4, 1, loose(1.0, 0, 2000), kCtx);
  const LogSigned f_res = laplacian_residual(F, x, y, h);
  // Both are pure O(h^2) discretisation error of the same function.
  CHECK(std::fabs(series_res.log10_abs() - f_res.log10_abs()) < 0.05);
  // "Approximately zero" means the residual itself decays at second order.
  const LogSigned half = laplacian_residual_series(fe.series, -2, x, y, Real(0.0025, 320), kCtx);
  CHECK(std::log2(ratio(series_res, half)) >= 1.9);
}

TEST_CASE("argument checking") {
  CHECK_THROWS_AS(PoincareSeries(5, 1, loose(), kCtx), DomainError);
  CHECK_THROWS_AS(PoincareSeries(6, 0, loose(), kCtx), DomainError);
  const PoincareSeries F(6, 1, loose(), kCtx);
  CHECK_THROWS_AS((void)F.deriv_eval(-1.0, 0), DomainError);
  CHECK_THROWS_AS((void)F.deriv_eval(1.0, -1), DomainError);
}
