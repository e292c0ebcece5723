#include <doctest.h>

#include <cmath>
#include <string>

#include "modasym/asympt.hpp"
#include "modasym/errors.hpp"
#include "modasym/io.hpp"
#include "modasym/qseries.hpp"

using namespace modasym;
using namespace modasym::asympt;

namespace {

const PrecisionContext kCtx{256, 1e-12};

const Constants& six() {
  static const Constants c = constants(6, kCtx);
  return c;
}

}  // namespace

TEST_CASE("derivative order follows k mod 4") {
  CHECK(a_r(6, 0) == 0);
  CHECK(a_r(6, 3) == 6);
  CHECK(a_r(10, 2) == 4);
  CHECK(a_r(8, 0) == 1);
  CHECK(a_r(12, 2) == 5);
  CHECK(make_regime(8, 10, 1, 128).a == 3);
}

TEST_CASE("X(r, m)") {
  // rr = m with m >> k: 1/2 (1 + sqrt(1 + 4/(2 pi))).
  CHECK(x_factor(6, 1000000000, 1000000000).to_double() == doctest::Approx(1.139652204).epsilon(1e-9));
  double prev = INFINITY;
  for (long m : {10L, 100L, 1000L, 10000L}) {
    const double x = x_factor(6, m, 3).to_double();
    CHECK(std::fabs(x - 1.0) < prev);
    prev = std::fabs(x - 1.0);
  }
  CHECK(prev < 1e-3);
  for (long rr = 0; rr < 30; ++rr) CHECK(x_factor(6, 20, rr) < x_factor(6, 20, rr + 1));
  CHECK_THROWS_AS(x_factor(14, 1, 0), RegimeError);
}

TEST_CASE("C(X)") {
  CHECK(c_factor(Real(1L, 128)).to_double() == doctest::Approx(1.0).epsilon(1e-30));
  CHECK(c_factor(Real(1.139652204, 128)).to_double() == doctest::Approx(0.8901).epsilon(1e-4));
  for (double X : {1.0, 1.01, 1.5, 3.0, 50.0}) {
    const double c = c_factor(Real(X, 128)).to_double();
    CHECK(c > 0);
    CHECK(c <= 1.0);
  }
  CHECK_THROWS_AS(c_factor(Real(0.5, 128)), DomainError);
}

TEST_CASE("bracket exceeds 1 and stays at most 2 for X >= 1, r <= sqrt(m)") {
  for (long k : {6L, 8L, 12L}) {
    for (long m : {5L, 10L, 20L, 40L}) {
      for (long r = 0; r <= m; ++r) {
        const long a = a_r(k, r);
        const double b = bracket(k, m, a).to_double();
        CHECK(b > 1.0);
        if (r * r <= m && x_factor(k, m, a).to_double() >= 1.0) CHECK(b <= 2.0);
      }
    }
  }
  CHECK(bracket(6, 4000, 0).to_double() == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("bracket is unbounded along r = m") {
  // X(2m, m) -> 1.279..., where 2m log X outgrows 2 pi m (X - 1)^2.
  double prev = 0;
  for (long m : {20L, 40L, 80L}) {
    const double b = bracket(6, m, a_r(6, m)).to_double();
    CHECK(b > 2.0);
    CHECK(b > prev);
    prev = b;
  }
  CHECK(prev > 30.0);
}

TEST_CASE("derivative-growth right-hand side decomposes in log space") {
  const LogSigned rhs = thm12_rhs(6, 40, 0, 256);
  const Real expect = log(factorial(5, 256)) + log(bracket(6, 40, 0, 256)) + pi(256) * 80L;
  CHECK(rhs.sign() == 1);
  CHECK((abs(rhs.logmag() - expect) / expect).to_double() < 1e-60);
  CHECK_THROWS_AS(thm12_rhs(6, 3, 4), RegimeError);
}

TEST_CASE("constants under the strict d/dy convention") {
  const auto& c = six();
  CHECK(c.C2.to_double() > 1.0);
  CHECK(c.c2_dual_dev <= 1e-20);
  CHECK(c.c1_dual_dev <= 1e-20);
  CHECK(c.eta_dev <= 1e-20);
  // Frozen from the dual-truncation computation; the printed decimals differ.
  CHECK(c.C2.to_double() == doctest::Approx(24827.56505).epsilon(1e-9));
  CHECK(1.0 / c.delta_i.to_double() == doctest::Approx(560.1080357).epsilon(1e-9));
  CHECK(c.C1.to_double() == doctest::Approx(1187.006489).epsilon(1e-9));
  CHECK(std::fabs(c.C2.to_double() / kPrintedC2 - 1.0) > 1.0);
  CHECK(std::fabs(1.0 / c.delta_i.to_double() / kPrintedInvDelta - 1.0) > 0.04);
}

TEST_CASE("k = 12 uses (E_14)'(i) / Delta(i)^2") {
  const auto c = constants(12, kCtx);
  const PrecisionContext hi{320, 1e-40};
  const Real e14p = qseries::eval_deriv_at_iy(qseries::eisenstein(14, 80), 1.0, 1, hi).value.to_real(320);
  const Real d = qseries::eval_deriv_at_iy(qseries::delta(80), 1.0, 0, hi).value.to_real(320);
  const Real direct = e14p / (d * d);
  CHECK((abs(c.C1.to_real(320) - direct) / abs(direct)).to_double() < 1e-25);
}

TEST_CASE("r schedules") {
  CHECK(RSpec::parse("3").resolve(40) == 3);
  CHECK(RSpec::parse("sqrt").resolve(40) == 6);
  CHECK(RSpec::parse("sqrt").resolve(49) == 7);
  CHECK(RSpec::parse("half").resolve(41) == 20);
  CHECK(RSpec::parse("sqrt").label() == "sqrt");
  CHECK_THROWS_AS(RSpec::parse("x"), DomainError);
  CHECK_THROWS_AS(RSpec::parse("-1"), DomainError);
}

TEST_CASE("fixed-m derivative bound is monotone") {
  LogSigned prev;
  for (long r : {10L, 20L, 40L}) {
    const LogSigned b = prop32_bound(2, 1, r, 0.05);
    if (!prev.is_zero()) CHECK(b > prev);
    prev = b;
    CHECK(prop32_bound(2, 1, r, 0.1) >= b);
  }
  CHECK_THROWS_AS(prop32_bound(6, 1, 2, 0.05), RegimeError);
  CHECK_THROWS_AS(prop32_bound(2, 1, 10, 0.0), DomainError);
}

TEST_CASE("exact coefficient trend for fixed r") {
  DriverOptions o;
  const auto rep = verify_thm13(6, {RSpec::parse("0"), RSpec::parse("1")}, {20, 30, 40}, kCtx, o);
  CHECK(rep.trend_ok.at("thm13:r=0"));
  CHECK(rep.trend_ok.at("thm13:r=1"));
  CHECK(rep.final_dev.at("thm13:r=0") <= 0.15);
  CHECK(rep.final_dev.at("thm13:r=1") <= 0.15);
  CHECK(rep.max_final_dev("thm11") <= 0.15);
  for (const auto& row : rep.rows) {
    CHECK(row.lhs.sign() == 1);
    CHECK(row.rhs.sign() == 1);
  }
}

TEST_CASE("vanishing coefficients are reported, not compared") {
  // k = 12 has d = 1, so c_{m,r} = 0 once r > m - 2.
  const auto rep = verify_thm13(12, {RSpec::parse("3")}, {3, 4}, kCtx);
  REQUIRE(!rep.rows.empty());
  bool saw_marker = false;
  for (const auto& row : rep.rows) {
    if (row.kind == "thm13" && row.m == 3) {
      CHECK(row.verdict == "exact-zero");
      saw_marker = true;
    }
  }
  CHECK(saw_marker);
}

TEST_CASE("derivative-growth trend for k = 6, r = 0") {
  const auto rep = verify_thm12(6, {0}, {10, 20}, kCtx);
  CHECK(rep.trend_ok.at("thm12:r=0"));
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[0].m == 10);
  CHECK(rep.rows[1].verdict == "ok");
}

TEST_CASE("constant coefficient from Poincare values") {
  const auto six_rep = verify_prop21(6, {2}, kCtx);
  CHECK(six_rep.rows.at(0).b.empty());
  CHECK(six_rep.max_rel_dev() <= 1e-8);
  const auto twelve = verify_prop21(12, {3}, kCtx);
  const auto& row = twelve.rows.at(0);
  CHECK(row.b.at(1) == BigInt(-252));
  CHECK(row.b1_is_minus_tau.value());
  CHECK(row.rel_dev <= 1e-6);
  CHECK_THROWS_AS(verify_prop21(12, {1}, kCtx), DomainError);
}

TEST_CASE("JSON and CSV renderings") {
  const auto rep = verify_thm12(6, {0}, {10}, kCtx);
  const auto j = io::to_json(rep);
  CHECK(j["rows"].size() == 1);
  CHECK(j["rows"][0]["verdict"] == "ok");
  CHECK(j["rows"][0].contains("lhs_log10"));
  CHECK(io::comparison_csv_header() == "k,m,r,a_r,lhs_log10,rhs_log10,ratio,tail_log10,verdict");
  const std::string line = io::to_csv(rep.rows[0]);
  CHECK(std::count(line.begin(), line.end(), ',') == 8);
  const auto cj = io::to_json(six());
  CHECK(cj["printed_C2"] == kPrintedC2);
  CHECK(cj["C2"].get<std::string>().substr(0, 8) == "2.482756");
}
