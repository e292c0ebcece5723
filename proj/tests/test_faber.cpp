#include <doctest.h>

#include "modasym/errors.hpp"
#include "modasym/faber.hpp"

using namespace modasym;
using namespace modasym::faber;
using modasym::qseries::LaurentQSeries;

namespace {

Real horner(const std::vector<BigInt>& p, const Real& x) {
  Real acc(0L, x.bits());
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + Real(*it, x.bits());
  return acc;
}

}  // namespace

TEST_CASE("weight bookkeeping") {
  CHECK(weight_data(12) == WeightSpec{12, 1, 14});
  CHECK(weight_data(4) == WeightSpec{4, 0, 10});
  CHECK(weight_data(2) == WeightSpec{2, -1, 0});
  CHECK(weight_data(6) == WeightSpec{6, 0, 8});
  CHECK(weight_data(24) == WeightSpec{24, 2, 14});
  CHECK(weight_data(26).d == 1);
  for (long k = 2; k <= 60; k += 2) {
    const auto s = weight_data(k);
    CHECK(((s.kprime - (2 - k)) % 12 + 12) % 12 == 0);
  }
  CHECK_THROWS_AS(weight_data(3), DomainError);
  CHECK_THROWS_AS(weight_data(0), DomainError);
}

TEST_CASE("k=2, m=1 is j - 744") {
  const auto e = faber_form(weight_data(2), 1, 6);
  const auto j = qseries::jinv(6);
  CHECK(e.series == j - LaurentQSeries::constant(744, 6));
  CHECK(e.series.coeff(1) == 196884);
  CHECK(e.fpoly == std::vector<BigInt>{-744, 1});
  CHECK(e.cshift == std::vector<BigInt>{984, 1});
}

TEST_CASE("m <= d gives the zero form") {
  const auto e = faber_form(weight_data(12), 1, 5);
  CHECK(e.is_zero());
  CHECK(e.series.is_zero());
  CHECK(e.cshift.empty());
  CHECK_THROWS_AS(principal_part(e), DomainError);
}

TEST_CASE("k=4, m=1 is E10/Delta") {
  const auto e = faber_form(weight_data(4), 1, 8);
  const auto expect = qseries::eisenstein(10, 10) * qseries::inverse(qseries::delta(11));
  CHECK(e.series.valuation() == -1);
  CHECK(e.series.coeff(0) == expect.coeff(0));
  CHECK(e.series == expect.truncated(8));
  CHECK(principal_part(e).empty());
}

TEST_CASE("principal parts for k=12") {
  const auto d = qseries::delta(6);
  const auto e2 = faber_form(weight_data(12), 2, 3);
  CHECK(principal_part(e2).at(1) == 24);
  CHECK(principal_part(e2).at(1) == -d.coeff(2));
  const auto e3 = faber_form(weight_data(12), 3, 3);
  CHECK(e3.principal.at(1) == -252);
}

TEST_CASE("shape, degree, shift and reconstruction") {
  for (long k : {4L, 6L, 12L, 14L, 26L}) {
    const auto spec = weight_data(k);
    const auto all = faber_range(spec, 12, 6);
    for (const auto& e : all) {
      CAPTURE(k);
      CAPTURE(e.m);
      if (e.m <= spec.d) {
        CHECK(e.is_zero());
        continue;
      }
      CHECK(e.series.coeff(-e.m) == 1);
      for (long j = spec.d + 1; j < e.m; ++j) CHECK(e.series.coeff(-j) == 0);
      CHECK(static_cast<long>(e.fpoly.size()) - 1 == e.m - spec.d - 1);
      CHECK(e.fpoly.back() == 1);
      CHECK(e.cshift.size() == e.fpoly.size());
      for (size_t r = 0; r < e.cshift.size(); ++r) {
        BigInt c = 0;
        for (size_t s = r; s < e.fpoly.size(); ++s) {
          BigInt p;
          mpz_ui_pow_ui(p.get_mpz_t(), 1728, s - r);
          c += e.fpoly[s] * big_binomial(s, r) * p;
        }
        CHECK(c == e.cshift[r]);
      }
      CHECK(reconstruct(e, 6) == e.series);
      CHECK(faber_form(spec, e.m, 6).series == e.series);
    }
  }
}

TEST_CASE("shifted polynomial agrees with the original at j(iy)") {
  const auto e = faber_form(weight_data(6), 7, 4);
  const auto j = qseries::jinv(90);
  const PrecisionContext ctx{256, 1e-40};
  for (double y : {0.9, 1.0, 1.2}) {
    const Real jy = qseries::eval_deriv_at_iy(j, y, 0, ctx).value.to_real(256);
    const Real a = horner(e.cshift, jy - Real(1728L, 256));
    const Real b = horner(e.fpoly, jy);
    CHECK((abs(a - b) / abs(b)).to_double() < 1e-40);
  }
}

TEST_CASE("duality") {
  const auto r12 = duality_check(12, 4, 4);
  CHECK(r12.violations.empty());
  CHECK(r12.epsilon == -1);
  const auto f = faber_form(weight_data(12), 2, 3);
  const auto g = Basis(12, 1, 4).form(1).first;
  CHECK(abs(f.series.coeff(1)) == abs(g.coeff(2)));

  const auto r4 = duality_check(4, 10, 10);
  CHECK(r4.violations.empty());
  CHECK(r4.pairs_checked == 100);
  CHECK(r4.epsilon == -1);
  CHECK(duality_check(12, 3, 5).pairs_skipped == 5);
}

TEST_CASE("positive weight basis") {
  const Basis b(12, 2, 5);
  CHECK(b.form(-1).first == qseries::delta(5));
  CHECK_FALSE(b.defined(-2));
  const Basis b4(4, 0, 5);
  CHECK(b4.form(0).first == qseries::eisenstein(4, 5));
}
