// Acceptance harness: one PASS/FAIL line per criterion. `acceptance 4 9`
// runs a subset; exit status is nonzero when any selected criterion fails.
// Tolerances and runtime limits are fixed here and are not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "modasym/asympt.hpp"
#include "modasym/errors.hpp"
#include "modasym/faber.hpp"
#include "modasym/poincare.hpp"
#include "modasym/qseries.hpp"
#include "modasym/specfun.hpp"

using namespace modasym;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string f(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

const PrecisionContext kCtx{256, 1e-12};

// 1. Exact series engine.
Outcome series_engine() {
  Outcome o;
  const auto eta = qseries::delta_eta_product(21);
  const auto eis = qseries::delta_eisenstein(21);
  bool same = true;
  for (long n = 1; n <= 20; ++n) same = same && eta.coeff(n) == eis.coeff(n);
  o.require(same, "tau(n) differs between constructions");
  o.require(eta.coeff(6) == eta.coeff(2) * eta.coeff(3), "tau(6) != tau(2) tau(3)");
  o.require(eta.coeff(10) == eta.coeff(2) * eta.coeff(5), "tau(10) != tau(2) tau(5)");
  const auto j = qseries::jinv(5);
  o.require(j.coeff(0) == 744 && j.coeff(1) == 196884, "j coefficients");
  o.note("tau(20) = " + to_string(eta.coeff(20)));
  return o;
}

// 2. Faber construction.
Outcome faber_construction() {
  Outcome o;
  long checked = 0;
  for (long k : {4L, 6L, 12L}) {
    const auto spec = faber::weight_data(k);
    for (const auto& e : faber::faber_range(spec, 20, 30)) {
      if (e.m < 1 || e.is_zero()) continue;
      ++checked;
      o.require(e.series.coeff(-e.m) == 1, "leading coefficient k=" + std::to_string(k) + " m=" + std::to_string(e.m));
      for (long jj = std::max(spec.d, 0L) + 1; jj < e.m; ++jj) {
        if (e.series.coeff(-jj) != 0) o.require(false, "gap coefficient q^-" + std::to_string(jj));
      }
      const auto rec = faber::reconstruct(e, e.series.trunc());
      bool exact = true;
      for (long t = e.series.valuation(); t < e.series.trunc(); ++t) exact = exact && rec.coeff(t) == e.series.coeff(t);
      o.require(exact, "reconstruction k=" + std::to_string(k) + " m=" + std::to_string(e.m));
    }
  }
  o.note(std::to_string(checked) + " forms checked");
  return o;
}

// 3. Duality.
Outcome duality() {
  Outcome o;
  for (long k : {4L, 12L}) {
    const auto rep = faber::duality_check(k, 15, 15);
    o.require(rep.violations.empty(), "violations for k=" + std::to_string(k));
    o.require(rep.epsilon == 1 || rep.epsilon == -1, "no sign for k=" + std::to_string(k));
    o.note("k=" + std::to_string(k) + " eps=" + std::to_string(rep.epsilon) + " pairs=" +
           std::to_string(rep.pairs_checked));
  }
  return o;
}

// 4. d = 0 gate.
Outcome d0_gate() {
  Outcome o;
  const long bits = 320;
  double worst = 0, worst_nh = 0;
  for (long k : {4L, 6L, 8L, 10L, 14L}) {
    const Real g = factorial(k - 1, bits);
    for (long m : {1L, 2L, 3L}) {
      poincare::PoincareOptions po;
      po.c_max = 2000;
      po.y_min = 0.9;
      po.r_max = 0;
      po.enforce_tail = false;
      const poincare::PoincareSeries F(k, m, po, kCtx);
      const auto fe = faber::faber_form(faber::weight_data(k), m, 80);
      for (double y : {0.9, 1.0, 1.3}) {
        const auto res = F.deriv_eval(y, 0);
        const Real ev = res.value.to_real(bits) / g;
        const Real fv = qseries::eval_deriv_at_iy(fe.series, y, 0, PrecisionContext{bits, 1e-30}).value.to_real(bits);
        double dev;
        if (k % 4 == 0 && y == 1.0) {
          // f(i) = 0 here; compare against the size of the summands instead.
          dev = (abs(ev - fv) / (res.term_scale.to_real(bits) / g)).to_double();
        } else {
          dev = (abs(ev - fv) / abs(fv)).to_double();
        }
        worst = std::max(worst, dev);
        o.require(dev <= 1e-10, "k=" + std::to_string(k) + " m=" + std::to_string(m) + f(" y=%.1f", y) +
                                    f(" dev=%.2e", dev));
      }
      const double nh = poincare::nonholo_residual(k, m, -1, 2000, kCtx).relative();
      worst_nh = std::max(worst_nh, nh);
      o.require(nh <= 1e-6, "nonholo k=" + std::to_string(k) + " m=" + std::to_string(m) + f(" rel=%.2e", nh));
    }
  }
  o.note(f("max eval dev %.2e", worst) + f(", max nonholo %.2e (C_max=2000)", worst_nh));
  return o;
}

void trend_checks(Outcome& o, const asympt::TrendReport& rep, const std::string& kind, double tol) {
  for (const auto& [key, ok] : rep.trend_ok) {
    if (key.rfind(kind + ":", 0) != 0) continue;
    const double dev = rep.final_dev.at(key);
    o.require(ok, key + " not nonincreasing");
    o.require(dev <= tol, key + f(" final dev %.3g", dev));
    o.note(key + f(" %.4f", dev));
  }
  for (const auto& row : rep.rows) {
    if (row.kind == kind && row.verdict != "ok") o.require(false, kind + " row m=" + std::to_string(row.m) + " " + row.verdict);
  }
}

// 5. Derivative growth at i.
Outcome thm12() {
  Outcome o;
  trend_checks(o, asympt::verify_thm12(6, {0, 1, 2}, {10, 20, 30, 40}, kCtx), "thm12", 0.10);
  trend_checks(o, asympt::verify_thm12(8, {0, 1}, {10, 20, 30, 40}, kCtx), "thm12", 0.10);
  return o;
}

// 6. Exact coefficients and the derivative identity.
Outcome thm13() {
  Outcome o;
  const std::vector<asympt::RSpec> rs{asympt::RSpec::parse("0"), asympt::RSpec::parse("1"),
                                      asympt::RSpec::parse("sqrt")};
  const auto rep = asympt::verify_thm13(6, rs, {20, 30, 40}, kCtx);
  trend_checks(o, rep, "thm13", 0.15);
  for (const auto& row : rep.rows) {
    if (row.kind != "thm11" || row.m != 40) continue;
    const double dev = std::fabs(row.ratio - 1.0);
    o.require(row.verdict == "ok" && dev <= 0.15, "thm11 r=" + std::to_string(row.r) + f(" dev %.3g", dev));
  }
  o.note(f("thm11 final max %.4f", rep.max_final_dev("thm11")));
  return o;
}

// 7. Gaussian-weight integral.
Outcome lemma() {
  Outcome o;
  struct P {
    double ell, B;
  };
  for (const P p : {P{-0.25, 1.0}, P{0.0, 2 * M_PI}, P{1.75, 2 * M_PI}, P{5.0, 2 * M_PI}}) {
    double prev = INFINITY, dev = NAN;
    for (double A : {10.0, 20.0, 40.0}) {
      const auto lp = specfun::make_lemma_params(p.ell, A, p.B, kCtx.bits);
      if (!lp.in_regime()) continue;
      const LogSigned q = specfun::lemma_integral_quadrature(lp, kCtx);
      dev = std::fabs(ratio(q, specfun::lemma_integral_asymptotic(lp)) - 1.0);
      o.require(dev <= prev, f("l=%.2f", p.ell) + f(" not monotone at A=%.0f", A));
      prev = dev;
      if (p.ell == 0.0) {
        const Real exact = specfun::lemma_integral_ell0(lp.A, lp.B);
        const double cf = (abs(q.to_real(kCtx.bits) - exact) / exact).to_double();
        o.require(cf <= 1e-12, f("closed form dev %.2e", cf));
      }
    }
    o.require(dev <= 0.05, f("l=%.2f", p.ell) + f(" dev %.3g at A=40", dev));
    o.note(f("l=%.2f:", p.ell) + f(" %.2e", dev));
  }
  return o;
}

// 8. Constant coefficient from Poincare values.
Outcome prop21() {
  Outcome o;
  const auto twelve = asympt::verify_prop21(12, {2, 3, 4}, kCtx);
  for (const auto& row : twelve.rows) {
    o.require(row.rel_dev <= 1e-6, "k=12 m=" + std::to_string(row.m) + f(" dev %.2e", row.rel_dev));
    o.require(row.b1_is_minus_tau.value_or(false), "b1 != -tau(" + std::to_string(row.m) + ")");
  }
  const auto six = asympt::verify_prop21(6, {1, 2, 3}, kCtx);
  for (const auto& row : six.rows) {
    o.require(row.b.empty(), "k=6 has a principal part");
    o.require(row.rel_dev <= 1e-8, "k=6 m=" + std::to_string(row.m) + f(" dev %.2e", row.rel_dev));
  }
  o.note(f("k=12 max dev %.2e", twelve.max_rel_dev()) + f(", k=6 max dev %.2e", six.max_rel_dev()));
  return o;
}

// 9. Root on the imaginary axis.
Outcome roots() {
  Outcome o;
  const auto eight = poincare::root_scan(8, 20, 0.5, 2.0, 60, kCtx);
  o.require(eight.roots.size() == 1, "k=8: " + std::to_string(eight.roots.size()) + " roots");
  if (eight.roots.size() == 1) {
    const auto& b = eight.roots[0];
    o.require(std::fabs(b.root - 1.0) <= 1e-8, f("root at %.12f", b.root));
    o.require(b.simple && b.deriv.abs() > b.deriv_tail, "derivative witness below its tail");
    o.note(f("root %.10f", b.root));
  }
  const auto six = poincare::root_scan(6, 20, 0.5, 2.0, 60, kCtx);
  o.require(six.roots.empty(), "k=6: " + std::to_string(six.roots.size()) + " roots");
  for (const auto& w : eight.warnings) o.note("warning " + w);
  for (const auto& w : six.warnings) o.note("warning " + w);
  return o;
}

// 10. Fixed-m growth of holomorphic derivatives.
Outcome prop32() {
  Outcome o;
  // Bounded means the last log ratio exceeds the first by at most 5 nats.
  const auto rep = asympt::verify_prop32(2, 1, {10, 20, 30, 40}, 0.05, kCtx, 5.0);
  std::string ratios = "log ratios";
  for (const auto& row : rep.rows) ratios += f(" %.2f", row.log_ratio);
  o.require(rep.bounded, ratios + " keep growing");
  if (rep.bounded) o.note(ratios);
  o.note(f("empirical constant %.2f", rep.empirical_constant));
  return o;
}

// 11. Constants.
Outcome constants() {
  Outcome o;
  const auto c = asympt::constants(6, kCtx);
  o.require(c.c2_dual_dev <= 1e-20, f("C2 truncation dev %.2e", c.c2_dual_dev));
  o.require(c.eta_dev <= 1e-20, f("Delta(i) vs eta dev %.2e", c.eta_dev));
  o.require(c.C2.to_double() > 1.0, "C2 <= 1");
  o.note("C2 = " + c.C2.str(12) + f(" (printed %.6f", asympt::kPrintedC2) +
         f(", factor %.6f)", c.C2.to_double() / asympt::kPrintedC2));
  o.note(f("1/Delta(i) = %.7f", 1.0 / c.delta_i.to_double()) + f(" (printed %.7f)", asympt::kPrintedInvDelta));
  return o;
}

// 12. Harmonicity.
Outcome harmonicity() {
  Outcome o;
  struct Z {
    long k, m;
    double x, y;
  };
  for (const Z z : {Z{6, 3, 0.1, 1.2}, Z{8, 2, -0.2, 0.9}}) {
    poincare::PoincareOptions po;
    po.y_min = z.y - 0.1;
    po.r_max = 0;
    po.enforce_tail = false;
    const poincare::PoincareSeries F(z.k, z.m, po, kCtx);
    double prev = 0, order = INFINITY;
    for (double h : {0.02, 0.01, 0.005}) {
      const double v = std::exp(
          poincare::laplacian_residual(F, Real(z.x, 320), Real(z.y, 320), Real(h, 320)).logmag().to_double());
      if (prev > 0) order = std::min(order, std::log2(prev / v));
      prev = v;
    }
    o.require(order >= 1.9, "k=" + std::to_string(z.k) + f(" order %.3f", order));
    o.note("k=" + std::to_string(z.k) + f(" order %.3f", order));
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "exact series engine", 5, series_engine},
      {2, "faber construction", 30, faber_construction},
      {3, "duality", 60, duality},
      {4, "d=0 poincare gate", 120, d0_gate},
      {5, "derivative growth trend (k=6, k=8)", 300, thm12},
      {6, "coefficient trend incl. r=floor(sqrt m)", 300, thm13},
      {7, "gaussian-weight integral", 60, lemma},
      {8, "constant coefficient identity", 120, prop21},
      {9, "root scan", 120, roots},
      {10, "fixed-m derivative bound", 120, prop32},
      {11, "constants", 10, constants},
      {12, "harmonicity", 120, harmonicity},
  };
  std::vector<int> pick;
  for (int i = 1; i < argc; ++i) pick.push_back(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : all) {
    if (!pick.empty() && std::find(pick.begin(), pick.end(), c.id) == pick.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.require(secs <= c.limit_s, f("runtime %.1fs over limit", secs));
    std::printf("criterion %2d %-42s %s  [%.1fs] %s\n", c.id, c.name, out.pass ? "PASS" : "FAIL", secs,
                out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
