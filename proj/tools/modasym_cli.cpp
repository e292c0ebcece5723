// modasym command-line driver. Exit codes: 0 success, 1 a verification
// trend or threshold failed, 2 usage or domain error, 3 numeric error.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "modasym/asympt.hpp"
#include "modasym/errors.hpp"
#include "modasym/faber.hpp"
#include "modasym/io.hpp"
#include "modasym/poincare.hpp"
#include "modasym/qseries.hpp"
#include "modasym/specfun.hpp"

using namespace modasym;
using io::json;

namespace {

struct Config {
  long k = 6;
  long m = 1;
  long r = 0;
  std::vector<long> m_list;
  std::vector<std::string> r_list;
  double y = 1.0;
  double x = 0.0;
  long trunc = 10;
  long n_max = 0;
  long c_max = 500;
  long bits = 256;
  double rel_tol = 1e-12;
  std::string format = "table";
  std::string output;
  unsigned long rng_seed = 12345;
};

enum Exit { kOk = 0, kTrend = 1, kUsage = 2, kNumeric = 3 };

class Out {
 public:
  explicit Out(const Config& c) : cfg_(c) {}
  std::ostream& os() { return buf_; }
  void json_doc(json j) {
    j["schema"] = io::kSchema;
    buf_ << j.dump(2) << "\n";
  }
  void flush() {
    if (cfg_.output.empty()) {
      std::cout << buf_.str();
      return;
    }
    std::ofstream f(cfg_.output, std::ios::binary);
    if (!f) throw DomainError("cannot open output file " + cfg_.output);
    f << buf_.str();
  }

 private:
  const Config& cfg_;
  std::ostringstream buf_;
};

PrecisionContext ctx_of(const Config& c) {
  PrecisionContext p{c.bits, c.rel_tol};
  p.validate();
  return p;
}

poincare::PoincareOptions popts(const Config& c) {
  poincare::PoincareOptions o;
  o.n_max = c.n_max;
  o.c_max = c.c_max;
  return o;
}

std::vector<long> m_values(const Config& c) { return c.m_list.empty() ? std::vector<long>{c.m} : c.m_list; }

std::vector<long> r_values(const Config& c, std::vector<long> dflt) {
  if (c.r_list.empty()) return dflt;
  std::vector<long> out;
  for (const auto& s : c.r_list) {
    const auto rs = asympt::RSpec::parse(s);
    if (rs.kind != asympt::RSpec::Kind::fixed) throw DomainError("this command takes integer r values only");
    out.push_back(rs.r);
  }
  return out;
}

std::string join(const std::vector<BigInt>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + to_string(v[i]);
  return s;
}

std::string l10(const LogSigned& x) { return x.is_zero() ? "0" : io::fmt(x.log10_abs(), 10); }

void add_common(CLI::App* sub, Config& c) {
  sub->add_option("--bits", c.bits, "Working precision in bits")->check(CLI::Range(64L, 1L << 20));
  sub->add_option("--rel-tol", c.rel_tol, "Target relative tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--format", c.format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
  sub->add_option("--output", c.output, "Write to this file instead of stdout");
}

void add_poincare(CLI::App* sub, Config& c) {
  sub->add_option("--n-max", c.n_max, "Fourier truncation (0 selects max(8m, 200))")->check(CLI::NonNegativeNumber);
  sub->add_option("--c-max", c.c_max, "Kloosterman modulus truncation")->check(CLI::PositiveNumber);
}

void print_rows(Out& out, const Config& c, const asympt::TrendReport& rep) {
  if (c.format == "json") {
    out.json_doc(io::to_json(rep));
    return;
  }
  if (c.format == "csv") {
    out.os() << io::comparison_csv_header() << "\n";
    for (const auto& row : rep.rows) out.os() << io::to_csv(row) << "\n";
    return;
  }
  out.os() << "kind   k    m    r  a_r   lhs_log10        rhs_log10        ratio          verdict\n";
  for (const auto& row : rep.rows) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-6s %-4ld %-4ld %-3ld %-4ld %-16s %-16s %-14s %s\n", row.kind.c_str(), row.k,
                  row.m, row.r, row.a, l10(row.lhs).c_str(), l10(row.rhs).c_str(),
                  row.verdict == "ok" ? io::fmt(row.ratio, 10).c_str() : "-", row.verdict.c_str());
    out.os() << buf;
  }
  for (const auto& [key, ok] : rep.trend_ok) {
    out.os() << "trend " << key << ": " << (ok ? "nonincreasing" : "NOT nonincreasing")
             << ", final |ratio-1| = " << io::fmt(rep.final_dev.at(key), 6) << "\n";
  }
  for (const auto& n : rep.notes) out.os() << "note: " << n << "\n";
}

int cmd_faber(const Config& c, Out& out) {
  const auto spec = faber::weight_data(c.k);
  json arr = json::array();
  for (long m : m_values(c)) {
    const auto e = faber::faber_form(spec, m, c.trunc);
    if (c.format == "json") {
      arr.push_back(io::to_json(e));
      continue;
    }
    if (c.format == "csv") {
      if (arr.empty()) out.os() << "k,m,d,kprime,zero,fpoly,cshift\n";
      arr.push_back(nullptr);
      out.os() << c.k << "," << m << "," << spec.d << "," << spec.kprime << "," << (e.is_zero() ? 1 : 0) << ","
               << join(e.fpoly) << "," << join(e.cshift) << "\n";
      continue;
    }
    out.os() << "k=" << c.k << " m=" << m << " d=" << spec.d << " k'=" << spec.kprime << "\n";
    if (e.is_zero()) {
      out.os() << "  zero form: m <= d, f_{2-k,m} = 0\n";
      continue;
    }
    out.os() << "  F_m(x)        : " << join(e.fpoly) << "\n";
    out.os() << "  F_m(x + 1728) : " << join(e.cshift) << "\n";
    for (const auto& [n, b] : e.principal) out.os() << "  b_" << n << " = " << to_string(b) << "\n";
    out.os() << "  q-expansion   :";
    for (long t = e.series.valuation(); t < e.series.trunc(); ++t) {
      const BigInt a = e.series.coeff(t);
      if (sgn(a) != 0) out.os() << " " << to_string(a) << "q^" << t;
    }
    out.os() << " + O(q^" << e.series.trunc() << ")\n";
  }
  if (c.format == "json") out.json_doc({{"faber", arr}});
  return kOk;
}

int cmd_dual(const Config& c, long n, Out& out) {
  const auto rep = faber::duality_check(c.k, c.m, n > 0 ? n : c.m);
  if (c.format == "json") {
    out.json_doc(io::to_json(rep));
  } else {
    out.os() << "k=" << rep.k << " M=" << rep.M << " N=" << rep.N << " epsilon=" << rep.epsilon
             << " checked=" << rep.pairs_checked << " skipped=" << rep.pairs_skipped
             << " violations=" << rep.violations.size() << "\n";
  }
  return rep.violations.empty() ? kOk : kTrend;
}

int cmd_poincare(const Config& c, bool holo, Out& out) {
  const auto ctx = ctx_of(c);
  auto o = popts(c);
  o.y_min = std::min(o.y_min, c.y);
  o.r_max = std::max(c.r, 0L);
  const poincare::PoincareSeries F(c.k, c.m, o, ctx);
  poincare::PoincareResult res;
  if (c.x != 0.0) {
    if (c.r != 0 || holo) throw DomainError("poincare: --x requires r = 0 and the full series");
    res = F.eval(Real(c.x, F.bits()), Real(c.y, F.bits()));
  } else {
    res = F.deriv_eval(c.y, c.r, holo ? poincare::Part::holomorphic : poincare::Part::full);
  }
  const json j = io::to_json(res);
  if (c.format == "json") {
    out.json_doc(j);
  } else if (c.format == "csv") {
    out.os() << "k,m,y,r,sign,log10_magnitude,n_used,c_used,log10_tail\n"
             << c.k << "," << c.m << "," << io::fmt(c.y) << "," << c.r << "," << res.value.sign() << ","
             << l10(res.value) << "," << res.n_used << "," << res.c_used << "," << l10(res.tail_estimate) << "\n";
  } else {
    out.os() << "F" << (holo ? "^+" : "") << "^(" << c.r << ")(m=" << c.m << ", 2-k=" << 2 - c.k << "; "
             << io::fmt(c.x) << " + " << io::fmt(c.y) << "i) = " << res.value.str(15) << "\n";
    if (c.x != 0.0) out.os() << "  imaginary part " << res.imag.str(15) << "\n";
    out.os() << "  tail estimate " << res.tail_estimate.str(4) << ", N_max=" << res.n_used
             << ", C_max=" << res.c_used << "\n";
  }
  return kOk;
}

int cmd_thm12(const Config& c, double max_dev, Out& out) {
  const auto ms = c.m_list.empty() ? std::vector<long>{10, 20, 30, 40} : c.m_list;
  const auto rs = r_values(c, {0, 1, 2});
  asympt::DriverOptions d;
  d.poincare = popts(c);
  const auto rep = asympt::verify_thm12(c.k, rs, ms, ctx_of(c), d);
  print_rows(out, c, rep);
  return rep.all_trends_ok() && rep.max_final_dev("thm12") <= max_dev ? kOk : kTrend;
}

int cmd_thm13(const Config& c, double max_dev, Out& out) {
  const auto ms = c.m_list.empty() ? std::vector<long>{20, 30, 40} : c.m_list;
  std::vector<asympt::RSpec> rs;
  for (const auto& s : c.r_list.empty() ? std::vector<std::string>{"0", "1", "sqrt"} : c.r_list) {
    rs.push_back(asympt::RSpec::parse(s));
  }
  asympt::DriverOptions d;
  d.poincare = popts(c);
  const auto rep = asympt::verify_thm13(c.k, rs, ms, ctx_of(c), d);
  print_rows(out, c, rep);
  const bool ok = rep.all_trends_ok() && rep.max_final_dev("thm13") <= max_dev && rep.max_final_dev("thm11") <= max_dev;
  return ok ? kOk : kTrend;
}

int cmd_prop21(const Config& c, double tol, Out& out) {
  const auto ms = c.m_list.empty() ? std::vector<long>{2, 3, 4} : c.m_list;
  asympt::DriverOptions d;
  d.poincare = popts(c);
  const auto rep = asympt::verify_prop21(c.k, ms, ctx_of(c), d);
  bool ok = rep.max_rel_dev() <= tol;
  for (const auto& row : rep.rows) ok = ok && row.b1_is_minus_tau.value_or(true);
  if (c.format == "json") {
    out.json_doc(io::to_json(rep));
  } else {
    if (c.format == "csv") out.os() << "k,m,c_m0,lhs_log10,rhs_log10,rel_dev,b1_is_minus_tau\n";
    for (const auto& row : rep.rows) {
      if (c.format == "csv") {
        out.os() << row.k << "," << row.m << "," << to_string(row.c0) << "," << l10(row.lhs) << "," << l10(row.rhs)
                 << "," << io::fmt(row.rel_dev, 6) << ","
                 << (row.b1_is_minus_tau ? (*row.b1_is_minus_tau ? "1" : "0") : "") << "\n";
      } else {
        out.os() << "k=" << row.k << " m=" << row.m << " c_{m,0}=" << to_string(row.c0);
        for (const auto& [n, b] : row.b) out.os() << " b_" << n << "=" << to_string(b);
        out.os() << " rel_dev=" << io::fmt(row.rel_dev, 4);
        if (row.b1_is_minus_tau) out.os() << " b_1==-tau(m): " << (*row.b1_is_minus_tau ? "yes" : "NO");
        out.os() << "\n";
      }
    }
  }
  return ok ? kOk : kTrend;
}

int cmd_prop32(const Config& c, double eps, double margin, Out& out) {
  const auto rs = r_values(c, {10, 20, 30, 40});
  asympt::DriverOptions d;
  d.poincare = popts(c);
  const auto rep = asympt::verify_prop32(c.k, c.m, rs, eps, ctx_of(c), margin, d);
  if (c.format == "json") {
    out.json_doc(io::to_json(rep));
  } else {
    if (c.format == "csv") out.os() << "k,m,r,lhs_log10,bound_log10,log_ratio\n";
    for (const auto& row : rep.rows) {
      if (c.format == "csv") {
        out.os() << rep.k << "," << rep.m << "," << row.r << "," << l10(row.lhs) << "," << l10(row.bound) << ","
                 << io::fmt(row.log_ratio, 10) << "\n";
      } else {
        out.os() << "r=" << row.r << " log10|F^(r)+|=" << l10(row.lhs) << " log10 bound=" << l10(row.bound)
                 << " log ratio=" << io::fmt(row.log_ratio, 8) << "\n";
      }
    }
    if (c.format == "table") {
      out.os() << "empirical constant " << io::fmt(rep.empirical_constant, 8) << ", bounded within margin "
               << io::fmt(margin) << ": " << (rep.bounded ? "yes" : "NO") << "\n";
    }
  }
  return rep.bounded ? kOk : kTrend;
}

int cmd_lemma(const Config& c, double ell, const std::vector<double>& As, double B, Out& out) {
  const auto ctx = ctx_of(c);
  json rows = json::array();
  if (c.format == "csv") out.os() << "ell,B,A,quadrature_log10,asymptotic_log10,ratio,closed_form_rel_dev\n";
  double prev = INFINITY;
  bool trend = true;
  for (double A : As) {
    const auto p = specfun::make_lemma_params(ell, A, B, c.bits);
    const LogSigned q = specfun::lemma_integral_quadrature(p, ctx);
    json row = {{"ell", ell}, {"A", A}, {"B", B}, {"quadrature_log10", io::log10_or_null(q)}};
    double rat = NAN;
    std::string asym_l10;
    if (p.in_regime()) {
      const LogSigned a = specfun::lemma_integral_asymptotic(p);
      rat = ratio(q, a);
      asym_l10 = l10(a);
      row["asymptotic_log10"] = io::log10_or_null(a);
      row["ratio"] = rat;
      const double dev = std::fabs(rat - 1.0);
      if (dev > prev) trend = false;
      prev = dev;
    } else {
      row["asymptotic_log10"] = nullptr;
      row["note"] = "outside L < B A^2";
    }
    double cf = NAN;
    if (ell == 0.0) {
      const Real exact = specfun::lemma_integral_ell0(p.A, p.B);
      cf = (abs(q.to_real(c.bits) - exact) / exact).to_double();
      row["closed_form_rel_dev"] = cf;
    }
    rows.push_back(row);
    if (c.format == "csv") {
      out.os() << io::fmt(ell) << "," << io::fmt(B) << "," << io::fmt(A) << "," << l10(q) << ","
               << asym_l10
               << "," << (std::isnan(rat) ? "" : io::fmt(rat, 12)) << "," << (std::isnan(cf) ? "" : io::fmt(cf, 4))
               << "\n";
    } else if (c.format == "table") {
      out.os() << "l=" << io::fmt(ell) << " B=" << io::fmt(B) << " A=" << io::fmt(A) << " integral=" << q.str(15)
               << " quadrature/asymptotic=" << (std::isnan(rat) ? "n/a" : io::fmt(rat, 12));
      if (!std::isnan(cf)) out.os() << " closed-form rel dev=" << io::fmt(cf, 3);
      out.os() << "\n";
    }
  }
  if (c.format == "json") out.json_doc({{"rows", rows}, {"nonincreasing", trend}});
  if (c.format == "table") out.os() << "|ratio-1| nonincreasing in A: " << (trend ? "yes" : "NO") << "\n";
  return trend ? kOk : kTrend;
}

int cmd_constants(const Config& c, Out& out) {
  const auto cst = asympt::constants(c.k, ctx_of(c), c.trunc < 10 ? 60 : c.trunc);
  const json j = io::to_json(cst);
  if (c.format == "json") {
    out.json_doc(j);
  } else if (c.format == "csv") {
    out.os() << "name,value\n";
    for (auto it = j.begin(); it != j.end(); ++it) out.os() << it.key() << "," << it.value().dump() << "\n";
  } else {
    const Real inv = Real(1L, c.bits) / cst.delta_i;
    out.os() << "C2 = (E6'(i))^2 / Delta(i)       = " << cst.C2.str(25) << "\n";
    out.os() << "  truncation agreement           : " << io::fmt(cst.c2_dual_dev, 3) << "\n";
    out.os() << "  printed value " << asympt::kPrintedC2 << " differs by factor " << io::fmt(cst.C2.to_double() / asympt::kPrintedC2, 8) << "\n";
    out.os() << "  literal 1 + 504 sum n sigma_5(n) e^{-2 pi n} gives C2 = " << cst.C2_literal.str(15) << "\n";
    out.os() << "Delta(i)                         = " << cst.delta_i.str(25) << "\n";
    out.os() << "eta(i)^24                        = " << cst.delta_eta.str(25) << " (rel dev " << io::fmt(cst.eta_dev, 3)
             << ")\n";
    out.os() << "1/Delta(i)                       = " << inv.str(20) << " (printed " << asympt::kPrintedInvDelta << ")\n";
    if (c.k > 2) {
      out.os() << "C1 (k=" << c.k << ")                     = " << cst.C1.to_real(c.bits).str(25)
               << " (truncation agreement " << io::fmt(cst.c1_dual_dev, 3) << ")\n";
    }
  }
  return kOk;
}

int cmd_root_scan(const Config& c, double lo, double hi, long grid, Out& out) {
  auto o = popts(c);
  const auto rs = poincare::root_scan(c.k, c.m, lo, hi, grid, ctx_of(c), o);
  if (c.format == "json") {
    out.json_doc(io::to_json(rs));
  } else {
    if (c.format == "csv") out.os() << "k,m,lo,hi,root,deriv_log10,deriv_tail_log10,simple\n";
    for (const auto& b : rs.roots) {
      if (c.format == "csv") {
        out.os() << c.k << "," << c.m << "," << io::fmt(b.lo, 15) << "," << io::fmt(b.hi, 15) << ","
                 << io::fmt(b.root, 15) << "," << l10(b.deriv) << "," << l10(b.deriv_tail) << "," << b.simple << "\n";
      } else {
        out.os() << "root in [" << io::fmt(b.lo, 12) << ", " << io::fmt(b.hi, 12) << "] ~ " << io::fmt(b.root, 12)
                 << ", F' = " << b.deriv.str(6) << " (tail " << b.deriv_tail.str(3) << ")"
                 << (b.simple ? " simple" : " NOT certified simple") << "\n";
      }
    }
    if (c.format == "table") {
      out.os() << rs.roots.size() << " root(s) on [" << io::fmt(lo) << ", " << io::fmt(hi) << "]\n";
      for (const auto& w : rs.warnings) out.os() << "warning: " << w << "\n";
    }
  }
  for (const auto& w : rs.warnings) std::cerr << "warning: " << w << "\n";
  return kOk;
}

int cmd_weil(const Config& c, long samples, Out& out) {
  std::mt19937_64 rng(c.rng_seed);
  std::uniform_int_distribution<long> pick_c(2, c.c_max);
  const auto ctx = ctx_of(c);
  long worst_c = 0, violations = 0;
  double worst = 0;
  for (long s = 0; s < samples; ++s) {
    const long cc = pick_c(rng);
    std::uniform_int_distribution<long> pick_ab(-cc, cc);
    const long a = pick_ab(rng), b = pick_ab(rng);
    const double K = std::fabs(specfun::kloosterman(a, b, cc, ctx).to_double());
    const long g = std::gcd(std::gcd(std::labs(a), std::labs(b)), cc);
    const double bound = specfun::divisor_count(cc) * std::sqrt(static_cast<double>(g)) * std::sqrt(static_cast<double>(cc));
    const double q = K / bound;
    if (q > 1.0 + 1e-12) ++violations;
    if (q > worst) {
      worst = q;
      worst_c = cc;
    }
  }
  if (c.format == "json") {
    out.json_doc({{"samples", samples}, {"seed", c.rng_seed}, {"c_max", c.c_max}, {"max_ratio", worst},
                  {"worst_c", worst_c}, {"violations", violations}});
  } else {
    out.os() << samples << " samples (seed " << c.rng_seed << "): max |S|/(tau(c) sqrt(gcd) sqrt(c)) = "
             << io::fmt(worst, 6) << " at c=" << worst_c << ", violations " << violations << "\n";
  }
  return violations == 0 ? kOk : kTrend;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Faber polynomials, weakly holomorphic forms and Maass-Poincare series"};
  app.require_subcommand(1);
  Config c;
  double max_dev12 = 0.10, max_dev13 = 0.15, tol21 = 1e-6, eps = 0.05, margin = 5.0, lo = 0.5, hi = 2.0, ell = 0.0,
         B = 2 * M_PI;
  long dual_n = 0, grid = 60, samples = 200;
  bool holo = false;
  std::vector<double> As{10, 20, 40};

  auto* faber_cmd = app.add_subcommand("faber", "Faber polynomial data of f_{2-k,m}");
  faber_cmd->add_option("--k", c.k, "Weight parameter, even >= 2")->required();
  faber_cmd->add_option("--m", c.m, "Order of the pole");
  faber_cmd->add_option("--m-list", c.m_list, "Several m values")->delimiter(',');
  faber_cmd->add_option("--trunc", c.trunc, "q-expansion truncation");
  add_common(faber_cmd, c);

  auto* dual_cmd = app.add_subcommand("dual", "Coefficient duality between weights 2-k and k");
  dual_cmd->add_option("--k", c.k)->required();
  dual_cmd->add_option("--m", c.m, "Largest m");
  dual_cmd->add_option("--n", dual_n, "Largest n (defaults to m)");
  add_common(dual_cmd, c);

  auto* pc_cmd = app.add_subcommand("poincare", "Evaluate F(m, 2-k; z) or its y-derivatives");
  pc_cmd->add_option("--k", c.k)->required();
  pc_cmd->add_option("--m", c.m)->required();
  pc_cmd->add_option("--y", c.y)->check(CLI::PositiveNumber);
  pc_cmd->add_option("--x", c.x);
  pc_cmd->add_option("--r", c.r, "Derivative order in y")->check(CLI::NonNegativeNumber);
  pc_cmd->add_flag("--holomorphic", holo, "Holomorphic part only");
  add_poincare(pc_cmd, c);
  add_common(pc_cmd, c);

  auto* t12 = app.add_subcommand("verify-thm12", "Derivative growth at z = i against the closed form");
  t12->add_option("--k", c.k);
  t12->add_option("--r-list", c.r_list)->delimiter(',');
  t12->add_option("--m-list", c.m_list)->delimiter(',');
  t12->add_option("--max-dev", max_dev12, "Allowed |ratio-1| at the largest m");
  add_poincare(t12, c);
  add_common(t12, c);

  auto* t13 = app.add_subcommand("verify-thm13", "Shifted Faber coefficients against the closed form");
  t13->add_option("--k", c.k);
  t13->add_option("--r-list", c.r_list, "Integers, 'sqrt' or 'half'")->delimiter(',');
  t13->add_option("--m-list", c.m_list)->delimiter(',');
  t13->add_option("--max-dev", max_dev13, "Allowed |ratio-1| at the largest m");
  add_poincare(t13, c);
  add_common(t13, c);

  auto* p21 = app.add_subcommand("verify-prop21", "Constant coefficient as a combination of Poincare values");
  p21->add_option("--k", c.k);
  p21->add_option("--m-list", c.m_list)->delimiter(',');
  p21->add_option("--tol", tol21, "Allowed relative deviation");
  add_poincare(p21, c);
  add_common(p21, c);

  auto* p32 = app.add_subcommand("verify-prop32", "Fixed-m growth of holomorphic-part derivatives");
  p32->add_option("--k", c.k);
  p32->add_option("--m", c.m);
  p32->add_option("--r-list", c.r_list)->delimiter(',');
  p32->add_option("--eps", eps)->check(CLI::PositiveNumber);
  p32->add_option("--margin", margin, "Allowed growth of the log ratio across the grid");
  add_poincare(p32, c);
  add_common(p32, c);

  auto* lem = app.add_subcommand("lemma31", "int_0^inf x^l exp(-B (sqrt x - A)^2) dx: quadrature vs asymptotic");
  lem->add_option("--ell", ell);
  lem->add_option("--a-list", As)->delimiter(',');
  lem->add_option("--b", B)->check(CLI::PositiveNumber);
  add_common(lem, c);

  auto* cst = app.add_subcommand("constants", "C1, C2 and Delta(i)");
  cst->add_option("--k", c.k);
  cst->add_option("--trunc", c.trunc, "Base truncation (doubled for the cross-check)");
  add_common(cst, c);

  auto* rs = app.add_subcommand("root-scan", "Sign changes of F(m, 2-k; iy)");
  rs->add_option("--k", c.k)->required();
  rs->add_option("--m", c.m)->required();
  rs->add_option("--y-lo", lo)->check(CLI::PositiveNumber);
  rs->add_option("--y-hi", hi)->check(CLI::PositiveNumber);
  rs->add_option("--grid", grid)->check(CLI::PositiveNumber);
  add_poincare(rs, c);
  add_common(rs, c);

  auto* weil = app.add_subcommand("weil", "Sample Kloosterman sums against the Weil bound");
  weil->add_option("--c-max", c.c_max)->check(CLI::Range(2L, 1L << 20));
  weil->add_option("--samples", samples)->check(CLI::PositiveNumber);
  weil->add_option("--rng-seed", c.rng_seed);
  add_common(weil, c);

  // Subcommands that set their own default k.
  t12->preparse_callback([&](size_t) { c.k = 6; });
  t13->preparse_callback([&](size_t) { c.k = 6; });
  p21->preparse_callback([&](size_t) { c.k = 12; });
  p32->preparse_callback([&](size_t) {
    c.k = 2;
    c.m = 1;
  });
  cst->preparse_callback([&](size_t) {
    c.k = 6;
    c.trunc = 60;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  Out out(c);
  int rc = kOk;
  try {
    if (*faber_cmd) rc = cmd_faber(c, out);
    else if (*dual_cmd) rc = cmd_dual(c, dual_n, out);
    else if (*pc_cmd) rc = cmd_poincare(c, holo, out);
    else if (*t12) rc = cmd_thm12(c, max_dev12, out);
    else if (*t13) rc = cmd_thm13(c, max_dev13, out);
    else if (*p21) rc = cmd_prop21(c, tol21, out);
    else if (*p32) rc = cmd_prop32(c, eps, margin, out);
    else if (*lem) rc = cmd_lemma(c, ell, As, B, out);
    else if (*cst) rc = cmd_constants(c, out);
    else if (*rs) rc = cmd_root_scan(c, lo, hi, grid, out);
    else if (*weil) rc = cmd_weil(c, samples, out);
    out.flush();
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const TruncationError& e) {
    std::cerr << "error: " << e.what() << " (suggested size " << e.suggested() << ")\n";
    return kNumeric;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  } catch (const DualityViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kTrend;
  } catch (const Error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kNumeric;
  }
  if (rc == kTrend) std::cerr << "verification failed\n";
  return rc;
}
