#include "modasym/asympt.hpp"

#include <algorithm>
#include <cmath>

#include "modasym/errors.hpp"
#include "modasym/faber.hpp"
#include "modasym/qseries.hpp"

namespace modasym::asympt {

namespace {

constexpr double kTrendSlack = 1e-12;

void check_k(long k, const char* who) {
  if (k <= 2 || k % 2 != 0) throw DomainError(std::string(who) + ": k must be even and > 2");
}

std::string trend_key(const std::string& kind, const std::string& rlabel) { return kind + ":r=" + rlabel; }

// Fills trend_ok / final_dev from rows grouped by key, assuming each group is sorted by m.
void assess(TrendReport& rep, const std::map<std::string, std::vector<const ComparisonRow*>>& groups) {
  for (const auto& [key, rows] : groups) {
    bool ok = true;
    double prev = INFINITY;
    double last = NAN;
    for (const ComparisonRow* row : rows) {
      if (row->verdict == "exact-zero") continue;
      if (row->verdict != "ok") {
        ok = false;
        rep.notes.push_back(key + " m=" + std::to_string(row->m) + ": " + row->verdict);
        continue;
      }
      const double dev = std::fabs(row->ratio - 1.0);
      if (dev > prev + kTrendSlack) ok = false;
      prev = dev;
      last = dev;
    }
    rep.trend_ok[key] = ok;
    rep.final_dev[key] = last;
  }
}

poincare::PoincareOptions at_i(const DriverOptions& o, long r_max) {
  poincare::PoincareOptions p = o.poincare;
  p.y_min = std::min(p.y_min, 1.0);
  p.r_max = std::max(r_max, 0L);
  return p;
}

Real eval_iy(const qseries::LaurentQSeries& s, long r, long bits) {
  const PrecisionContext c{bits, 1e-30};
  return qseries::eval_deriv_at_iy(s, Real(1L, bits), r, c).value.to_real(bits);
}

struct RawConstants {
  Real C1, C2, delta, e6p;
};

RawConstants raw_constants(long k, long trunc, long bits) {
  const Real D = eval_iy(qseries::delta(trunc + 1), 0, bits);
  const Real e6p = eval_iy(qseries::eisenstein(6, trunc + 1), 1, bits);
  RawConstants out{Real(0L, bits), e6p * e6p / D, D, e6p};
  if (k > 2) {
    const long d = faber::weight_data(k).d;
    const long kp = faber::split_weight(2 - k).kprime;
    const long r = k % 4 == 2 ? 0 : 1;
    const Real num = eval_iy(qseries::eisenstein(kp, trunc + 1), r, bits);
    out.C1 = num / pow(D, d + 1);
  }
  return out;
}

double rel_dev(const Real& a, const Real& b) {
  if (a.is_zero() && b.is_zero()) return 0.0;
  return (abs(a - b) / max(abs(a), abs(b))).to_double();
}

}  // namespace

long a_r(long k, long r) { return k % 4 == 2 ? 2 * r : 2 * r + 1; }

Real x_factor(long k, long m, long rr, long bits) {
  if (m < 1) throw DomainError("x_factor: m must be >= 1");
  const Real one(1L, bits);
  const Real rad = one + Real(4 * rr - 2 * k + 3, bits) / (pi(bits) * 2L * m);
  if (rad.sign() < 0) throw RegimeError("x_factor: negative radicand for k=" + std::to_string(k) +
                                        " m=" + std::to_string(m) + " r=" + std::to_string(rr));
  return (one + sqrt(rad)) / 2L;
}

Real c_factor(const Real& X) {
  const Real rad = X + Real(1L, X.bits()) - Real(1L, X.bits()) / X;
  if (!(rad.sign() > 0)) throw DomainError("c_factor: X + 1 - 1/X must be positive");
  return Real(1L, X.bits()) / sqrt(rad);
}

Regime make_regime(long k, long m, long r, long bits) {
  const long a = a_r(k, r);
  Real X = x_factor(k, m, a, bits);
  Real C = c_factor(X);
  return {k, m, r, a, std::move(X), std::move(C)};
}

Real bracket(long k, long m, long a, long bits) {
  const Real X = x_factor(k, m, a, bits);
  const Real C = c_factor(X);
  const Real expo = Real(a, bits) - Real(k - 1, bits) / 2L + Real(0.25, bits);
  const Real xm1 = X - Real(1L, bits);
  return Real(1L, bits) + C * pow(X, expo) * exp(-pi(bits) * 2L * m * xm1 * xm1);
}

LogSigned thm12_rhs(long k, long m, long r, long bits) {
  if (k < 2 || k % 2 != 0) throw DomainError("thm12_rhs: k must be even and >= 2");
  if (r < 0 || r > m) throw RegimeError("thm12_rhs: need 0 <= r <= m");
  const long a = a_r(k, r);
  const Real two_pi_m = pi(bits) * 2L * m;
  const Real lg = lgamma(Real(k, bits)) + log(bracket(k, m, a, bits)) + log(two_pi_m) * a + two_pi_m;
  return LogSigned::from_log(lg);
}

Constants constants(long k, const PrecisionContext& ctx, long trunc) {
  ctx.validate();
  if (k != 0) check_k(k, "constants");
  if (trunc < 10) throw DomainError("constants: trunc must be >= 10");
  const long bits = ctx.bits;
  const RawConstants a = raw_constants(k, trunc, bits);
  const RawConstants b = raw_constants(k, 2 * trunc, bits);
  Constants c;
  c.k = k;
  c.trunc = trunc;
  c.c2_dual_dev = rel_dev(a.C2, b.C2);
  c.c1_dual_dev = k > 2 ? rel_dev(a.C1, b.C1) : 0.0;
  if (c.c2_dual_dev > 1e-20 || c.c1_dual_dev > 1e-20) {
    throw PrecisionError("constants: truncations " + std::to_string(trunc) + " and " + std::to_string(2 * trunc) +
                         " disagree");
  }
  c.C1 = k > 2 ? LogSigned::from_real(b.C1) : LogSigned{};
  c.C2 = b.C2;
  c.delta_i = b.delta;
  c.e6_prime = b.e6p;
  const Real eta = tgamma(Real(0.25, bits)) / (pow(pi(bits), Real(0.75, bits)) * 2L);
  c.delta_eta = pow(eta, 24);
  c.eta_dev = rel_dev(c.delta_i, c.delta_eta);

  Real lit(1L, bits);
  const Real two_pi = pi(bits) * 2L;
  for (long n = 1; n <= 2 * trunc; ++n) {
    lit += Real(BigInt(qseries::sigma(5, n) * n * 504), bits) * exp(-two_pi * n);
  }
  c.e6_prime_literal = lit;
  c.C2_literal = lit * lit / c.delta_i;
  return c;
}

LogSigned thm13_rhs(long k, long m, long r, const Constants& c, long bits) {
  check_k(k, "thm13_rhs");
  if (c.k != k) throw DomainError("thm13_rhs: constants computed for a different k");
  if (r < 0) throw RegimeError("thm13_rhs: r must be >= 0");
  const long a = a_r(k, r);
  const Real two_pi_m = pi(bits) * 2L * m;
  const Real lg = log(bracket(k, m, a, bits)) + log(two_pi_m) * a + two_pi_m - lgamma(Real(a + 1, bits)) -
                  c.C1.logmag().with_bits(bits) - log(c.C2.with_bits(bits)) * r;
  return LogSigned::from_log(lg);
}

long RSpec::resolve(long m) const {
  switch (kind) {
    case Kind::fixed: return r;
    case Kind::sqrt_m: return static_cast<long>(std::floor(std::sqrt(static_cast<double>(m)) + 1e-12));
    case Kind::half_m: return m / 2;
  }
  return r;
}

std::string RSpec::label() const {
  switch (kind) {
    case Kind::fixed: return std::to_string(r);
    case Kind::sqrt_m: return "sqrt";
    case Kind::half_m: return "half";
  }
  return "?";
}

RSpec RSpec::parse(const std::string& s) {
  if (s == "sqrt") return {Kind::sqrt_m, 0};
  if (s == "half") return {Kind::half_m, 0};
  size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw DomainError("r-spec: expected an integer, 'sqrt' or 'half', got '" + s + "'");
  }
  if (pos != s.size() || v < 0) throw DomainError("r-spec: expected a nonnegative integer, got '" + s + "'");
  return {Kind::fixed, v};
}

bool TrendReport::all_trends_ok() const {
  return std::all_of(trend_ok.begin(), trend_ok.end(), [](const auto& kv) { return kv.second; });
}

double TrendReport::max_final_dev(const std::string& kind) const {
  double worst = 0;
  for (const auto& [key, v] : final_dev) {
    if (key.rfind(kind + ":", 0) == 0 && std::isfinite(v)) worst = std::max(worst, v);
  }
  return worst;
}

TrendReport verify_thm12(long k, const std::vector<long>& r_list, const std::vector<long>& m_list,
                         const PrecisionContext& ctx, const DriverOptions& opts) {
  check_k(k, "verify_thm12");
  std::vector<long> ms = m_list;
  std::sort(ms.begin(), ms.end());
  long a_max = 0;
  for (long r : r_list) a_max = std::max(a_max, a_r(k, r));
  TrendReport rep;
  for (long m : ms) {
    std::optional<poincare::PoincareSeries> F;
    std::string build_err;
    try {
      F.emplace(k, m, at_i(opts, a_max), ctx);
    } catch (const NumericError& e) {
      build_err = e.what();
    }
    for (long r : r_list) {
      ComparisonRow row;
      row.kind = "thm12";
      row.k = k;
      row.m = m;
      row.r = r;
      row.a = a_r(k, r);
      if (r > m) {
        row.verdict = "regime: r > m";
        rep.rows.push_back(row);
        continue;
      }
      try {
        row.rhs = thm12_rhs(k, m, r);
        if (!F) throw NumericError(build_err);
        const auto res = F->deriv_eval(1.0, row.a);
        row.lhs = res.value.abs();
        row.lhs_tail = res.tail_estimate;
        row.ratio = ratio(row.lhs, row.rhs);
        row.verdict = "ok";
      } catch (const RegimeError& e) {
        row.verdict = std::string("regime: ") + e.what();
      } catch (const NumericError& e) {
        row.verdict = std::string("inconclusive: ") + e.what();
      }
      rep.rows.push_back(row);
    }
  }
  std::map<std::string, std::vector<const ComparisonRow*>> groups;
  for (const auto& row : rep.rows) groups[trend_key(row.kind, std::to_string(row.r))].push_back(&row);
  assess(rep, groups);
  return rep;
}

TrendReport verify_thm13(long k, const std::vector<RSpec>& r_list, const std::vector<long>& m_list,
                         const PrecisionContext& ctx, const DriverOptions& opts) {
  check_k(k, "verify_thm13");
  const Constants cst = constants(k, ctx);
  const faber::WeightSpec spec = faber::weight_data(k);
  const long bits = ctx.bits;
  std::vector<long> ms = m_list;
  std::sort(ms.begin(), ms.end());
  TrendReport rep;
  std::map<std::string, std::vector<const ComparisonRow*>> groups;
  std::vector<std::pair<std::string, size_t>> keyed;

  for (long m : ms) {
    const faber::FaberElement fe = faber::faber_form(spec, m, 4);
    long a_max = 0;
    for (const RSpec& rs : r_list) a_max = std::max(a_max, a_r(k, rs.resolve(m)));
    std::optional<poincare::PoincareSeries> F;
    std::string build_err;
    try {
      F.emplace(k, m, at_i(opts, a_max), ctx);
    } catch (const NumericError& e) {
      build_err = e.what();
    }
    for (const RSpec& rs : r_list) {
      const long r = rs.resolve(m);
      ComparisonRow row13;
      row13.kind = "thm13";
      row13.k = k;
      row13.m = m;
      row13.r = r;
      row13.a = a_r(k, r);
      ComparisonRow row11 = row13;
      row11.kind = "thm11";

      const bool in_degree = r < static_cast<long>(fe.cshift.size()) && sgn(fe.cshift[r]) != 0;
      if (k % 4 == 2 && r > m - 2) {
        row13.verdict = row11.verdict = "regime: r > m - 2";
      } else if (r > m) {
        row13.verdict = row11.verdict = "regime: r > m";
      } else if (!in_degree) {
        row13.verdict = row11.verdict = "exact-zero";
      } else {
        const LogSigned c = LogSigned::from_bigint(fe.cshift[r], bits).abs();
        row13.lhs = c;
        row13.rhs = thm13_rhs(k, m, r, cst);
        row13.ratio = ratio(row13.lhs, row13.rhs);
        row13.verdict = "ok";

        const Real lscale = lgamma(Real(k, bits)) + lgamma(Real(row11.a + 1, bits)) + cst.C1.logmag() +
                            log(cst.C2) * r;
        row11.lhs = c * LogSigned::from_log(lscale);
        try {
          if (!F) throw NumericError(build_err);
          const auto res = F->deriv_eval(1.0, row11.a);
          row11.rhs = res.value.abs();
          row11.lhs_tail = res.tail_estimate;
          row11.ratio = ratio(row11.lhs, row11.rhs);
          row11.verdict = "ok";
        } catch (const NumericError& e) {
          row11.verdict = std::string("inconclusive: ") + e.what();
        }
      }
      rep.rows.push_back(row13);
      keyed.emplace_back(trend_key("thm13", rs.label()), rep.rows.size() - 1);
      rep.rows.push_back(row11);
      keyed.emplace_back(trend_key("thm11", rs.label()), rep.rows.size() - 1);
    }
  }
  for (const auto& [key, idx] : keyed) groups[key].push_back(&rep.rows[idx]);
  assess(rep, groups);
  return rep;
}

double Prop21Report::max_rel_dev() const {
  double worst = 0;
  for (const auto& r : rows) worst = std::max(worst, r.rel_dev);
  return worst;
}

Prop21Report verify_prop21(long k, const std::vector<long>& m_list, const PrecisionContext& ctx,
                           const DriverOptions& opts) {
  check_k(k, "verify_prop21");
  const faber::WeightSpec spec = faber::weight_data(k);
  const Constants cst = constants(k, ctx);
  const long bits = ctx.bits + 64;
  const long a0 = a_r(k, 0);
  const Real C1 = cst.C1.to_real(bits);
  const Real gk = factorial(static_cast<unsigned long>(k - 1), bits);

  std::map<long, Real> Fval;
  auto F_at = [&](long n) -> const Real& {
    auto it = Fval.find(n);
    if (it != Fval.end()) return it->second;
    const poincare::PoincareSeries F(k, n, at_i(opts, a0), ctx);
    return Fval.emplace(n, F.deriv_eval(1.0, a0).value.to_real(bits)).first->second;
  };

  Prop21Report rep;
  for (long m : m_list) {
    if (m <= spec.d) throw DomainError("verify_prop21: m must exceed dim S_k");
    const faber::FaberElement fe = faber::faber_form(spec, m, 4);
    Prop21Row row{k, m, fe.cshift.at(0), faber::principal_part(fe), {}, {}, 0.0, std::nullopt};
    const Real lhs = gk * C1 * Real(row.c0, bits);
    Real rhs = F_at(m);
    for (const auto& [n, b] : row.b) {
      if (sgn(b) != 0) rhs += Real(b, bits) * F_at(n);
    }
    row.lhs = LogSigned::from_real(lhs);
    row.rhs = LogSigned::from_real(rhs);
    row.rel_dev = (abs(lhs - rhs) / abs(lhs)).to_double();
    if (k == 12) {
      const BigInt tau = qseries::delta(m + 1).coeff(m);
      row.b1_is_minus_tau = row.b.at(1) == -tau;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

LogSigned prop32_bound(long k, long m, long r, double eps, long bits) {
  if (k < 2 || k % 2 != 0) throw DomainError("prop32_bound: k must be even and >= 2");
  if (m < 1) throw DomainError("prop32_bound: m must be >= 1");
  if (!(eps > 0)) throw DomainError("prop32_bound: eps must be positive");
  const Real ell = Real(r, bits) - Real(k - 1, bits) / 2L - Real(0.25, bits);
  if (!(ell.sign() > 0)) throw RegimeError("prop32_bound: l = r - (k-1)/2 - 1/4 must be positive");
  const Real base = Real(1L, bits) / (pi(bits) * 2L) + Real(eps, bits);
  const Real half(0.5, bits);
  return LogSigned::from_log(ell * log(base) + lgamma(ell + half) + log(ell) * half);
}

Prop32Report verify_prop32(long k, long m, const std::vector<long>& r_list, double eps, const PrecisionContext& ctx,
                           double margin, const DriverOptions& opts) {
  if (r_list.empty()) throw DomainError("verify_prop32: empty r list");
  std::vector<long> rs = r_list;
  std::sort(rs.begin(), rs.end());
  poincare::PoincareOptions po = at_i(opts, rs.back());
  po.enforce_tail = false;
  const poincare::PoincareSeries F(k, m, po, ctx);
  Prop32Report rep{k, m, eps, margin, {}, -INFINITY, true};
  for (long r : rs) {
    const auto res = F.deriv_eval(1.0, r, poincare::Part::holomorphic);
    Prop32Row row{r, res.value, prop32_bound(k, m, r, eps), 0.0, res.tail_estimate};
    if (res.value.is_zero()) throw NumericError("verify_prop32: derivative evaluated to zero");
    row.log_ratio = (res.value.logmag() - row.bound.logmag()).to_double();
    rep.empirical_constant = std::max(rep.empirical_constant, row.log_ratio);
    rep.rows.push_back(row);
  }
  rep.bounded = rep.rows.back().log_ratio <= rep.rows.front().log_ratio + margin;
  return rep;
}

}  // namespace modasym::asympt
