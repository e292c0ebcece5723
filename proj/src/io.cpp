#include "modasym/io.hpp"

#include <cmath>
#include <cstdio>

namespace modasym::io {

namespace {

json big(const BigInt& v) { return to_string(v); }

json bigs(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(big(x));
  return a;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string fmt(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

json log10_or_null(const LogSigned& x) {
  if (x.is_zero()) return nullptr;
  return x.log10_abs();
}

json to_json(const qseries::LaurentQSeries& s) {
  return {{"valuation", s.valuation()}, {"trunc", s.trunc()}, {"coeffs", bigs(s.coeffs())}};
}

json to_json(const faber::FaberElement& e) {
  json principal = json::object();
  for (const auto& [n, b] : e.principal) principal[std::to_string(n)] = big(b);
  return {{"k", e.spec.k},           {"m", e.m},
          {"d", e.spec.d},           {"kprime", e.spec.kprime},
          {"zero", e.is_zero()},     {"series", to_json(e.series)},
          {"fpoly", bigs(e.fpoly)},  {"cshift", bigs(e.cshift)},
          {"principal", principal}};
}

json to_json(const faber::DualityReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) v.push_back({{"m", x.m}, {"n", x.n}, {"lhs", big(x.lhs)}, {"rhs", big(x.rhs)}});
  return {{"k", r.k},
          {"M", r.M},
          {"N", r.N},
          {"epsilon", r.epsilon},
          {"pairs_checked", r.pairs_checked},
          {"pairs_skipped", r.pairs_skipped},
          {"violations", v}};
}

json to_json(const poincare::PoincareResult& r) {
  json j = {{"k", r.k},
            {"m", r.m},
            {"y", r.y.to_double()},
            {"r", r.r},
            {"sign", r.value.sign()},
            {"log10_magnitude", log10_or_null(r.value)},
            {"n_used", r.n_used},
            {"c_used", r.c_used},
            {"log10_tail", log10_or_null(r.tail_estimate)}};
  if (!r.x.is_zero()) {
    j["x"] = r.x.to_double();
    j["imag_sign"] = r.imag.sign();
    j["imag_log10_magnitude"] = log10_or_null(r.imag);
  }
  return j;
}

json to_json(const poincare::NonholoResidual& r) {
  return {{"k", r.k},
          {"m", r.m},
          {"n", r.n},
          {"log10_residual", log10_or_null(r.residual)},
          {"log10_c1_term", log10_or_null(r.c1_term)},
          {"log10_tail", log10_or_null(r.tail)},
          {"relative", finite_or_null(r.relative())}};
}

json to_json(const poincare::RootScan& r) {
  json roots = json::array();
  for (const auto& b : r.roots) {
    roots.push_back({{"lo", b.lo},
                     {"hi", b.hi},
                     {"root", b.root},
                     {"deriv_sign", b.deriv.sign()},
                     {"log10_deriv", log10_or_null(b.deriv)},
                     {"log10_deriv_tail", log10_or_null(b.deriv_tail)},
                     {"simple", b.simple}});
  }
  return {{"k", r.k},   {"m", r.m},         {"y_lo", r.y_lo},         {"y_hi", r.y_hi},
          {"grid", r.grid}, {"roots", roots}, {"warnings", r.warnings}};
}

json to_json(const asympt::ComparisonRow& r) {
  return {{"kind", r.kind},
          {"k", r.k},
          {"m", r.m},
          {"r", r.r},
          {"a_r", r.a},
          {"lhs_log10", log10_or_null(r.lhs)},
          {"rhs_log10", log10_or_null(r.rhs)},
          {"ratio", r.verdict == "ok" ? finite_or_null(r.ratio) : json(nullptr)},
          {"tail_log10", log10_or_null(r.lhs_tail)},
          {"verdict", r.verdict}};
}

json to_json(const asympt::TrendReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back(to_json(row));
  json trends = json::object();
  for (const auto& [key, ok] : r.trend_ok) {
    trends[key] = {{"nonincreasing", ok}, {"final_deviation", finite_or_null(r.final_dev.at(key))}};
  }
  return {{"rows", rows}, {"trends", trends}, {"notes", r.notes}};
}

json to_json(const asympt::Constants& c) {
  json j = {{"k", c.k},
            {"trunc", c.trunc},
            {"C2", c.C2.str(30)},
            {"Delta_i", c.delta_i.str(30)},
            {"Delta_i_eta", c.delta_eta.str(30)},
            {"inv_Delta_i", (Real(1L, c.delta_i.bits()) / c.delta_i).str(30)},
            {"E6_prime_i", c.e6_prime.str(30)},
            {"E6_prime_literal", c.e6_prime_literal.str(30)},
            {"C2_literal", c.C2_literal.str(30)},
            {"C2_dual_truncation_dev", c.c2_dual_dev},
            {"eta_dev", c.eta_dev},
            {"printed_C2", asympt::kPrintedC2},
            {"printed_inv_Delta_i", asympt::kPrintedInvDelta},
            {"C2_vs_printed", c.C2.to_double() / asympt::kPrintedC2},
            {"inv_Delta_vs_printed", 1.0 / c.delta_i.to_double() / asympt::kPrintedInvDelta}};
  if (c.k > 2) {
    j["C1_sign"] = c.C1.sign();
    j["C1"] = c.C1.to_real(c.C2.bits()).str(30);
    j["C1_dual_truncation_dev"] = c.c1_dual_dev;
  }
  return j;
}

json to_json(const asympt::Prop21Report& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json b = json::object();
    for (const auto& [n, v] : row.b) b[std::to_string(n)] = big(v);
    json j = {{"k", row.k},
              {"m", row.m},
              {"c_m0", big(row.c0)},
              {"b", b},
              {"lhs_log10", log10_or_null(row.lhs)},
              {"lhs_sign", row.lhs.sign()},
              {"rhs_log10", log10_or_null(row.rhs)},
              {"rhs_sign", row.rhs.sign()},
              {"rel_dev", row.rel_dev}};
    if (row.b1_is_minus_tau) j["b1_is_minus_tau"] = *row.b1_is_minus_tau;
    rows.push_back(j);
  }
  return {{"rows", rows}, {"max_rel_dev", r.max_rel_dev()}};
}

json to_json(const asympt::Prop32Report& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"r", row.r},
                    {"lhs_sign", row.lhs.sign()},
                    {"lhs_log10", log10_or_null(row.lhs)},
                    {"bound_log10", log10_or_null(row.bound)},
                    {"log_ratio", row.log_ratio},
                    {"tail_log10", log10_or_null(row.lhs_tail)}});
  }
  return {{"k", r.k},
          {"m", r.m},
          {"eps", r.eps},
          {"margin", r.margin},
          {"rows", rows},
          {"empirical_constant", r.empirical_constant},
          {"bounded", r.bounded}};
}

std::string comparison_csv_header() { return "k,m,r,a_r,lhs_log10,rhs_log10,ratio,tail_log10,verdict"; }

std::string to_csv(const asympt::ComparisonRow& r) {
  auto l10 = [](const LogSigned& x) { return x.is_zero() ? std::string() : fmt(x.log10_abs(), 12); };
  std::string verdict = r.verdict;
  for (char& ch : verdict) {
    if (ch == ',' || ch == '\n') ch = ';';
  }
  return std::to_string(r.k) + "," + std::to_string(r.m) + "," + std::to_string(r.r) + "," + std::to_string(r.a) +
         "," + l10(r.lhs) + "," + l10(r.rhs) + "," + (r.verdict == "ok" ? fmt(r.ratio, 12) : std::string()) + "," +
         l10(r.lhs_tail) + "," + r.kind + ":" + verdict;
}

}  // namespace modasym::io
