#pragma once

// Closed-form asymptotic right-hand sides for derivatives of F(m, 2-k; i)
// and for the shifted Faber coefficients c_{m,r}, the constants C1 and C2,
// and drivers that compare them against evaluated or exact left-hand sides.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modasym/log_signed.hpp"
#include "modasym/poincare.hpp"
#include "modasym/precision.hpp"
#include "modasym/real.hpp"

namespace modasym::asympt {

/// Derivative order paired with the r-th coefficient: 2r for k = 2 mod 4, else 2r + 1.
long a_r(long k, long r);

/// X(rr, m) = (1 + sqrt(1 + (4 rr - 2k + 3) / (2 pi m))) / 2. RegimeError on a negative radicand.
Real x_factor(long k, long m, long rr, long bits = 128);
/// 1 / sqrt(X + 1 - 1/X). DomainError when the radicand is not positive.
Real c_factor(const Real& X);

struct Regime {
  long k, m, r, a;
  Real X, C;
};
Regime make_regime(long k, long m, long r, long bits = 128);

/// 1 + C X^{a - (k-1)/2 + 1/4} exp(-2 pi m (X - 1)^2) with X = X(a, m).
Real bracket(long k, long m, long a, long bits = 128);

/// Gamma(k) * bracket * (2 pi m)^a * e^{2 pi m} with a = a_r(k, r). Requires r <= m.
LogSigned thm12_rhs(long k, long m, long r, long bits = 128);

struct Constants {
  long k = 0;
  long trunc = 0;
  /// C1 per the k mod 4 case split, signed.
  LogSigned C1;
  /// (E6'(i))^2 / Delta(i) with the strict d/dy convention.
  Real C2;
  Real delta_i;
  /// eta(i)^24 = (Gamma(1/4) / (2 pi^{3/4}))^24.
  Real delta_eta;
  /// E6'(i), and the literal expression 1 + 504 sum n sigma_5(n) e^{-2 pi n}.
  Real e6_prime;
  Real e6_prime_literal;
  /// (E6 literal)^2 / Delta(i), for comparison only.
  Real C2_literal;
  /// Relative disagreement between truncations trunc and 2 trunc.
  double c1_dual_dev = 0, c2_dual_dev = 0;
  double eta_dev = 0;
};

inline constexpr double kPrintedC2 = 585.200048;
inline constexpr double kPrintedInvDelta = 536.4954009;

/// Constants for weight k > 2 (k = 0 gives only the k-independent ones).
/// PrecisionError when the two truncations disagree beyond 1e-20.
Constants constants(long k, const PrecisionContext& ctx, long trunc = 60);

/// (bracket) (2 pi m)^a e^{2 pi m} / (a! C1 C2^r).
LogSigned thm13_rhs(long k, long m, long r, const Constants& c, long bits = 128);

struct ComparisonRow {
  std::string kind;  // "thm12", "thm13", "thm11", "prop21"
  long k = 0, m = 0, r = 0, a = 0;
  LogSigned lhs, rhs;
  double ratio = 0;
  LogSigned lhs_tail;
  /// "ok", "exact-zero", "inconclusive: ..." or "regime: ...".
  std::string verdict;
};

/// r-value or m-dependent schedule for the coefficient driver.
struct RSpec {
  enum class Kind { fixed, sqrt_m, half_m } kind = Kind::fixed;
  long r = 0;
  long resolve(long m) const;
  std::string label() const;
  static RSpec parse(const std::string& s);
};

struct TrendReport {
  std::vector<ComparisonRow> rows;
  /// Per (kind, r label): |ratio - 1| nonincreasing in m.
  std::map<std::string, bool> trend_ok;
  /// Per (kind, r label): |ratio - 1| at the largest m.
  std::map<std::string, double> final_dev;
  std::vector<std::string> notes;
  bool all_trends_ok() const;
  double max_final_dev(const std::string& kind) const;
};

/// Poincare settings for the drivers; y_min and r_max are set per row.
struct DriverOptions {
  poincare::PoincareOptions poincare{};
};

/// lhs = |F^{(a_r)}(m, 2-k; i)|, rhs = thm12_rhs.
TrendReport verify_thm12(long k, const std::vector<long>& r_list, const std::vector<long>& m_list,
                         const PrecisionContext& ctx, const DriverOptions& opts = {});

/// Exact |c_{m,r}| against bracket (2 pi m)^a e^{2 pi m} / (a! C1 C2^r), and
/// Gamma(k) a! C1 C2^r |c_{m,r}| against |F^{(a)}(m, 2-k; i)| (kind "thm11").
TrendReport verify_thm13(long k, const std::vector<RSpec>& r_list, const std::vector<long>& m_list,
                         const PrecisionContext& ctx, const DriverOptions& opts = {});

struct Prop21Row {
  long k, m;
  BigInt c0;
  std::map<long, BigInt> b;
  /// Gamma(k) C1 c_{m,0}.
  LogSigned lhs;
  /// F^{(a0)}(m) + sum b_n F^{(a0)}(n), a0 = 0 or 1.
  LogSigned rhs;
  double rel_dev;
  /// k = 12 only: b_1 == -tau(m).
  std::optional<bool> b1_is_minus_tau;
};

struct Prop21Report {
  std::vector<Prop21Row> rows;
  double max_rel_dev() const;
};

/// Gamma(k) C1 c_{m,0} = F(m) + sum_n b_n F(n) (first derivatives when
/// k = 0 mod 4) with b_n the principal part of f_{2-k,m}.
Prop21Report verify_prop21(long k, const std::vector<long>& m_list, const PrecisionContext& ctx,
                           const DriverOptions& opts = {});

/// (1/(2 pi) + eps)^l Gamma(l + 1/2) l^{1/2}, l = r - (k-1)/2 - 1/4. RegimeError when l <= 0.
LogSigned prop32_bound(long k, long m, long r, double eps, long bits = 128);

struct Prop32Row {
  long r;
  LogSigned lhs;
  LogSigned bound;
  /// log|lhs| - log(bound).
  double log_ratio;
  LogSigned lhs_tail;
};

struct Prop32Report {
  long k, m;
  double eps;
  double margin;
  std::vector<Prop32Row> rows;
  /// max log_ratio over the grid.
  double empirical_constant;
  /// log_ratio at the largest r exceeds the smallest-r value by at most margin.
  bool bounded;
};

Prop32Report verify_prop32(long k, long m, const std::vector<long>& r_list, double eps, const PrecisionContext& ctx,
                           double margin = 5.0, const DriverOptions& opts = {});

}  // namespace modasym::asympt
