#pragma once

// Truncated Laurent series in q = e^{2 pi i z} with exact integer
// coefficients, the classical level-one forms built from them, and numeric
// evaluation of such series (and their y-derivatives) on the imaginary axis.

#include <vector>

#include "modasym/log_signed.hpp"
#include "modasym/precision.hpp"
#include "modasym/real.hpp"

namespace modasym::qseries {

/// sum_{i} coeffs[i] q^{valuation + i} + O(q^{trunc}).
///
/// Normalized: coeffs.size() == trunc - valuation and coeffs[0] != 0, except
/// the zero series, which has valuation == trunc and no coefficients.
class LaurentQSeries {
 public:
  /// Zero series known to O(q^0).
  LaurentQSeries() = default;
  LaurentQSeries(long valuation, std::vector<BigInt> coeffs);

  static LaurentQSeries zero(long trunc);
  static LaurentQSeries constant(const BigInt& c, long trunc);
  static LaurentQSeries monomial(long exponent, const BigInt& c, long trunc);

  long valuation() const noexcept { return valuation_; }
  long trunc() const noexcept { return valuation_ + static_cast<long>(coeffs_.size()); }
  /// Number of known coefficients from the leading term on.
  long relative_precision() const noexcept { return static_cast<long>(coeffs_.size()); }
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Coefficient of q^e; PrecisionError if e >= trunc.
  BigInt coeff(long e) const;
  /// Drops every coefficient at exponent >= new_trunc.
  LaurentQSeries truncated(long new_trunc) const;

  LaurentQSeries operator-() const;
  LaurentQSeries& operator*=(const BigInt& c);

  friend bool operator==(const LaurentQSeries& a, const LaurentQSeries& b) = default;

 private:
  void normalize(long trunc);
  long valuation_ = 0;
  std::vector<BigInt> coeffs_;
};

enum class SeriesOp { add, sub, mul, div };

LaurentQSeries series_arith(const LaurentQSeries& a, const LaurentQSeries& b, SeriesOp op);
LaurentQSeries operator+(const LaurentQSeries& a, const LaurentQSeries& b);
LaurentQSeries operator-(const LaurentQSeries& a, const LaurentQSeries& b);
LaurentQSeries operator*(const LaurentQSeries& a, const LaurentQSeries& b);
LaurentQSeries operator*(const LaurentQSeries& a, const BigInt& c);
/// Exact division. Unit leading coefficient uses the recursive inverse;
/// otherwise every step must divide exactly (DivisibilityError if not).
LaurentQSeries operator/(const LaurentQSeries& a, const LaurentQSeries& b);
/// Coefficientwise exact division by an integer.
LaurentQSeries exact_divide(const LaurentQSeries& a, const BigInt& c);
/// Inverse of a series with leading coefficient +-1.
LaurentQSeries inverse(const LaurentQSeries& a);
/// Integer power; negative exponents need a unit leading coefficient.
LaurentQSeries pow(const LaurentQSeries& a, long n);

/// sum_{d | n} d^t.
BigInt sigma(long t, long n);
/// Bernoulli number B_n (B_1 = -1/2).
Rational bernoulli(long n);
/// Normalized Eisenstein series E_w (E_0 = 1), coefficients exponents < trunc.
LaurentQSeries eisenstein(long w, long trunc);
/// q prod (1 - q^n)^24.
LaurentQSeries delta_eta_product(long trunc);
/// (E_4^3 - E_6^2) / 1728 with exact division.
LaurentQSeries delta_eisenstein(long trunc);
/// Delta, built both ways; InternalError if they ever disagree.
LaurentQSeries delta(long trunc);
/// j = E_4^3 / Delta.
LaurentQSeries jinv(long trunc);

/// Numerical value on the imaginary axis with truncation diagnostics.
struct SeriesValue {
  LogSigned value;
  /// Heuristic bound on the omitted terms, from the first omitted exponent.
  LogSigned tail;
  /// Largest |term| in the evaluated sum.
  LogSigned term_scale;
};

/// d^r/dy^r of s(iy) = sum a_n (-2 pi n)^r e^{-2 pi n y}.
/// TruncationError (carrying an estimated trunc) when the tail exceeds
/// ctx.target_rel_tol relative to max(|value|, tol * term_scale).
SeriesValue eval_deriv_at_iy(const LaurentQSeries& s, const Real& y, long r, const PrecisionContext& ctx);
/// Convenience overload for double y.
SeriesValue eval_deriv_at_iy(const LaurentQSeries& s, double y, long r, const PrecisionContext& ctx);

/// Value at a general point z = x + iy: (real, imaginary) at ctx.bits.
std::pair<Real, Real> eval_at(const LaurentQSeries& s, const Real& x, const Real& y, const PrecisionContext& ctx);

}  // namespace modasym::qseries
