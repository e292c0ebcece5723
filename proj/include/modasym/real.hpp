#pragma once

// Thin RAII value type over an MPFR float with per-value precision.
//
// Every Real carries its own precision. Binary operations produce a result at
// the larger of the two operand precisions; compound assignment keeps the
// precision of the left-hand side. Default construction and conversions from
// built-in types use the calling thread's default precision, which is set
// with PrecisionScope (thread-local, so OpenMP workers are independent).

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <utility>

namespace modasym {

using BigInt = mpz_class;
using Rational = mpq_class;

class Real {
 public:
  static long default_bits() noexcept;
  static void set_default_bits(long bits) noexcept;

  Real() : Real(0L) {}
  Real(int v) : Real(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Real(long v);                                 // NOLINT(google-explicit-constructor)
  Real(double v);                               // NOLINT(google-explicit-constructor)
  Real(long v, long bits);
  Real(double v, long bits);
  Real(long double v, long bits);
  Real(const BigInt& v, long bits);
  Real(const Rational& v, long bits);
  Real(const std::string& decimal, long bits);

  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  long bits() const noexcept { return static_cast<long>(mpfr_get_prec(v_)); }
  /// Same value, rounded to a different precision.
  Real with_bits(long bits) const;

  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_ptr get() noexcept { return v_; }

  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const noexcept { return mpfr_get_ld(v_, MPFR_RNDN); }
  /// Scientific notation with the given number of significant digits.
  std::string str(int digits = 20) const;

  int sign() const noexcept { return mpfr_sgn(v_); }
  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  /// Binary exponent e with 0.5 <= |x| / 2^e < 1 (meaningless for zero).
  long exponent2() const noexcept { return static_cast<long>(mpfr_get_exp(v_)); }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator*=(long o);
  Real& operator/=(long o);

  Real operator-() const;

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator*(const Real& a, long b);
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator/(const Real& a, long b);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);

  friend std::ostream& operator<<(std::ostream& os, const Real& x);

 private:
  struct Uninit {};
  explicit Real(Uninit, long bits);
  mpfr_t v_;
};

/// Sets the calling thread's default precision for the lifetime of the scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(long bits) : saved_(Real::default_bits()) { Real::set_default_bits(bits); }
  ~PrecisionScope() { Real::set_default_bits(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  long saved_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real cos(const Real& x);
Real sin(const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real erfc(const Real& x);
Real erf(const Real& x);
Real lgamma(const Real& x);  // log|Gamma(x)|
Real tgamma(const Real& x);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

Real pi(long bits);
Real log2_const(long bits);
/// n! exactly rounded at the given precision.
Real factorial(unsigned long n, long bits);

/// Exact integer factorial and binomial.
BigInt big_factorial(unsigned long n);
BigInt big_binomial(unsigned long n, unsigned long k);

std::string to_string(const BigInt& v);

}  // namespace modasym
