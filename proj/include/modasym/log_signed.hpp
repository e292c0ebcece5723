#pragma once

// Sign plus natural-log magnitude, for quantities far outside double range
// (values of order e^{2 pi m} raised to derivative orders).

#include <compare>
#include <string>

#include "modasym/real.hpp"

namespace modasym {

class LogSigned {
 public:
  LogSigned() = default;  // zero
  LogSigned(int sign, Real logmag);

  static LogSigned zero() { return {}; }
  static LogSigned from_real(const Real& x);
  static LogSigned from_double(double x);
  static LogSigned from_bigint(const BigInt& x, long bits);
  /// exp(logmag) with positive sign.
  static LogSigned from_log(const Real& logmag) { return {1, logmag}; }

  int sign() const noexcept { return sign_; }
  bool is_zero() const noexcept { return sign_ == 0; }
  /// Natural log of |value|; meaningless when zero.
  const Real& logmag() const noexcept { return logmag_; }
  double log10_abs() const;

  /// Faithful when the magnitude is representable at the given precision.
  Real to_real(long bits) const;
  double to_double() const;

  LogSigned abs() const { return sign_ == 0 ? LogSigned{} : LogSigned{1, logmag_}; }
  LogSigned operator-() const;

  LogSigned& operator*=(const LogSigned& o);
  LogSigned& operator/=(const LogSigned& o);
  LogSigned& operator+=(const LogSigned& o);
  LogSigned& operator-=(const LogSigned& o) { return *this += -o; }

  friend LogSigned operator*(LogSigned a, const LogSigned& b) { return a *= b; }
  friend LogSigned operator/(LogSigned a, const LogSigned& b) { return a /= b; }
  friend LogSigned operator+(LogSigned a, const LogSigned& b) { return a += b; }
  friend LogSigned operator-(LogSigned a, const LogSigned& b) { return a -= b; }

  LogSigned pow(long n) const;
  /// |x|^p for real p; requires a nonzero base.
  LogSigned pow(const Real& p) const;

  friend std::partial_ordering operator<=>(const LogSigned& a, const LogSigned& b);
  friend bool operator==(const LogSigned& a, const LogSigned& b) { return (a <=> b) == 0; }

  /// "-1.2345e+108" style rendering through log10.
  std::string str(int digits = 10) const;

 private:
  int sign_ = 0;
  Real logmag_{0L, 64};
};

/// exp(a.logmag - b.logmag) * sign(a)*sign(b): the ratio as a double.
double ratio(const LogSigned& a, const LogSigned& b);

}  // namespace modasym
