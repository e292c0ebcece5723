#include "modasym/log_signed.hpp"

#include <cmath>
#include <sstream>

#include "modasym/errors.hpp"

namespace modasym {

LogSigned::LogSigned(int sign, Real logmag) : sign_(sign > 0 ? 1 : (sign < 0 ? -1 : 0)), logmag_(std::move(logmag)) {}

LogSigned LogSigned::from_real(const Real& x) {
  if (x.is_zero()) return {};
  return {x.sign(), log(modasym::abs(x))};
}

LogSigned LogSigned::from_double(double x) { return from_real(Real(x, 64)); }

LogSigned LogSigned::from_bigint(const BigInt& x, long bits) {
  if (x == 0) return {};
  return {sgn(x), log(Real(BigInt(::abs(x)), bits))};
}

double LogSigned::log10_abs() const {
  if (sign_ == 0) return -INFINITY;
  return (logmag_ / log(Real(10L, logmag_.bits()))).to_double();
}

Real LogSigned::to_real(long bits) const {
  if (sign_ == 0) return Real(0L, bits);
  Real v = exp(logmag_.with_bits(bits));
  return sign_ < 0 ? -v : v;
}

double LogSigned::to_double() const { return to_real(64).to_double(); }

LogSigned LogSigned::operator-() const { return {-sign_, logmag_}; }

LogSigned& LogSigned::operator*=(const LogSigned& o) {
  if (sign_ == 0 || o.sign_ == 0) return *this = LogSigned{};
  sign_ *= o.sign_;
  logmag_ += o.logmag_;
  return *this;
}

LogSigned& LogSigned::operator/=(const LogSigned& o) {
  if (o.sign_ == 0) throw DomainError("LogSigned: division by zero");
  if (sign_ == 0) return *this;
  sign_ *= o.sign_;
  logmag_ -= o.logmag_;
  return *this;
}

LogSigned& LogSigned::operator+=(const LogSigned& o) {
  if (o.sign_ == 0) return *this;
  if (sign_ == 0) return *this = o;
  // Factor out the larger magnitude: a + b = A (s_a + s_b e^{logb - loga}).
  const bool this_bigger = logmag_ >= o.logmag_;
  const LogSigned& big = this_bigger ? *this : o;
  const LogSigned& small = this_bigger ? o : *this;
  Real rel = exp(small.logmag_ - big.logmag_);
  Real factor = big.sign_ == small.sign_ ? Real(1L, rel.bits()) + rel : Real(1L, rel.bits()) - rel;
  if (factor.is_zero()) return *this = LogSigned{};
  Real lm = big.logmag_ + log(modasym::abs(factor));
  int s = big.sign_ * factor.sign();
  sign_ = s;
  logmag_ = std::move(lm);
  return *this;
}

LogSigned LogSigned::pow(long n) const {
  if (n == 0) return {1, Real(0L, logmag_.bits())};
  if (sign_ == 0) {
    if (n < 0) throw DomainError("LogSigned: zero to a negative power");
    return {};
  }
  int s = (sign_ < 0 && (n % 2 != 0)) ? -1 : 1;
  return {s, logmag_ * n};
}

LogSigned LogSigned::pow(const Real& p) const {
  if (sign_ == 0) throw DomainError("LogSigned: real power of zero");
  return {1, logmag_ * p};
}

std::partial_ordering operator<=>(const LogSigned& a, const LogSigned& b) {
  if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
  if (a.sign_ == 0) return std::partial_ordering::equivalent;
  auto c = a.logmag_ <=> b.logmag_;
  if (a.sign_ < 0) {
    if (c == std::partial_ordering::less) return std::partial_ordering::greater;
    if (c == std::partial_ordering::greater) return std::partial_ordering::less;
  }
  return c;
}

std::string LogSigned::str(int digits) const {
  if (sign_ == 0) return "0";
  const double l10 = log10_abs();
  const double ex = std::floor(l10);
  const double mant = std::pow(10.0, l10 - ex);
  std::ostringstream os;
  os.precision(digits);
  os << (sign_ < 0 ? "-" : "") << mant << "e" << (ex >= 0 ? "+" : "") << static_cast<long long>(ex);
  return os.str();
}

double ratio(const LogSigned& a, const LogSigned& b) {
  if (b.is_zero()) throw DomainError("ratio: zero denominator");
  if (a.is_zero()) return 0.0;
  const double r = std::exp((a.logmag() - b.logmag()).to_double());
  return a.sign() * b.sign() * r;
}

}  // namespace modasym
