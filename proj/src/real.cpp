#include "modasym/real.hpp"

#include <algorithm>
#include <memory>
#include <ostream>

namespace modasym {

namespace {

thread_local long tl_default_bits = 256;

mpfr_prec_t clamp_prec(long bits) {
  return static_cast<mpfr_prec_t>(std::clamp<long>(bits, MPFR_PREC_MIN, MPFR_PREC_MAX));
}

}  // namespace

long Real::default_bits() noexcept { return tl_default_bits; }
void Real::set_default_bits(long bits) noexcept { tl_default_bits = bits; }

Real::Real(Uninit, long bits) { mpfr_init2(v_, clamp_prec(bits)); }

Real::Real(long v) : Real(v, tl_default_bits) {}
Real::Real(double v) : Real(v, tl_default_bits) {}

Real::Real(long v, long bits) : Real(Uninit{}, bits) { mpfr_set_si(v_, v, MPFR_RNDN); }
Real::Real(double v, long bits) : Real(Uninit{}, bits) { mpfr_set_d(v_, v, MPFR_RNDN); }
Real::Real(long double v, long bits) : Real(Uninit{}, bits) { mpfr_set_ld(v_, v, MPFR_RNDN); }
Real::Real(const BigInt& v, long bits) : Real(Uninit{}, bits) {
  mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}
Real::Real(const Rational& v, long bits) : Real(Uninit{}, bits) {
  mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}
Real::Real(const std::string& decimal, long bits) : Real(Uninit{}, bits) {
  mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN);
}

Real::Real(const Real& o) : Real(Uninit{}, o.bits()) { mpfr_set(v_, o.v_, MPFR_RNDN); }

Real::Real(Real&& o) noexcept : Real(Uninit{}, MPFR_PREC_MIN) { mpfr_swap(v_, o.v_); }

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::with_bits(long bits) const {
  Real r(Uninit{}, bits);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

std::string Real::str(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return sign() > 0 ? "inf" : "-inf";
  char* buf = nullptr;
  std::string fmt = "%." + std::to_string(std::max(1, digits - 1)) + "Re";
  mpfr_asprintf(&buf, fmt.c_str(), v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

Real& Real::operator+=(const Real& o) {
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(long o) {
  mpfr_mul_si(v_, v_, o, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(long o) {
  mpfr_div_si(v_, v_, o, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real r(Uninit{}, bits());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

#define MODASYM_BINOP(op, fn)                              \
  Real operator op(const Real& a, const Real& b) {         \
    Real r(Real::Uninit{}, std::max(a.bits(), b.bits())); \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                       \
    return r;                                              \
  }
MODASYM_BINOP(+, mpfr_add)
MODASYM_BINOP(-, mpfr_sub)
MODASYM_BINOP(*, mpfr_mul)
MODASYM_BINOP(/, mpfr_div)
#undef MODASYM_BINOP

Real operator*(const Real& a, long b) {
  Real r(Real::Uninit{}, a.bits());
  mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, long b) {
  Real r(Real::Uninit{}, a.bits());
  mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.str(static_cast<int>(os.precision())); }

#define MODASYM_UNARY(name, fn)         \
  Real name(const Real& x) {            \
    Real r(0L, x.bits());               \
    fn(r.get(), x.get(), MPFR_RNDN);    \
    return r;                           \
  }
MODASYM_UNARY(abs, mpfr_abs)
MODASYM_UNARY(sqrt, mpfr_sqrt)
MODASYM_UNARY(exp, mpfr_exp)
MODASYM_UNARY(log, mpfr_log)
MODASYM_UNARY(cos, mpfr_cos)
MODASYM_UNARY(sin, mpfr_sin)
MODASYM_UNARY(erfc, mpfr_erfc)
MODASYM_UNARY(erf, mpfr_erf)
MODASYM_UNARY(tgamma, mpfr_gamma)
#undef MODASYM_UNARY

Real lgamma(const Real& x) {
  Real r(0L, x.bits());
  int sgn = 0;
  mpfr_lgamma(r.get(), &sgn, x.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r(0L, std::max(x.bits(), y.bits()));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, long n) {
  Real r(0L, x.bits());
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real pi(long bits) {
  Real r(0L, bits);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

Real log2_const(long bits) {
  Real r(0L, bits);
  mpfr_const_log2(r.get(), MPFR_RNDN);
  return r;
}

Real factorial(unsigned long n, long bits) {
  Real r(0L, bits);
  mpfr_fac_ui(r.get(), n, MPFR_RNDN);
  return r;
}

BigInt big_factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt big_binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::string to_string(const BigInt& v) { return v.get_str(10); }

}  // namespace modasym
