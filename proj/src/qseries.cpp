#include "modasym/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "modasym/errors.hpp"

namespace modasym::qseries {

LaurentQSeries::LaurentQSeries(long valuation, std::vector<BigInt> coeffs)
    : valuation_(valuation), coeffs_(std::move(coeffs)) {
  normalize(valuation + static_cast<long>(coeffs_.size()));
}

void LaurentQSeries::normalize(long trunc) {
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c != 0; });
  if (first == coeffs_.end()) {
    coeffs_.clear();
    valuation_ = trunc;
    return;
  }
  valuation_ += static_cast<long>(first - coeffs_.begin());
  coeffs_.erase(coeffs_.begin(), first);
}

LaurentQSeries LaurentQSeries::zero(long trunc) { return LaurentQSeries(trunc, {}); }

LaurentQSeries LaurentQSeries::constant(const BigInt& c, long trunc) {
  return monomial(0, c, trunc);
}

LaurentQSeries LaurentQSeries::monomial(long exponent, const BigInt& c, long trunc) {
  if (trunc <= exponent) return zero(trunc);
  std::vector<BigInt> v(static_cast<size_t>(trunc - exponent));
  v[0] = c;
  return LaurentQSeries(exponent, std::move(v));
}

BigInt LaurentQSeries::coeff(long e) const {
  if (e >= trunc()) {
    throw PrecisionError("coefficient of q^" + std::to_string(e) + " requested but series is known only to O(q^" +
                         std::to_string(trunc()) + ")");
  }
  if (e < valuation_) return 0;
  return coeffs_[static_cast<size_t>(e - valuation_)];
}

LaurentQSeries LaurentQSeries::truncated(long new_trunc) const {
  if (new_trunc > trunc()) {
    throw PrecisionError("cannot extend truncation from " + std::to_string(trunc()) + " to " +
                         std::to_string(new_trunc));
  }
  if (new_trunc <= valuation_) return zero(new_trunc);
  std::vector<BigInt> v(coeffs_.begin(), coeffs_.begin() + (new_trunc - valuation_));
  return LaurentQSeries(valuation_, std::move(v));
}

LaurentQSeries LaurentQSeries::operator-() const {
  LaurentQSeries r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

LaurentQSeries& LaurentQSeries::operator*=(const BigInt& c) {
  const long t = trunc();
  for (auto& x : coeffs_) x *= c;
  normalize(t);
  return *this;
}

namespace {

LaurentQSeries add_sub(const LaurentQSeries& a, const LaurentQSeries& b, bool subtract) {
  const long t = std::min(a.trunc(), b.trunc());
  const long v = std::min(a.valuation(), b.valuation());
  if (t <= v) return LaurentQSeries::zero(t);
  std::vector<BigInt> out(static_cast<size_t>(t - v));
  for (long e = a.valuation(); e < t; ++e) out[e - v] = a.coeffs()[e - a.valuation()];
  for (long e = b.valuation(); e < t; ++e) {
    if (subtract) {
      out[e - v] -= b.coeffs()[e - b.valuation()];
    } else {
      out[e - v] += b.coeffs()[e - b.valuation()];
    }
  }
  return LaurentQSeries(v, std::move(out));
}

}  // namespace

LaurentQSeries operator+(const LaurentQSeries& a, const LaurentQSeries& b) { return add_sub(a, b, false); }
LaurentQSeries operator-(const LaurentQSeries& a, const LaurentQSeries& b) { return add_sub(a, b, true); }

LaurentQSeries operator*(const LaurentQSeries& a, const LaurentQSeries& b) {
  const long t = std::min(a.valuation() + b.trunc(), b.valuation() + a.trunc());
  if (a.is_zero() || b.is_zero()) return LaurentQSeries::zero(t);
  const long v = a.valuation() + b.valuation();
  const long n = t - v;
  std::vector<BigInt> out(static_cast<size_t>(std::max(0L, n)));
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  for (long i = 0; i < n && i < static_cast<long>(ac.size()); ++i) {
    if (ac[i] == 0) continue;
    const long jmax = std::min<long>(n - i, static_cast<long>(bc.size()));
    for (long j = 0; j < jmax; ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), ac[i].get_mpz_t(), bc[j].get_mpz_t());
    }
  }
  return LaurentQSeries(v, std::move(out));
}

LaurentQSeries operator*(const LaurentQSeries& a, const BigInt& c) {
  LaurentQSeries r = a;
  r *= c;
  return r;
}

LaurentQSeries inverse(const LaurentQSeries& a) {
  if (a.is_zero()) throw DomainError("inverse of the zero series");
  const BigInt& u0 = a.coeffs()[0];
  if (u0 != 1 && u0 != -1) {
    throw DivisibilityError("inverse needs a unit leading coefficient, got " + to_string(u0));
  }
  const long p = a.relative_precision();
  const auto& u = a.coeffs();
  std::vector<BigInt> b(static_cast<size_t>(p));
  b[0] = u0;
  BigInt acc;
  for (long n = 1; n < p; ++n) {
    acc = 0;
    for (long i = 1; i <= n; ++i) mpz_addmul(acc.get_mpz_t(), u[i].get_mpz_t(), b[n - i].get_mpz_t());
    b[n] = -u0 * acc;
  }
  return LaurentQSeries(-a.valuation(), std::move(b));
}

LaurentQSeries operator/(const LaurentQSeries& a, const LaurentQSeries& b) {
  if (b.is_zero()) throw DomainError("division by the zero series");
  const BigInt& b0 = b.coeffs()[0];
  if (b0 == 1 || b0 == -1) return a * inverse(b);

  const long v = a.valuation() - b.valuation();
  const long p = std::min(a.trunc() - a.valuation(), b.relative_precision());
  if (a.is_zero()) return LaurentQSeries::zero(a.trunc() - b.valuation());
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  std::vector<BigInt> q(static_cast<size_t>(p));
  BigInt num;
  for (long n = 0; n < p; ++n) {
    num = n < static_cast<long>(ac.size()) ? ac[n] : BigInt(0);
    for (long i = 1; i <= n; ++i) mpz_submul(num.get_mpz_t(), bc[i].get_mpz_t(), q[n - i].get_mpz_t());
    if (!mpz_divisible_p(num.get_mpz_t(), b0.get_mpz_t())) {
      throw DivisibilityError("inexact series division at relative index " + std::to_string(n));
    }
    mpz_divexact(q[n].get_mpz_t(), num.get_mpz_t(), b0.get_mpz_t());
  }
  return LaurentQSeries(v, std::move(q));
}

LaurentQSeries exact_divide(const LaurentQSeries& a, const BigInt& c) {
  if (c == 0) throw DomainError("division by zero");
  std::vector<BigInt> out = a.coeffs();
  for (auto& x : out) {
    if (!mpz_divisible_p(x.get_mpz_t(), c.get_mpz_t())) {
      throw DivisibilityError("coefficient " + to_string(x) + " not divisible by " + to_string(c));
    }
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  }
  if (a.is_zero()) return a;
  return LaurentQSeries(a.valuation(), std::move(out));
}

LaurentQSeries series_arith(const LaurentQSeries& a, const LaurentQSeries& b, SeriesOp op) {
  switch (op) {
    case SeriesOp::add:
      return a + b;
    case SeriesOp::sub:
      return a - b;
    case SeriesOp::mul:
      return a * b;
    case SeriesOp::div:
      return a / b;
  }
  throw DomainError("unknown series op");
}

LaurentQSeries pow(const LaurentQSeries& a, long n) {
  if (n < 0) return pow(inverse(a), -n);
  LaurentQSeries result = LaurentQSeries::constant(1, a.relative_precision());
  if (n == 0) return result;
  LaurentQSeries base = a;
  bool first = true;
  while (n > 0) {
    if (n & 1) {
      result = first ? base : result * base;
      first = false;
    }
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

BigInt sigma(long t, long n) {
  if (n <= 0) throw DomainError("sigma: n must be positive");
  if (t < 0) throw DomainError("sigma: t must be nonnegative");
  BigInt s = 0, p;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(t));
    s += p;
    const long e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(t));
      s += p;
    }
  }
  return s;
}

Rational bernoulli(long n) {
  if (n < 0) throw DomainError("bernoulli: negative index");
  // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1.
  std::vector<Rational> b(static_cast<size_t>(n + 1));
  b[0] = 1;
  for (long m = 1; m <= n; ++m) {
    Rational acc = 0;
    for (long j = 0; j < m; ++j) acc += Rational(big_binomial(m + 1, j)) * b[j];
    b[m] = -acc / Rational(m + 1);
    b[m].canonicalize();
  }
  return b[n];
}

LaurentQSeries eisenstein(long w, long trunc) {
  if (trunc < 1) throw DomainError("eisenstein: trunc must be >= 1");
  if (w == 0) return LaurentQSeries::constant(1, trunc);
  if (w < 4 || w % 2 != 0) {
    throw UnsupportedWeightError("eisenstein: weight " + std::to_string(w) + " is not supported");
  }
  Rational factor = Rational(-2 * w) / bernoulli(w);
  factor.canonicalize();
  std::vector<BigInt> c(static_cast<size_t>(trunc));
  c[0] = 1;
  for (long n = 1; n < trunc; ++n) {
    Rational v = factor * Rational(sigma(w - 1, n));
    v.canonicalize();
    if (v.get_den() != 1) {
      throw DivisibilityError("E_" + std::to_string(w) + " has a non-integral coefficient at q^" +
                              std::to_string(n));
    }
    c[n] = v.get_num();
  }
  return LaurentQSeries(0, std::move(c));
}

LaurentQSeries delta_eta_product(long trunc) {
  if (trunc < 2) throw DomainError("delta: trunc must be >= 2");
  // prod (1 - q^n) needed to exponents < trunc - 1.
  const long p = trunc - 1;
  std::vector<BigInt> e(static_cast<size_t>(p));
  e[0] = 1;
  for (long n = 1; n < p; ++n) {
    for (long i = p - 1; i >= n; --i) e[i] -= e[i - n];
  }
  LaurentQSeries eta(0, std::move(e));
  LaurentQSeries e24 = pow(eta, 24);
  std::vector<BigInt> shifted = e24.coeffs();
  return LaurentQSeries(1, std::move(shifted));
}

LaurentQSeries delta_eisenstein(long trunc) {
  if (trunc < 2) throw DomainError("delta: trunc must be >= 2");
  const LaurentQSeries e4 = eisenstein(4, trunc);
  const LaurentQSeries e6 = eisenstein(6, trunc);
  LaurentQSeries diff = pow(e4, 3) - pow(e6, 2);
  try {
    return exact_divide(diff, 1728);
  } catch (const DivisibilityError& e) {
    throw InternalError(std::string("(E4^3 - E6^2) not divisible by 1728: ") + e.what());
  }
}

LaurentQSeries delta(long trunc) {
  LaurentQSeries a = delta_eta_product(trunc);
  LaurentQSeries b = delta_eisenstein(trunc);
  if (!(a == b)) throw InternalError("eta-product and Eisenstein constructions of Delta disagree");
  return a;
}

LaurentQSeries jinv(long trunc) {
  if (trunc < 0) throw DomainError("jinv: trunc must be >= 0");
  const LaurentQSeries e4 = eisenstein(4, trunc + 1);
  const LaurentQSeries d = delta(trunc + 2);
  return pow(e4, 3) / d;
}

namespace {

constexpr long kGuardBits = 32;

// Next-coefficient magnitude extrapolated from the last two known ones.
Real extrapolate_next(const LaurentQSeries& s, long bits) {
  const auto& c = s.coeffs();
  if (c.empty()) return Real(0L, bits);
  Real last(BigInt(abs(c.back())), bits);
  Real growth(1L, bits);
  if (c.size() >= 2 && c[c.size() - 2] != 0) {
    Real prev(BigInt(abs(c[c.size() - 2])), bits);
    growth = max(growth, last / prev);
  }
  if (last.is_zero() && c.size() >= 2) last = Real(BigInt(abs(c[c.size() - 2])), bits);
  return last * growth * 2L;
}

}  // namespace

SeriesValue eval_deriv_at_iy(const LaurentQSeries& s, const Real& y_in, long r, const PrecisionContext& ctx) {
  ctx.validate();
  if (!(y_in > Real(0L, 64))) throw DomainError("eval_deriv_at_iy: y must be positive");
  if (r < 0) throw DomainError("eval_deriv_at_iy: r must be >= 0");
  const long bits = ctx.bits + kGuardBits;
  PrecisionScope scope(bits);
  const Real y = y_in.with_bits(bits);
  const Real two_pi = pi(bits) * 2L;
  const Real qv = exp(-two_pi * y);

  Real sum(0L, bits);
  Real scale(0L, bits);
  if (!s.is_zero()) {
    Real qpow = pow(qv, s.valuation());
    long e = s.valuation();
    for (const BigInt& a : s.coeffs()) {
      if (a != 0) {
        Real term = Real(a, bits) * qpow;
        if (r > 0) term *= pow(two_pi * (-e), r);
        sum += term;
        scale = max(scale, abs(term));
      }
      qpow *= qv;
      ++e;
    }
  }

  // Tail from the first omitted exponent T, using the extrapolated coefficient.
  const long t = s.trunc();
  auto tail_at = [&](long texp, const Real& next_coeff) {
    Real tail = next_coeff * pow(qv, texp);
    if (r > 0) tail *= pow(two_pi * std::max(1L, std::labs(texp)), r);
    return tail;
  };
  const Real next = extrapolate_next(s, bits);
  Real tail = tail_at(t, next);

  SeriesValue out{LogSigned::from_real(sum), LogSigned::from_real(tail), LogSigned::from_real(scale)};

  const Real tol(ctx.target_rel_tol, bits);
  const Real denom = max(abs(sum), tol * scale);
  if (!denom.is_zero() && tail > tol * denom) {
    // Walk T upward under the same growth model to suggest a sufficient trunc.
    long suggest = t;
    Real grow = next;
    Real ratio_step(1L, bits);
    const auto& c = s.coeffs();
    if (c.size() >= 2 && c[c.size() - 2] != 0 && c.back() != 0) {
      ratio_step = max(ratio_step, Real(BigInt(abs(c.back())), bits) / Real(BigInt(abs(c[c.size() - 2])), bits));
    }
    while (tail_at(suggest, grow) > tol * denom && suggest < t + 100000) {
      ++suggest;
      grow *= ratio_step;
    }
    throw TruncationError("eval_deriv_at_iy: truncation insufficient (tail " + out.tail.str(4) + ")", suggest);
  }
  return out;
}

SeriesValue eval_deriv_at_iy(const LaurentQSeries& s, double y, long r, const PrecisionContext& ctx) {
  return eval_deriv_at_iy(s, Real(y, ctx.bits + kGuardBits), r, ctx);
}

std::pair<Real, Real> eval_at(const LaurentQSeries& s, const Real& x_in, const Real& y_in, const PrecisionContext& ctx) {
  ctx.validate();
  const long bits = ctx.bits + kGuardBits;
  PrecisionScope scope(bits);
  const Real x = x_in.with_bits(bits);
  const Real y = y_in.with_bits(bits);
  const Real two_pi = pi(bits) * 2L;
  Real re(0L, bits), im(0L, bits);
  long e = s.valuation();
  for (const BigInt& a : s.coeffs()) {
    if (a != 0) {
      const Real mag = Real(a, bits) * exp(-two_pi * y * e);
      const Real ang = two_pi * x * e;
      re += mag * cos(ang);
      im += mag * sin(ang);
    }
    ++e;
  }
  return {re, im};
}

}  // namespace modasym::qseries
