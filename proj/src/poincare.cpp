#include "modasym/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>

#include "modasym/errors.hpp"
#include "modasym/specfun.hpp"

#ifdef MODASYM_HAVE_OPENMP
#include <omp.h>
#endif

namespace modasym::poincare {

using specfun::BesselKind;

namespace {

constexpr long kGuard = 64;
constexpr double kLn2 = 0.69314718055994530942;

int ik_sign(long k) { return (k / 2) % 2 == 0 ? 1 : -1; }

// p^{(i)}(y) for coefficient vector p.
Real poly_deriv_at(const std::vector<Real>& p, long i, const Real& y) {
  Real acc(0L, y.bits());
  for (long j = static_cast<long>(p.size()) - 1; j >= i; --j) {
    Real c = p[j];
    for (long t = 0; t < i; ++t) c *= (j - t);
    acc = acc * y + c;
  }
  return acc;
}

Real deriv_generic(const std::vector<Real>& p, const Real& rate, const Real& y, long r) {
  const long deg = static_cast<long>(p.size()) - 1;
  Real sum(0L, y.bits());
  for (long i = 0; i <= std::min(r, deg); ++i) {
    Real t = poly_deriv_at(p, i, y);
    if (t.is_zero()) continue;
    if (r - i > 0) t *= pow(rate, r - i);
    t *= Real(big_binomial(static_cast<unsigned long>(r), static_cast<unsigned long>(i)), y.bits());
    sum += t;
  }
  return sum * exp(rate * y);
}

double log_add(double a, double b) {
  if (a == -INFINITY) return b;
  if (b == -INFINITY) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// Power series in long double; callers keep the J argument small enough that
// cancellation stays below the long double Kloosterman error.
long double bessel_ld(BesselKind kind, long nu, long double x) {
  const long double h = x / 2;
  long double term = 1;
  for (long i = 1; i <= nu; ++i) term *= h / i;
  long double sum = term;
  const long double q = kind == BesselKind::I ? h * h : -h * h;
  for (long j = 0; j < 10000; ++j) {
    term *= q / ((j + 1) * static_cast<long double>(j + 1 + nu));
    sum += term;
    if (j > h && std::fabs(term) < 1e-21L * std::fabs(sum)) break;
  }
  return sum;
}

constexpr double kFastJLimit = 4.0;

}  // namespace

Real ExpPolyTerm::deriv(const Real& y, long r) const { return deriv_generic(poly, rate, y, r); }

Real ExpPolyTerm::deriv_err(const Real& y, long r) const {
  if (err.empty()) return Real(0L, y.bits());
  // Every coefficient of the derivative is bounded termwise; the exponential keeps its sign.
  const long deg = static_cast<long>(err.size()) - 1;
  const Real ar = abs(rate);
  Real sum(0L, y.bits());
  for (long i = 0; i <= std::min(r, deg); ++i) {
    Real t = poly_deriv_at(err, i, y);
    if (t.is_zero()) continue;
    if (r - i > 0) t *= pow(ar, r - i);
    t *= Real(big_binomial(static_cast<unsigned long>(r), static_cast<unsigned long>(i)), y.bits());
    sum += t;
  }
  return sum * exp(rate * y);
}

ExpPolyTerm ExpPolyTerm::differentiated() const {
  ExpPolyTerm d = *this;
  for (size_t j = 0; j < poly.size(); ++j) {
    d.poly[j] = poly[j] * rate;
    if (j + 1 < poly.size()) d.poly[j] += poly[j + 1] * static_cast<long>(j + 1);
  }
  for (size_t j = 0; j < err.size(); ++j) {
    d.err[j] = err[j] * abs(rate);
    if (j + 1 < err.size()) d.err[j] += err[j + 1] * static_cast<long>(j + 1);
  }
  return d;
}

Rational constant_term(long k, long m) {
  Rational c = Rational(big_factorial(static_cast<unsigned long>(k)) * 2) * Rational(qseries::sigma(k - 1, m)) /
               qseries::bernoulli(k);
  c.canonicalize();
  return c;
}

CSum c_sum(long k, long m, long n, long c_max, long bits, double log_floor, bool exact_kloosterman) {
  if (n == 0) throw DomainError("c_sum: n must be nonzero");
  PrecisionScope scope(bits);
  const long nu = k - 1;
  const BesselKind kind = n > 0 ? BesselKind::I : BesselKind::J;
  const long an = std::labs(n);
  const Real x1 = pi(bits) * 4L * sqrt(Real(m * an, bits));
  const double xd = x1.to_double();
  const PrecisionContext bctx{bits, 1e-12};
  const auto table = specfun::KloostermanTable::shared(c_max, exact_kloosterman ? bits : 0);

  CSum out{Real(0L, bits), Real(0L, bits), Real(0L, bits), 0};
  auto log_bound = [&](double x) {
    return kind == BesselKind::I ? specfun::log_bessel_i_bound(nu, x) : specfun::log_bessel_j_bound(nu, x);
  };
  out.c1_term = specfun::bessel(kind, nu, x1, bctx);
  double log_scale;
  if (kind == BesselKind::I) {
    log_scale = std::log(out.c1_term.to_double());
  } else {
    log_scale = std::min(log_bound(xd), 0.5 * std::log(2.0 / (M_PI * xd)));
  }
  // |S(a,b;c)| / c <= 1, so the c-th term is below the Bessel bound at x / c.
  const double cutoff = std::max(log_scale - (bits * kLn2 + 20.0), log_floor);

  long c_stop = c_max + 1;
  long double ld_err = 0;
  out.value = out.c1_term;
  out.c_used = 1;
  for (long c = 2; c <= c_max; ++c) {
    if (log_bound(xd / c) < cutoff) {
      c_stop = c;
      break;
    }
    out.c_used = c;
    if (exact_kloosterman) {
      const Real K = table->sum(-m, n, c);
      if (K.is_zero()) continue;
      out.value += K / c * specfun::bessel(kind, nu, x1 / c, bctx);
      continue;
    }
    const long double K = table->sum_ld(-m, n, c);
    if (K == 0) continue;
    const double xc = xd / c;
    if (kind == BesselKind::I || xc < kFastJLimit) {
      const long double xl = 4.0L * 3.141592653589793238462643383279502884L * std::sqrt(static_cast<long double>(m * an)) / c;
      const long double B = bessel_ld(kind, nu, xl);
      out.value += Real(K / c * B, bits);
      // Rounding of the cosine combination and of the series.
      ld_err += std::fabs(B) * (c / 2 + 1) * 0x1p-62L / c + std::fabs(K / c * B) * 0x1p-58L;
    } else {
      const Real B = specfun::bessel(kind, nu, x1 / c, bctx);
      out.value += Real(K / c, bits) * B;
      ld_err += static_cast<long double>(std::fabs(B.to_double())) * (c / 2 + 1) * 0x1p-62L / c;
    }
  }
  const double C = static_cast<double>(c_stop - 1);
  const long g = std::gcd(m, an);
  const double log_tail = log_bound(xd / (C + 1.0)) - 0.5 * std::log(2.0 * nu) + std::log(4.0 * (1.0 + std::log(C + 1.0))) +
                          0.5 * std::log(static_cast<double>(g));
  out.tail = exp(Real(log_tail, bits)) + Real(ld_err, bits);
  return out;
}

PoincareSeries::PoincareSeries(long k, long m, const PoincareOptions& opts, const PrecisionContext& ctx)
    : k_(k), m_(m), opts_(opts), ctx_(ctx) {
  ctx.validate();
  if (k < 2 || k % 2 != 0) throw DomainError("poincare: k must be even and >= 2");
  if (m < 1) throw DomainError("poincare: m must be >= 1");
  n_max_ = opts.n_max > 0 ? opts.n_max : std::max(8 * m, 200L);
  if (n_max_ < m) throw DomainError("poincare: N_max must be >= m");
  c_max_ = opts.c_max;
  if (c_max_ < 1) throw DomainError("poincare: C_max must be >= 1");
  if (!(opts.y_min > 0)) throw DomainError("poincare: y_min must be positive");
  r_max_ = opts.r_max >= 0 ? opts.r_max : 2 * m + 2;
  bits_ = ctx.bits + kGuard;
  PrecisionScope scope(bits_);

  const Real two_pi = pi(bits_) * 2L;
  const int sgn_ik = ik_sign(k);
  const Real gamma_k = factorial(static_cast<unsigned long>(k - 1), bits_);
  const Real gamma_km1 = factorial(static_cast<unsigned long>(k - 2), bits_);

  // n < 0 range: drop frequencies negligible against Gamma(k) e^{2 pi m y}
  // at every y >= y_min and derivative order <= r_max.
  {
    const double ym = opts.y_min;
    double sj = 0;
    n_neg_ = 0;
    for (long n = 1; n <= n_max_; ++n) {
      const double xd = 4 * M_PI * std::sqrt(static_cast<double>(m * n));
      sj = 0;
      for (long c = 1; c <= c_max_; ++c) sj += std::exp(specfun::log_bessel_j_bound(k - 1, xd / c));
      double poly = 0, t = 1;
      for (long j = 0; j <= k - 2; ++j) {
        poly += t;
        t *= 4 * M_PI * n * ym / (j + 1);
      }
      const double lrate = std::log(2 * M_PI * n + (k - 2) / ym) - std::log(2 * M_PI * m);
      const double lenv = std::log(2 * M_PI) + 0.5 * (k - 1) * std::log(static_cast<double>(m) / n) +
                          std::log(sj) + std::log(poly) - 2 * M_PI * n * ym + r_max_ * std::max(0.0, lrate) -
                          2 * M_PI * m * ym;
      if (n <= m || lenv > -(bits_ * kLn2 + 30)) {
        n_neg_ = n;
      } else {
        break;
      }
    }
  }

  terms_.clear();
  {
    ExpPolyTerm t;
    t.kind = TermKind::principal_holo;
    t.freq = -m;
    t.poly = {gamma_k};
    t.rate = two_pi * m;
    terms_.push_back(t);
  }
  {
    // (1-k) Gamma(k-1, 4 pi m y) e^{2 pi m y}
    ExpPolyTerm t;
    t.kind = TermKind::principal_nonholo;
    t.freq = -m;
    t.rate = -two_pi * m;
    Real c = gamma_km1 * (1 - k);
    const Real beta = two_pi * 2L * m;
    for (long j = 0; j <= k - 2; ++j) {
      t.poly.push_back(c);
      c = c * beta / (j + 1);
    }
    terms_.push_back(t);
  }
  {
    ExpPolyTerm t;
    t.kind = TermKind::constant;
    t.freq = 0;
    t.poly = {Real(constant_term(k, m), bits_)};
    t.rate = Real(0L, bits_);
    terms_.push_back(t);
  }

  std::vector<long> freqs;
  for (long n = 1; n <= n_max_; ++n) freqs.push_back(n);
  for (long n = 1; n <= n_neg_; ++n) freqs.push_back(-n);
  std::vector<ExpPolyTerm> built(freqs.size());
  specfun::KloostermanTable::shared(c_max_, bits_);

  // Smallest c-sum magnitude that can still matter against Gamma(k) e^{2 pi m y}
  // for y >= y_min and derivative order <= r_max.
  auto log_floor = [&](long n) {
    const double ym = opts.y_min;
    const long an = std::labs(n);
    const double lratio = 0.5 * (k - 1) * std::log(static_cast<double>(m) / an);
    double lunit, lrate;
    if (n > 0) {
      lunit = std::log(2 * M_PI) + lratio + std::lgamma(k);
      lrate = std::log(static_cast<double>(an) / m);
    } else {
      double poly = 0, t = 1;
      for (long j = 0; j <= k - 2; ++j) {
        poly += t;
        t *= 4 * M_PI * an * ym / (j + 1);
      }
      lunit = std::log(2 * M_PI) + lratio + std::lgamma(k - 1) + std::log(k - 1.0) + std::log(poly);
      lrate = std::log(2 * M_PI * an + (k - 2) / ym) - std::log(2 * M_PI * m);
    }
    const double lterm = lunit + r_max_ * std::max(0.0, lrate) - 2 * M_PI * an * ym;
    const double lref = std::lgamma(k) + 2 * M_PI * m * ym;
    return lref - (bits_ * kLn2 + 20.0) - lterm;
  };

  auto make = [&](long n) {
    PrecisionScope inner(bits_);
    const long an = std::labs(n);
    const CSum s = c_sum(k, m, n, c_max_, bits_, log_floor(n), opts_.exact_kloosterman);
    const Real tp = pi(bits_) * 2L;
    const Real ratio_pow = pow(Real(m, bits_) / Real(an, bits_), Real(k - 1, bits_) / 2L);
    ExpPolyTerm t;
    t.freq = n;
    t.rate = -tp * an;
    if (n > 0) {
      t.kind = TermKind::positive;
      Real unit = tp * ratio_pow * factorial(static_cast<unsigned long>(k - 1), bits_) * (-sgn_ik);
      t.poly = {unit * s.value};
      t.err = {abs(unit) * s.tail};
    } else {
      t.kind = TermKind::negative;
      Real unit = tp * ratio_pow * factorial(static_cast<unsigned long>(k - 2), bits_) * ((1 - k) * sgn_ik);
      const Real beta = tp * 2L * an;
      for (long j = 0; j <= k - 2; ++j) {
        t.poly.push_back(unit * s.value);
        t.err.push_back(abs(unit) * s.tail);
        unit = unit * beta / (j + 1);
      }
    }
    return t;
  };

  const long count = static_cast<long>(freqs.size());
  if (opts.exec == Exec::parallel) {
    std::exception_ptr err;
#ifdef MODASYM_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (long i = 0; i < count; ++i) {
      try {
        built[i] = make(freqs[i]);
      } catch (...) {
#ifdef MODASYM_HAVE_OPENMP
#pragma omp critical(modasym_poincare_err)
#endif
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  } else {
    for (long i = 0; i < count; ++i) built[i] = make(freqs[i]);
  }
  for (auto& t : built) terms_.push_back(std::move(t));
}

Real PoincareSeries::omitted_bound(const Real& y_in, long r) const {
  const double y = y_in.to_double();
  const long k = k_, m = m_;
  double lsum = -INFINITY;

  // n > 0 beyond N_max: |c(n)| <= 2 pi (m/n)^{(k-1)/2} Gamma(k) sum_c I-bound(x/c).
  auto lpos = [&](long n) {
    const double x = 4 * M_PI * std::sqrt(static_cast<double>(m * n));
    double ls = specfun::log_bessel_i_bound(k - 1, x);
    ls = log_add(ls, std::log(static_cast<double>(c_max_)) + specfun::log_bessel_i_bound(k - 1, x / 2));
    return std::log(2 * M_PI) + 0.5 * (k - 1) * std::log(static_cast<double>(m) / n) + std::lgamma(k) + ls +
           r * std::log(2 * M_PI * n) - 2 * M_PI * n * y;
  };
  {
    const long n0 = n_max_ + 1;
    const double a = lpos(n0), b = lpos(n0 + 1);
    const double rho = std::exp(b - a);
    lsum = log_add(lsum, rho < 0.9 ? a - std::log1p(-rho) : INFINITY);
  }
  // n < 0 beyond the built range.
  {
    auto lneg = [&](long n) {
      const double x = 4 * M_PI * std::sqrt(static_cast<double>(m * n));
      double sj = 0;
      for (long c = 1; c <= c_max_; ++c) sj += std::exp(specfun::log_bessel_j_bound(k - 1, x / c));
      double poly = 0, t = 1;
      for (long j = 0; j <= k - 2; ++j) {
        poly += t;
        t *= 4 * M_PI * n * y / (j + 1);
      }
      return std::log(2 * M_PI) + 0.5 * (k - 1) * std::log(static_cast<double>(m) / n) + std::lgamma(k - 1) +
             std::log(static_cast<double>(k - 1)) + std::log(sj) + std::log(poly) +
             r * std::log(2 * M_PI * n + (k - 2) / y) - 2 * M_PI * n * y;
    };
    const long n0 = n_neg_ + 1;
    const double a = lneg(n0), b = lneg(n0 + 1);
    const double rho = std::exp(b - a);
    lsum = log_add(lsum, rho < 0.9 ? a - std::log1p(-rho) : INFINITY);
  }
  if (!std::isfinite(lsum)) return Real(INFINITY, bits_);
  return exp(Real(lsum, bits_));
}

void PoincareSeries::check_tail(PoincareResult& res, const Real& sum, const Real& tail, const Real& y, long r) const {
  (void)y;
  (void)r;
  res.tail_estimate = LogSigned::from_real(tail);
  if (!opts_.enforce_tail) return;
  const Real tol(ctx_.target_rel_tol, bits_);
  if (!(tail <= tol * abs(sum))) {
    // Suggest the smallest N_max whose positive-side envelope would pass.
    long suggest = n_max_;
    const double target = std::log(ctx_.target_rel_tol) + LogSigned::from_real(abs(sum)).logmag().to_double();
    for (long n = n_max_ + 1; n < 100 * n_max_; ++n) {
      const double x = 4 * M_PI * std::sqrt(static_cast<double>(m_ * n));
      const double l = std::log(2 * M_PI) + std::lgamma(k_) + specfun::log_bessel_i_bound(k_ - 1, x) +
                       std::log(static_cast<double>(c_max_) + 1) + r * std::log(2 * M_PI * n) -
                       2 * M_PI * n * y.to_double();
      if (l < target) {
        suggest = n;
        break;
      }
    }
    throw TruncationError("poincare: tail " + res.tail_estimate.str(4) + " exceeds tolerance against |value| " +
                              LogSigned::from_real(sum).str(4),
                          suggest);
  }
}

PoincareResult PoincareSeries::deriv_eval(const Real& y_in, long r, Part part) const {
  if (!(y_in.sign() > 0)) throw DomainError("deriv_eval: y must be positive");
  if (r < 0) throw DomainError("deriv_eval: r must be >= 0");
  PrecisionScope scope(bits_);
  const Real y = y_in.with_bits(bits_);
  Real sum(0L, bits_), tail(0L, bits_), scale(0L, bits_);
  for (const auto& t : terms_) {
    if (part == Part::holomorphic && !t.holomorphic()) continue;
    const Real v = t.deriv(y, r);
    sum += v;
    const Real a = abs(v);
    if (a > scale) scale = a;
    tail += t.deriv_err(y, r);
  }
  tail += omitted_bound(y, r);
  PoincareResult res;
  res.k = k_;
  res.m = m_;
  res.r = r;
  res.x = Real(0L, bits_);
  res.y = y;
  res.value = LogSigned::from_real(sum);
  res.term_scale = LogSigned::from_real(scale);
  res.n_used = n_max_;
  res.c_used = c_max_;
  check_tail(res, sum, tail, y, r);
  return res;
}

PoincareResult PoincareSeries::deriv_eval(double y, long r, Part part) const {
  return deriv_eval(Real(y, bits_), r, part);
}

PoincareResult PoincareSeries::eval(const Real& x_in, const Real& y_in) const {
  if (!(y_in.sign() > 0)) throw DomainError("eval: y must be positive");
  PrecisionScope scope(bits_);
  const Real x = x_in.with_bits(bits_), y = y_in.with_bits(bits_);
  const Real two_pi = pi(bits_) * 2L;
  Real re(0L, bits_), im(0L, bits_), tail(0L, bits_), scale(0L, bits_);
  const bool on_axis = x.is_zero();
  for (const auto& t : terms_) {
    const Real v = t.deriv(y, 0);
    const Real a = abs(v);
    if (a > scale) scale = a;
    tail += t.deriv_err(y, 0);
    if (on_axis || t.freq == 0) {
      re += v;
    } else {
      const Real th = two_pi * x * t.freq;
      re += v * cos(th);
      im += v * sin(th);
    }
  }
  tail += omitted_bound(y, 0);
  PoincareResult res;
  res.k = k_;
  res.m = m_;
  res.x = x;
  res.y = y;
  res.value = LogSigned::from_real(re);
  res.imag = LogSigned::from_real(im);
  res.term_scale = LogSigned::from_real(scale);
  res.n_used = n_max_;
  res.c_used = c_max_;
  Real mag = abs(re) > abs(im) ? abs(re) : abs(im);
  check_tail(res, mag, tail, y, 0);
  return res;
}

std::vector<ExpPolyTerm> build_terms(long k, long m, const PoincareOptions& opts, const PrecisionContext& ctx) {
  return PoincareSeries(k, m, opts, ctx).terms();
}

namespace {
PoincareOptions widen(PoincareOptions o, double y, long r) {
  o.y_min = std::min(o.y_min, y);
  if (o.r_max >= 0) o.r_max = std::max(o.r_max, r);
  return o;
}
}  // namespace

PoincareResult eval(long k, long m, const Real& x, const Real& y, const PoincareOptions& opts,
                    const PrecisionContext& ctx) {
  return PoincareSeries(k, m, widen(opts, y.to_double(), 0), ctx).eval(x, y);
}

PoincareResult deriv_eval(long k, long m, const Real& y, long r, const PoincareOptions& opts,
                          const PrecisionContext& ctx) {
  return PoincareSeries(k, m, widen(opts, y.to_double(), r), ctx).deriv_eval(y, r);
}

PoincareResult holo_deriv_eval(long k, long m, const Real& y, long r, const PoincareOptions& opts,
                               const PrecisionContext& ctx) {
  return PoincareSeries(k, m, widen(opts, y.to_double(), r), ctx).deriv_eval(y, r, Part::holomorphic);
}

double NonholoResidual::relative() const { return ratio(residual.abs(), c1_term); }

NonholoResidual nonholo_residual(long k, long m, long n, long c_max, const PrecisionContext& ctx) {
  ctx.validate();
  if (n >= 0) throw DomainError("nonholo_residual: n must be negative");
  if (k < 4 || k % 2 != 0) throw DomainError("nonholo_residual: k must be even and >= 4");
  const long bits = ctx.bits + kGuard;
  PrecisionScope scope(bits);
  const CSum s = c_sum(k, m, n, c_max, bits);
  Real res = s.value;
  if (-n == m) res += Real(static_cast<long>(ik_sign(k)), bits) / (pi(bits) * 2L);
  return {k, m, n, LogSigned::from_real(res), LogSigned::from_real(abs(s.c1_term)), LogSigned::from_real(s.tail)};
}

RootScan root_scan(long k, long m, double y_lo, double y_hi, long grid, const PrecisionContext& ctx,
                   PoincareOptions opts) {
  if (!(y_lo > 0 && y_lo < y_hi)) throw DomainError("root_scan: need 0 < y_lo < y_hi");
  if (grid < 1) throw DomainError("root_scan: grid must be >= 1");
  opts.y_min = std::min(opts.y_min, y_lo);
  opts.r_max = std::max<long>(opts.r_max, 1);
  opts.enforce_tail = false;
  const PoincareSeries F(k, m, opts, ctx);
  RootScan out{k, m, y_lo, y_hi, grid, {}, {}};

  struct Sample {
    double y;
    int sign;
  };
  auto sample = [&](double y) {
    const auto r = F.deriv_eval(y, 0);
    if (r.value.is_zero() || r.value.abs() <= r.tail_estimate) {
      out.warnings.push_back("inconclusive sign at y=" + std::to_string(y) + ": |F| " + r.value.abs().str(4) +
                             " <= tail " + r.tail_estimate.str(4));
      return Sample{y, 0};
    }
    return Sample{y, r.value.sign()};
  };

  std::vector<Sample> pts;
  for (long i = 0; i <= grid; ++i) pts.push_back(sample(y_lo + (y_hi - y_lo) * static_cast<double>(i) / grid));

  auto refine = [&](double lo, double hi, int slo) {
    while (hi - lo > 1e-8) {
      const double mid = 0.5 * (lo + hi);
      const auto r = F.deriv_eval(mid, 0);
      if (r.value.sign() == slo) {
        lo = mid;
      } else if (r.value.sign() == 0) {
        lo = hi = mid;
      } else {
        hi = mid;
      }
    }
    const double root = 0.5 * (lo + hi);
    const auto d = F.deriv_eval(root, 1);
    out.roots.push_back({lo, hi, root, d.value, d.tail_estimate, d.value.abs() > d.tail_estimate});
  };

  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i].sign == 0) continue;
    size_t j = i + 1;
    // Step over inconclusive samples so an exact zero on the grid is still bracketed.
    while (j < pts.size() && pts[j].sign == 0) ++j;
    if (j == pts.size()) break;
    if (pts[j].sign != pts[i].sign) refine(pts[i].y, pts[j].y, pts[i].sign);
    i = j - 1;
  }
  return out;
}

namespace {

struct Cplx {
  Real re, im;
};

template <class F>
LogSigned laplacian_fd(const F& f, long weight, const Real& x, const Real& y, const Real& h, const Real& scale) {
  const Cplx c = f(x, y), xp = f(x + h, y), xm = f(x - h, y), yp = f(x, y + h), ym = f(x, y - h);
  const Real h2 = h * h;
  const Real lap_re = (xp.re + xm.re + yp.re + ym.re - c.re * 4L) / h2;
  const Real lap_im = (xp.im + xm.im + yp.im + ym.im - c.im * 4L) / h2;
  const Real fx_re = (xp.re - xm.re) / (h * 2L), fx_im = (xp.im - xm.im) / (h * 2L);
  const Real fy_re = (yp.re - ym.re) / (h * 2L), fy_im = (yp.im - ym.im) / (h * 2L);
  // -y^2 (F_xx + F_yy) + i w y (F_x + i F_y)
  const Real wy = y * weight;
  const Real re = -y * y * lap_re + wy * (-fx_im - fy_re);
  const Real im = -y * y * lap_im + wy * (fx_re - fy_im);
  return LogSigned::from_real(sqrt(re * re + im * im) / scale);
}

}  // namespace

LogSigned laplacian_residual(const PoincareSeries& F, const Real& x, const Real& y, const Real& h) {
  if (!(h.sign() > 0) || !(h < y)) throw DomainError("laplacian_residual: need 0 < h < y");
  auto f = [&](const Real& xx, const Real& yy) {
    const auto r = F.eval(xx, yy);
    return Cplx{r.value.to_real(F.bits()), r.imag.to_real(F.bits())};
  };
  const Real scale = F.eval(x, y).term_scale.to_real(F.bits());
  return laplacian_fd(f, 2 - F.k(), x.with_bits(F.bits()), y.with_bits(F.bits()), h.with_bits(F.bits()), scale);
}

LogSigned laplacian_residual(long k, long m, const Real& x, const Real& y, const Real& h, const PrecisionContext& ctx,
                             PoincareOptions opts) {
  opts.y_min = std::min(opts.y_min, (y - h).to_double());
  opts.enforce_tail = false;
  const PoincareSeries F(k, m, opts, ctx);
  return laplacian_residual(F, x, y, h);
}

LogSigned laplacian_residual_series(const qseries::LaurentQSeries& s, long weight, const Real& x, const Real& y,
                                    const Real& h, const PrecisionContext& ctx) {
  if (!(h.sign() > 0) || !(h < y)) throw DomainError("laplacian_residual_series: need 0 < h < y");
  const long bits = ctx.bits + kGuard;
  PrecisionScope scope(bits);
  const PrecisionContext c2{bits, ctx.target_rel_tol};
  auto f = [&](const Real& xx, const Real& yy) {
    auto [re, im] = qseries::eval_at(s, xx, yy, c2);
    return Cplx{re, im};
  };
  Real scale(0L, bits);
  const Real two_pi = pi(bits) * 2L;
  long e = s.valuation();
  for (const BigInt& a : s.coeffs()) {
    const Real t = abs(Real(a, bits) * exp(-two_pi * y.with_bits(bits) * e));
    if (t > scale) scale = t;
    ++e;
  }
  return laplacian_fd(f, weight, x.with_bits(bits), y.with_bits(bits), h.with_bits(bits), scale);
}

}  // namespace modasym::poincare
