#include "modasym/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <queue>
#include <string>

#include "modasym/errors.hpp"
#include "modasym/qseries.hpp"

namespace modasym::specfun {

namespace {
constexpr long kGuard = 32;
}

Real inc_gamma_int(long s, const Real& x, const PrecisionContext& ctx) {
  ctx.validate();
  if (s < 1) throw DomainError("inc_gamma_int: s must be >= 1");
  if (x.sign() < 0) throw DomainError("inc_gamma_int: x must be >= 0");
  const long bits = ctx.bits + kGuard;
  const Real xx = x.with_bits(bits);
  Real term(1L, bits), sum(1L, bits);
  for (long j = 1; j < s; ++j) {
    term *= xx;
    term /= j;
    sum += term;
  }
  return (factorial(static_cast<unsigned long>(s - 1), bits) * exp(-xx) * sum).with_bits(ctx.bits);
}

double log_bessel_i_bound(long order, double x) {
  if (x <= 0.0) return order == 0 ? 0.0 : -INFINITY;
  const double lcosh = x + std::log1p(std::exp(-2.0 * x)) - std::log(2.0);
  return order * std::log(x / 2.0) - std::lgamma(order + 1.0) + lcosh;
}

double log_bessel_j_bound(long order, double x) {
  if (x <= 0.0) return order == 0 ? 0.0 : -INFINITY;
  return std::min(0.0, order * std::log(x / 2.0) - std::lgamma(order + 1.0));
}

Real bessel(BesselKind kind, long order, const Real& x, const PrecisionContext& ctx, long max_bits) {
  ctx.validate();
  if (order < 0) throw DomainError("bessel: order must be >= 0");
  if (x.sign() < 0) throw DomainError("bessel: x must be >= 0");
  if (x.is_zero()) return Real(order == 0 ? 1L : 0L, ctx.bits);

  long bits = ctx.bits + kGuard;
  if (kind == BesselKind::J) {
    bits += static_cast<long>(std::ceil(1.5 * x.to_double() / std::log(2.0)));
    if (bits > max_bits) {
      throw PrecisionError("bessel J: escalated precision " + std::to_string(bits) + " exceeds ceiling " +
                           std::to_string(max_bits));
    }
  }
  const Real xx = x.with_bits(bits);
  const Real h = xx / 2L;
  const Real h2 = h * h;
  Real term = pow(h, order) / factorial(static_cast<unsigned long>(order), bits);
  Real sum = term;
  Real peak = abs(term);
  const double half_x = x.to_double() / 2.0;
  for (long j = 0;; ++j) {
    term *= h2;
    term /= (j + 1) * (j + 1 + order);
    if (kind == BesselKind::J) term = -term;
    sum += term;
    const Real a = abs(term);
    if (a > peak) peak = a;
    // Ratio below 1/2 from here on, so the remainder is under 2|term|.
    if (static_cast<double>(j + 1) > half_x && (j + 2) * (j + 2 + order) > 2.0 * half_x * half_x) {
      if (a.is_zero() || a.exponent2() < peak.exponent2() - bits) break;
    }
  }
  return sum.with_bits(ctx.bits);
}

long mod_inverse(long d, long c) {
  if (c == 1) return 0;
  long r0 = c, r1 = ((d % c) + c) % c, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const long q = r0 / r1;
    long t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) return 0;
  return ((s0 % c) + c) % c;
}

long divisor_count(long n) {
  if (n <= 0) throw DomainError("divisor_count: n must be positive");
  long cnt = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d == 0) cnt += (d * d == n) ? 1 : 2;
  }
  return cnt;
}

namespace {

// Residue counts of a d + b d^{-1} mod c, folded by t ~ c - t.
std::vector<long> folded_counts(long a, long b, long c, const std::vector<long>* inv) {
  std::vector<long> cnt(static_cast<size_t>(c / 2 + 1), 0);
  if (c == 1) {
    cnt[0] = 1;
    return cnt;
  }
  const long am = ((a % c) + c) % c;
  const long bm = ((b % c) + c) % c;
  for (long d = 1; d < c; ++d) {
    const long di = inv ? (*inv)[d] : mod_inverse(d, c);
    if (di == 0) continue;
    long t = (am * d + bm * di) % c;
    if (t > c / 2) t = c - t;
    ++cnt[t];
  }
  return cnt;
}

Real cos_two_pi_frac(long t, long c, long bits) {
  if (t == 0) return Real(1L, bits);
  return cos(pi(bits) * 2L * t / c);
}

}  // namespace

Real kloosterman(long a, long b, long c, const PrecisionContext& ctx) {
  ctx.validate();
  if (c < 1) throw DomainError("kloosterman: c must be >= 1");
  const long bits = ctx.bits + kGuard;
  const auto cnt = folded_counts(a, b, c, nullptr);
  Real s(0L, bits);
  for (long t = 0; t < static_cast<long>(cnt.size()); ++t) {
    if (cnt[t] != 0) s += cos_two_pi_frac(t, c, bits) * cnt[t];
  }
  return s.with_bits(ctx.bits);
}

KloostermanTable::KloostermanTable(long c_max, long bits) : c_max_(c_max), bits_(bits) {
  if (c_max < 1) throw DomainError("KloostermanTable: c_max must be >= 1");
  if (bits < 0) throw DomainError("KloostermanTable: bits must be >= 0");
  inv_.resize(static_cast<size_t>(c_max + 1));
  cosld_.resize(static_cast<size_t>(c_max + 1));
  if (bits > 0) cos_.resize(static_cast<size_t>(c_max + 1));
  const Real two_pi = pi(std::max(bits, 64L) + kGuard) * 2L;
  const long double two_pi_ld = 2.0L * 3.141592653589793238462643383279502884L;
  for (long c = 1; c <= c_max; ++c) {
    auto& iv = inv_[c];
    iv.assign(static_cast<size_t>(c), 0);
    for (long d = 1; d < c; ++d) iv[d] = mod_inverse(d, c);
    auto& cl = cosld_[c];
    cl.reserve(static_cast<size_t>(c / 2 + 1));
    for (long t = 0; t <= c / 2; ++t) cl.push_back(std::cos(two_pi_ld * t / c));
    if (bits == 0) continue;
    auto& ct = cos_[c];
    ct.reserve(static_cast<size_t>(c / 2 + 1));
    ct.emplace_back(1L, bits);
    for (long t = 1; t <= c / 2; ++t) ct.push_back(cos(two_pi * t / c).with_bits(bits));
  }
}

Real KloostermanTable::sum(long a, long b, long c) const {
  if (c < 1 || c > c_max_) throw DomainError("KloostermanTable: modulus out of range");
  if (bits_ == 0) throw DomainError("KloostermanTable: built without a multiprecision table");
  const auto cnt = folded_counts(a, b, c, &inv_[c]);
  const auto& ct = cos_[c];
  Real s(0L, bits_);
  for (size_t t = 0; t < cnt.size(); ++t) {
    if (cnt[t] != 0) s += ct[t] * cnt[t];
  }
  return s;
}

long double KloostermanTable::sum_ld(long a, long b, long c) const {
  if (c < 1 || c > c_max_) throw DomainError("KloostermanTable: modulus out of range");
  const auto cnt = folded_counts(a, b, c, &inv_[c]);
  const auto& ct = cosld_[c];
  long double s = 0;
  for (size_t t = 0; t < cnt.size(); ++t) {
    if (cnt[t] != 0) s += ct[t] * cnt[t];
  }
  return s;
}

std::shared_ptr<const KloostermanTable> KloostermanTable::shared(long c_max, long bits) {
  static std::mutex mu;
  // Long double only and multiprecision tables are cached apart so a large
  // fast table never forces a large multiprecision build.
  static std::shared_ptr<const KloostermanTable> cached_ld, cached_mp;
  std::lock_guard<std::mutex> lock(mu);
  auto& cached = bits == 0 ? cached_ld : cached_mp;
  if (cached && cached->c_max() >= c_max && cached->bits() >= bits) return cached;
  const long cm = cached ? std::max(c_max, cached->c_max()) : c_max;
  const long b = cached ? std::max(bits, cached->bits()) : bits;
  cached = std::make_shared<const KloostermanTable>(cm, b);
  return cached;
}

Real erf_family(long n, const Real& x, const PrecisionContext& ctx) {
  ctx.validate();
  if (n < -1) throw DomainError("erf_family: n must be >= -1");
  // Forward recurrence loses accuracy for x > 0 (minimal solution); pay for it in bits.
  const double xd = x.to_double();
  long extra = kGuard;
  if (xd > 0 && n > 0) {
    extra += static_cast<long>(std::ceil(2.0 * n * std::log2(2.0 + xd) + 2.0 * xd * xd / std::log(2.0)));
  }
  const long bits = ctx.bits + extra;
  const Real xx = x.with_bits(bits);
  Real m1 = exp(-xx * xx) * 2L / sqrt(pi(bits));
  if (n == -1) return m1.with_bits(ctx.bits);
  Real m0 = erfc(xx);
  for (long k = 1; k <= n; ++k) {
    Real next = -xx / k * m0 + m1 / (2 * k);
    m1 = std::move(m0);
    m0 = std::move(next);
  }
  return m0.with_bits(ctx.bits);
}

Real zeta_even(long k, long bits) {
  if (k < 2 || k % 2 != 0) throw DomainError("zeta_even: k must be even and >= 2");
  Rational b = qseries::bernoulli(k);
  if ((k / 2) % 2 == 0) b = -b;
  const Real two_pi = pi(bits) * 2L;
  return Real(b, bits) * pow(two_pi, k) / (factorial(static_cast<unsigned long>(k), bits) * 2L);
}

Real LemmaParams::X0() const {
  const long bits = ell.bits();
  const Real one(1L, bits);
  return (one + sqrt(one + L() * 2L / (A * A * B))) / 2L;
}

LemmaParams make_lemma_params(double ell, double A, double B, long bits) {
  return {Real(ell, bits), Real(A, bits), Real(B, bits)};
}

namespace {

struct GaussRule {
  std::vector<Real> x, w;  // on [-1, 1]
};

// Gauss-Legendre nodes by Newton iteration on P_n, cached per (n, bits).
const GaussRule& gauss_rule(int n, long bits) {
  static std::mutex mu;
  static std::map<std::pair<int, long>, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({n, bits});
  if (it != cache.end()) return it->second;
  GaussRule g;
  const long wb = bits + 16;
  for (int i = 1; i <= n; ++i) {
    Real z(std::cos(M_PI * (i - 0.25) / (n + 0.5)), wb);
    Real dp(0L, wb);
    for (int iter = 0; iter < 100; ++iter) {
      Real p0(1L, wb), p1 = z;
      for (int k = 2; k <= n; ++k) {
        Real p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      dp = n * (z * p1 - p0) / (z * z - Real(1L, wb));
      const Real dz = p1 / dp;
      z -= dz;
      if (dz.is_zero() || dz.exponent2() < -wb) break;
    }
    g.x.push_back(z.with_bits(bits));
    g.w.push_back((Real(2L, wb) / ((Real(1L, wb) - z * z) * dp * dp)).with_bits(bits));
  }
  return cache.emplace(std::make_pair(n, bits), std::move(g)).first->second;
}

template <class F>
Real gauss_panel(const F& f, const Real& a, const Real& b, const GaussRule& g) {
  const Real mid = (a + b) / 2L;
  const Real half = (b - a) / 2L;
  Real s(0L, a.bits());
  for (size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * f(mid + half * g.x[i]);
  return s * half;
}

struct Panel {
  Real a, b, value, err;
};

// Global adaptive Gauss-Legendre: 20 vs 40 points, bisect the worst panel.
template <class F>
Real adaptive(const F& f, const std::vector<Real>& breaks, double rel_tol, long bits) {
  const GaussRule& lo = gauss_rule(20, bits);
  const GaussRule& hi = gauss_rule(40, bits);
  auto make = [&](const Real& a, const Real& b) {
    Real v1 = gauss_panel(f, a, b, lo);
    Real v2 = gauss_panel(f, a, b, hi);
    Real e = abs(v2 - v1);
    return Panel{a, b, std::move(v2), std::move(e)};
  };
  auto cmp = [](const Panel& x, const Panel& y) { return x.err < y.err; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> q(cmp);
  Real total(0L, bits), err(0L, bits);
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i] < breaks[i + 1])) continue;
    Panel p = make(breaks[i], breaks[i + 1]);
    total += p.value;
    err += p.err;
    q.push(std::move(p));
  }
  const Real tol(rel_tol, bits);
  constexpr int kBudget = 4000;
  int panels = static_cast<int>(q.size());
  while (err > tol * abs(total)) {
    if (panels >= kBudget) {
      throw QuadratureError("lemma quadrature: panel budget exhausted",
                            (err / abs(total)).to_double());
    }
    Panel p = q.top();
    q.pop();
    const Real mid = (p.a + p.b) / 2L;
    Panel l = make(p.a, mid), r = make(mid, p.b);
    total += l.value + r.value - p.value;
    err += l.err + r.err - p.err;
    q.push(std::move(l));
    q.push(std::move(r));
    ++panels;
  }
  return total;
}

}  // namespace

LogSigned lemma_integral_quadrature(const LemmaParams& p, const PrecisionContext& ctx) {
  ctx.validate();
  const long bits = ctx.bits + kGuard;
  PrecisionScope scope(bits);
  const Real ell = p.ell.with_bits(bits), A = p.A.with_bits(bits), B = p.B.with_bits(bits);
  if (!(ell > Real(-1L, bits))) throw DomainError("lemma_integral_quadrature: ell must be > -1");
  if (A.sign() < 0) throw DomainError("lemma_integral_quadrature: A must be >= 0");
  if (B.sign() <= 0) throw DomainError("lemma_integral_quadrature: B must be > 0");
  const Real L = ell * 2L + Real(1L, bits);
  const Real zero(0L, bits), one(1L, bits);

  // 2 t^L exp(-B (t - A)^2)
  auto g = [&](const Real& t) {
    const Real s = t - A;
    return exp(L * log(t) - B * s * s) * 2L;
  };

  const Real sb = sqrt(B);
  Real peak = A;
  if (L.sign() > 0) peak = (A + sqrt(A * A + L * 2L / B)) / 2L;
  Real first = A.sign() > 0 ? A : (L.sign() > 0 ? peak : one / sb);
  const Real width = sqrt(Real(static_cast<double>(bits) * std::log(2.0), bits) / B);
  Real t_hi = max(A, peak) + width + (sqrt(max(L, zero) / B) + one / sb) * 2L;
  // Push the cut out until the integrand is negligible against the peak value.
  const Real floor_rel = pow(Real(2L, bits), -bits);
  while (g(t_hi) > floor_rel * g(max(peak, first))) t_hi = t_hi * 2L;

  // [0, first] through t = first * u^q, which makes the endpoint integrable smoothly.
  const double Ld = L.to_double();
  const long q = std::max(1L, static_cast<long>(std::ceil(1.0 / (Ld + 1.0))));
  auto g0 = [&](const Real& u) {
    const Real t = first * pow(u, q);
    Real v = g(t) * first * q;
    if (q > 1) v *= pow(u, q - 1);
    return v;
  };
  Real head = adaptive(g0, {zero, one}, ctx.target_rel_tol / 4, bits);

  std::vector<Real> breaks{first};
  if (peak > first) breaks.push_back(peak);
  if (A > first && A < peak) breaks.insert(breaks.begin() + 1, A);
  breaks.push_back(t_hi);
  Real body = adaptive(g, breaks, ctx.target_rel_tol / 4, bits);
  return LogSigned::from_real(head + body);
}

LogSigned lemma_integral_asymptotic(const LemmaParams& p) {
  const long bits = std::max({p.ell.bits(), p.A.bits(), p.B.bits()});
  PrecisionScope scope(bits);
  const Real A = p.A.with_bits(bits), B = p.B.with_bits(bits);
  if (A.sign() <= 0) throw RegimeError("lemma_integral_asymptotic: A must be > 0");
  if (B.sign() <= 0) throw DomainError("lemma_integral_asymptotic: B must be > 0");
  if (!p.in_regime()) throw RegimeError("lemma_integral_asymptotic: requires L < B A^2");
  const Real L = p.L().with_bits(bits);
  const Real one(1L, bits);
  const Real ab = A * A * B;
  const Real root = sqrt(one + L * 2L / ab);
  const Real x0 = (one + root) / 2L;
  const Real e = root - one;
  Real lg = log(sqrt(pi(bits) / B) * 2L) + L * log(A * x0) - log(x0 + one - one / x0) / 2L - ab / 4L * e * e;
  return LogSigned::from_log(lg);
}

LogSigned lemma_integral_recurrence(const LemmaParams& p, const PrecisionContext& ctx) {
  const Real L = p.L();
  const double ld = L.to_double();
  const long li = std::lround(ld);
  if (std::fabs(ld - static_cast<double>(li)) > 0 || li < 0) {
    throw DomainError("lemma_integral_recurrence: L must be a nonnegative integer");
  }
  const long bits = ctx.bits + kGuard;
  const Real A = p.A.with_bits(bits), B = p.B.with_bits(bits);
  const Real ierfc = erf_family(li, -A * sqrt(B), PrecisionContext{bits, ctx.target_rel_tol});
  const Real v = sqrt(pi(bits)) * factorial(static_cast<unsigned long>(li), bits) *
                 pow(B, -(Real(li + 1, bits) / 2L)) * ierfc;
  return LogSigned::from_real(v);
}

Real lemma_integral_ell0(const Real& A, const Real& B) {
  const long bits = std::max(A.bits(), B.bits());
  PrecisionScope scope(bits);
  const Real one(1L, bits);
  return one / B * exp(-B * A * A) + A * sqrt(pi(bits) / B) * (one + erf(A * sqrt(B)));
}

}  // namespace modasym::specfun
