#pragma once

// Special functions at MPFR precision: incomplete gamma with integer first
// argument, integer-order Bessel I and J, Kloosterman sums, repeated
// integrals of erfc, and the integral of x^l exp(-B (sqrt(x) - A)^2).

#include <memory>
#include <vector>

#include "modasym/log_signed.hpp"
#include "modasym/precision.hpp"
#include "modasym/real.hpp"

namespace modasym::specfun {

/// Gamma(s, x) = (s-1)! e^{-x} sum_{j<s} x^j / j!.
Real inc_gamma_int(long s, const Real& x, const PrecisionContext& ctx);

enum class BesselKind { I, J };

/// Default ceiling on the escalated working precision of J.
inline constexpr long kBesselMaxBits = 1L << 16;

/// Power series with a tail cutoff; J runs at ctx.bits + ceil(1.5 x / ln 2)
/// bits, PrecisionError above max_bits.
Real bessel(BesselKind kind, long order, const Real& x, const PrecisionContext& ctx,
            long max_bits = kBesselMaxBits);
/// |I_nu(x)| <= (x/2)^nu / nu! * cosh(x), as a natural log.
double log_bessel_i_bound(long order, double x);
/// |J_nu(x)| <= min(1, (x/2)^nu / nu!), as a natural log.
double log_bessel_j_bound(long order, double x);

/// Classical S(a, b; c) = sum over units d mod c of cos(2 pi (a d + b d^{-1}) / c).
Real kloosterman(long a, long b, long c, const PrecisionContext& ctx);

/// Modular inverse by extended Euclid; 0 when gcd(d, c) != 1.
long mod_inverse(long d, long c);

/// Kloosterman sums for every modulus up to c_max. The sum is collected as
/// exact residue counts and combined with a cached cosine table. bits == 0
/// builds only the long double table; otherwise sum() matches kloosterman()
/// to working precision.
class KloostermanTable {
 public:
  KloostermanTable(long c_max, long bits);
  long c_max() const noexcept { return c_max_; }
  long bits() const noexcept { return bits_; }
  Real sum(long a, long b, long c) const;
  /// Long double combination; absolute error about c * 1e-19.
  long double sum_ld(long a, long b, long c) const;

  /// Shared instance covering at least (c_max, bits).
  static std::shared_ptr<const KloostermanTable> shared(long c_max, long bits);

 private:
  long c_max_, bits_;
  // inv_[c][d] for 0 <= d < c, 0 when not a unit.
  std::vector<std::vector<long>> inv_;
  // cos_[c][t] = cos(2 pi t / c) for 0 <= t <= c / 2.
  std::vector<std::vector<Real>> cos_;
  std::vector<std::vector<long double>> cosld_;
};

/// Number of divisors.
long divisor_count(long n);

/// Repeated integral i^n erfc(x), n >= -1.
Real erf_family(long n, const Real& x, const PrecisionContext& ctx);

/// zeta(k) for even k >= 2 from the Bernoulli number.
Real zeta_even(long k, long bits);

struct LemmaParams {
  Real ell;
  Real A;
  Real B;

  Real L() const { return ell * 2L + Real(1L, ell.bits()); }
  /// (1 + sqrt(1 + 2L / (A^2 B))) / 2.
  Real X0() const;
  bool in_regime() const { return L() < B * A * A; }
};

LemmaParams make_lemma_params(double ell, double A, double B, long bits);

/// int_0^inf x^l exp(-B (sqrt(x) - A)^2) dx by adaptive Gauss-Legendre after x = t^2.
LogSigned lemma_integral_quadrature(const LemmaParams& p, const PrecisionContext& ctx);
/// (2 sqrt(pi/B)) (A X0)^L / sqrt(1 + X0 - 1/X0) exp(-(A^2 B / 4)(sqrt(1 + 2L/(A^2 B)) - 1)^2).
LogSigned lemma_integral_asymptotic(const LemmaParams& p);
/// Exact path for integer L: sqrt(pi) L! B^{-(L+1)/2} i^L erfc(-A sqrt(B)).
LogSigned lemma_integral_recurrence(const LemmaParams& p, const PrecisionContext& ctx);
/// l = 0: (1/B) e^{-B A^2} + A sqrt(pi/B) (1 + erf(A sqrt(B))).
Real lemma_integral_ell0(const Real& A, const Real& B);

}  // namespace modasym::specfun
