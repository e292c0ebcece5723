#pragma once

// Maass-Poincare series F(m, 2-k; z) from its Fourier expansion. Every
// Fourier summand is stored as p(y) e^{alpha y} e^{2 pi i n x} so that
// y-derivatives are exact; c-sums of Kloosterman sums times Bessel values
// are truncated at C_max with a reported heuristic tail.

#include <cmath>
#include <string>
#include <vector>

#include "modasym/log_signed.hpp"
#include "modasym/precision.hpp"
#include "modasym/qseries.hpp"
#include "modasym/real.hpp"

namespace modasym::poincare {

enum class TermKind {
  principal_holo,     // Gamma(k) q^{-m}
  principal_nonholo,  // (1-k) Gamma(k-1, 4 pi m y) q^{-m}
  constant,           // c(0)
  positive,           // n > 0, I-Bessel sums
  negative,           // n < 0, J-Bessel sums
};

struct ExpPolyTerm {
  TermKind kind = TermKind::constant;
  long freq = 0;
  /// Coefficients of a polynomial in y.
  std::vector<Real> poly;
  Real rate;
  /// Nonnegative bound on the error of each poly coefficient (c-truncation).
  std::vector<Real> err;

  bool holomorphic() const noexcept {
    return kind == TermKind::principal_holo || kind == TermKind::constant || kind == TermKind::positive;
  }
  /// r-th y-derivative of p(y) e^{rate y}.
  Real deriv(const Real& y, long r) const;
  /// Same recipe applied to err with |rate|: a bound on the derivative error.
  Real deriv_err(const Real& y, long r) const;
  /// Exact y-derivative as a new term.
  ExpPolyTerm differentiated() const;
};

enum class Exec { serial, parallel };

struct PoincareOptions {
  /// 0 selects max(8m, 200).
  long n_max = 0;
  long c_max = 500;
  /// Smallest y the terms will be evaluated at; bounds the n < 0 range.
  double y_min = 0.5;
  /// Highest derivative order the n < 0 range must support; -1 selects 2m + 2.
  long r_max = -1;
  Exec exec = Exec::parallel;
  /// Raise TruncationError when tail / |value| exceeds ctx.target_rel_tol.
  bool enforce_tail = true;
  /// Combine Kloosterman sums for c >= 2 at full precision instead of long double.
  bool exact_kloosterman = false;
};

struct PoincareResult {
  long k = 0, m = 0, r = 0;
  Real x, y;
  /// Real part (the whole value on the imaginary axis).
  LogSigned value;
  LogSigned imag;
  LogSigned tail_estimate;
  /// Largest single-term magnitude.
  LogSigned term_scale;
  long n_used = 0;
  long c_used = 0;
};

enum class Part { full, holomorphic };

class PoincareSeries {
 public:
  PoincareSeries(long k, long m, const PoincareOptions& opts, const PrecisionContext& ctx);

  long k() const noexcept { return k_; }
  long m() const noexcept { return m_; }
  long n_max() const noexcept { return n_max_; }
  long n_neg() const noexcept { return n_neg_; }
  long c_max() const noexcept { return c_max_; }
  long bits() const noexcept { return bits_; }
  const PrecisionContext& ctx() const noexcept { return ctx_; }
  const PoincareOptions& options() const noexcept { return opts_; }
  const std::vector<ExpPolyTerm>& terms() const noexcept { return terms_; }

  /// r-th y-derivative at z = iy.
  PoincareResult deriv_eval(const Real& y, long r, Part part = Part::full) const;
  PoincareResult deriv_eval(double y, long r, Part part = Part::full) const;
  /// Value at z = x + iy.
  PoincareResult eval(const Real& x, const Real& y) const;

 private:
  void check_tail(PoincareResult& res, const Real& sum, const Real& tail, const Real& y, long r) const;
  Real omitted_bound(const Real& y, long r) const;

  long k_, m_, n_max_, n_neg_, c_max_, r_max_, bits_;
  PoincareOptions opts_;
  PrecisionContext ctx_;
  std::vector<ExpPolyTerm> terms_;
};

/// sum_{c <= c_max} S(-m, n; c)/c * B_{k-1}(4 pi sqrt(m|n|)/c) with B = I for
/// n > 0 and J for n < 0. The loop stops once the Bessel bound falls below
/// 2^{-bits} of the natural scale or below e^{log_floor}. The tail is a
/// root-mean-square heuristic (S(a,b;c)^2 averages to about c) with a
/// divisor-function and safety factor. Without exact_kloosterman the sums
/// for c >= 2 are combined in long double.
struct CSum {
  Real value;
  Real c1_term;
  Real tail;
  long c_used;
};
CSum c_sum(long k, long m, long n, long c_max, long bits, double log_floor = -INFINITY,
           bool exact_kloosterman = false);

/// Standalone wrappers; each builds the terms once.
std::vector<ExpPolyTerm> build_terms(long k, long m, const PoincareOptions& opts, const PrecisionContext& ctx);
PoincareResult eval(long k, long m, const Real& x, const Real& y, const PoincareOptions& opts,
                    const PrecisionContext& ctx);
PoincareResult deriv_eval(long k, long m, const Real& y, long r, const PoincareOptions& opts,
                          const PrecisionContext& ctx);
PoincareResult holo_deriv_eval(long k, long m, const Real& y, long r, const PoincareOptions& opts,
                               const PrecisionContext& ctx);

/// c(0) in closed form: 2 k! sigma_{k-1}(m) / B_k.
Rational constant_term(long k, long m);

struct NonholoResidual {
  long k, m, n;
  /// c-sum plus the Petersson diagonal term i^k delta_{|n|,m} / (2 pi).
  LogSigned residual;
  /// |J_{k-1}(4 pi sqrt(m|n|))|, the c = 1 term.
  LogSigned c1_term;
  LogSigned tail;
  double relative() const;
};

NonholoResidual nonholo_residual(long k, long m, long n, long c_max, const PrecisionContext& ctx);

struct RootBracket {
  double lo, hi;
  double root;
  LogSigned deriv;
  LogSigned deriv_tail;
  bool simple;
};

struct RootScan {
  long k, m;
  double y_lo, y_hi;
  long grid;
  std::vector<RootBracket> roots;
  std::vector<std::string> warnings;
};

RootScan root_scan(long k, long m, double y_lo, double y_hi, long grid, const PrecisionContext& ctx,
                   PoincareOptions opts = {});

/// |Delta_{2-k} F| at z by central differences with step h, over the term scale.
LogSigned laplacian_residual(const PoincareSeries& F, const Real& x, const Real& y, const Real& h);
LogSigned laplacian_residual(long k, long m, const Real& x, const Real& y, const Real& h, const PrecisionContext& ctx,
                             PoincareOptions opts = {});
/// Same operator applied to a q-series of the given weight.
LogSigned laplacian_residual_series(const qseries::LaurentQSeries& s, long weight, const Real& x, const Real& y,
                                    const Real& h, const PrecisionContext& ctx);

}  // namespace modasym::poincare
