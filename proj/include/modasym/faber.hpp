#pragma once

// Canonical weakly holomorphic basis of level one: f_{w,n} = q^{-n} + O(q^{l+1})
// for weight w = 12 l + k', built as E_{k'} Delta^l F(j) with F found by
// exact elimination. The negative weights 2-k carry the Faber polynomial
// data (F_m in j, its shift by 1728, and the principal part).

#include <map>
#include <vector>

#include "modasym/qseries.hpp"

namespace modasym::faber {

using qseries::LaurentQSeries;

struct WeightSpec {
  long k = 2;
  long d = -1;
  long kprime = 0;
  friend bool operator==(const WeightSpec&, const WeightSpec&) = default;
};

/// (k, d_k, k') for even k >= 2; d_2 = -1, otherwise dim S_k.
WeightSpec weight_data(long k);
/// dim S_k of level one for even k >= 2 (dim S_2 = 0).
long cusp_dim(long k);

/// Any even weight w written as 12 l + k' with k' in {0,4,6,8,10,14}.
struct WeightSplit {
  long l;
  long kprime;
};
WeightSplit split_weight(long w);

struct FaberElement {
  WeightSpec spec;
  long m = 0;
  LaurentQSeries series;
  /// F_m(x) = sum fpoly[s] x^s.
  std::vector<BigInt> fpoly;
  /// F_m(x + 1728) = sum cshift[r] x^r.
  std::vector<BigInt> cshift;
  /// n -> b_n for 1 <= n <= d.
  std::map<long, BigInt> principal;

  bool is_zero() const { return fpoly.empty(); }
};

/// Builds f_{w,n} for every n up to max_n at a fixed truncation, reusing the
/// products E_{k'} Delta^l j^s. Read-only after construction.
class Basis {
 public:
  Basis(long w, long max_n, long trunc);

  long weight() const noexcept { return w_; }
  long l() const noexcept { return l_; }
  long kprime() const noexcept { return kprime_; }
  long max_n() const noexcept { return max_n_; }
  long trunc() const noexcept { return trunc_; }

  /// Forms exist for n >= -l; smaller n gives the zero series.
  bool defined(long n) const noexcept { return n >= -l_; }
  /// f_{w,n} and the coefficients of its polynomial in j.
  std::pair<LaurentQSeries, std::vector<BigInt>> form(long n) const;
  /// E_{k'} Delta^l j^s, s = 0 .. max_n + l.
  const LaurentQSeries& monomial(long s) const { return g_.at(static_cast<size_t>(s)); }

 private:
  long w_, l_, kprime_, max_n_, trunc_, work_trunc_;
  std::vector<LaurentQSeries> g_;
};

/// Coefficients of F(x + a) from those of F(x), exactly.
std::vector<BigInt> binomial_shift(const std::vector<BigInt>& poly, const BigInt& a);

FaberElement faber_form(const WeightSpec& spec, long m, long trunc);
/// f_{2-k,m} for m = 0 .. m_max from one shared basis.
std::vector<FaberElement> faber_range(const WeightSpec& spec, long m_max, long trunc);
std::map<long, BigInt> principal_part(const FaberElement& e);

/// E_{k'} Delta^{-d-1} F_m(j) evaluated from fpoly alone (Horner in j).
LaurentQSeries reconstruct(const FaberElement& e, long trunc);

struct DualityViolationRecord {
  long m, n;
  BigInt lhs, rhs;
};

struct DualityReport {
  long k = 0, M = 0, N = 0;
  /// +1 or -1; 0 if no nonvanishing pair was found.
  int epsilon = 0;
  long pairs_checked = 0;
  long pairs_skipped = 0;
  std::vector<DualityViolationRecord> violations;
};

/// coeff_n(f_{2-k,m}) = eps coeff_m(f_{k,n}) for 1 <= m <= M, 1 <= n <= N.
/// DualityViolation when the sign is not uniform.
DualityReport duality_check(long k, long M, long N);

}  // namespace modasym::faber
