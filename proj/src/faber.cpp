#include "modasym/faber.hpp"

#include <string>

#include "modasym/errors.hpp"

namespace modasym::faber {

using qseries::delta;
using qseries::eisenstein;
using qseries::jinv;

long cusp_dim(long k) {
  if (k < 2 || k % 2 != 0) throw DomainError("cusp_dim: k must be even and >= 2");
  if (k == 2) return 0;
  const long dim_m = k / 12 + (k % 12 == 2 ? 0 : 1);
  return dim_m - 1;
}

WeightSplit split_weight(long w) {
  if (w % 2 != 0) throw DomainError("split_weight: odd weight " + std::to_string(w));
  long r = ((w % 12) + 12) % 12;
  if (r == 2) r = 14;
  return {(w - r) / 12, r};
}

WeightSpec weight_data(long k) {
  if (k < 2 || k % 2 != 0) throw DomainError("weight_data: k must be even and >= 2, got " + std::to_string(k));
  const WeightSplit s = split_weight(2 - k);
  WeightSpec spec{k, k == 2 ? -1 : cusp_dim(k), s.kprime};
  if (s.l != -spec.d - 1) throw InternalError("weight_data: inconsistent dimension bookkeeping");
  return spec;
}

namespace {

// E_{k'} Delta^l with the given relative precision.
LaurentQSeries base_series(const WeightSplit& ws, long rel) {
  const LaurentQSeries e = eisenstein(ws.kprime, rel);
  const LaurentQSeries d = delta(rel + 1);
  return e * qseries::pow(d, ws.l);
}

}  // namespace

Basis::Basis(long w, long max_n, long trunc) : w_(w), max_n_(max_n), trunc_(trunc) {
  if (trunc < 1) throw DomainError("Basis: trunc must be >= 1");
  const WeightSplit ws = split_weight(w);
  l_ = ws.l;
  kprime_ = ws.kprime;
  work_trunc_ = std::max(trunc, l_ + 1);
  const long top = max_n + l_;
  if (top < 0) return;
  const long rel = work_trunc_ + max_n;
  const LaurentQSeries j = jinv(rel - 1);
  LaurentQSeries g = base_series(ws, rel);
  g_.reserve(static_cast<size_t>(top + 1));
  for (long s = 0; s <= top; ++s) {
    if (g.valuation() != l_ - s || g.coeffs()[0] != 1) {
      throw InternalError("Basis: monomial " + std::to_string(s) + " is not monic at its pole");
    }
    g_.push_back(g.truncated(work_trunc_));
    if (s < top) g = g * j;
  }
}

std::pair<LaurentQSeries, std::vector<BigInt>> Basis::form(long n) const {
  if (n > max_n_) throw DomainError("Basis::form: n above the basis size");
  if (!defined(n)) return {LaurentQSeries::zero(trunc_), {}};
  const long deg = n + l_;
  std::vector<BigInt> p(static_cast<size_t>(deg + 1));
  p[deg] = 1;
  LaurentQSeries f = g_[deg];
  for (long e = -n + 1; e <= l_; ++e) {
    const BigInt c = f.coeff(e);
    if (c == 0) continue;
    f = f - g_[l_ - e] * c;
    p[l_ - e] -= c;
  }
  if (f.valuation() != -n || f.coeff(-n) != 1) throw InternalError("Basis::form: elimination lost the leading term");
  return {f.truncated(trunc_), std::move(p)};
}

std::vector<BigInt> binomial_shift(const std::vector<BigInt>& poly, const BigInt& a) {
  const size_t n = poly.size();
  std::vector<BigInt> out(n);
  BigInt apow;
  for (size_t r = 0; r < n; ++r) {
    for (size_t s = r; s < n; ++s) {
      if (poly[s] == 0) continue;
      mpz_pow_ui(apow.get_mpz_t(), a.get_mpz_t(), s - r);
      out[r] += poly[s] * big_binomial(s, r) * apow;
    }
  }
  return out;
}

namespace {

FaberElement make_element(const WeightSpec& spec, long m, const Basis& basis) {
  FaberElement e;
  e.spec = spec;
  e.m = m;
  auto [series, poly] = basis.form(m);
  e.series = std::move(series);
  e.fpoly = std::move(poly);
  if (!e.fpoly.empty()) {
    e.cshift = binomial_shift(e.fpoly, 1728);
    for (long n = 1; n <= spec.d; ++n) e.principal[n] = e.series.coeff(-n);
  }
  return e;
}

}  // namespace

FaberElement faber_form(const WeightSpec& spec, long m, long trunc) {
  if (m < 0) throw DomainError("faber_form: m must be >= 0");
  const Basis basis(2 - spec.k, m, trunc);
  return make_element(spec, m, basis);
}

std::vector<FaberElement> faber_range(const WeightSpec& spec, long m_max, long trunc) {
  if (m_max < 0) throw DomainError("faber_range: m_max must be >= 0");
  const Basis basis(2 - spec.k, m_max, trunc);
  std::vector<FaberElement> out;
  out.reserve(static_cast<size_t>(m_max + 1));
  for (long m = 0; m <= m_max; ++m) out.push_back(make_element(spec, m, basis));
  return out;
}

std::map<long, BigInt> principal_part(const FaberElement& e) {
  if (e.is_zero()) throw DomainError("principal_part: zero form");
  std::map<long, BigInt> out;
  for (long n = 1; n <= e.spec.d; ++n) out[n] = e.series.coeff(-n);
  return out;
}

LaurentQSeries reconstruct(const FaberElement& e, long trunc) {
  if (e.is_zero()) return LaurentQSeries::zero(trunc);
  const WeightSplit ws = split_weight(2 - e.spec.k);
  const long deg = static_cast<long>(e.fpoly.size()) - 1;
  const long rel = std::max(trunc, ws.l + 1) + e.m;
  const LaurentQSeries j = jinv(rel - 1);
  LaurentQSeries acc = LaurentQSeries::constant(e.fpoly[deg], rel);
  for (long s = deg - 1; s >= 0; --s) {
    acc = acc * j + LaurentQSeries::constant(e.fpoly[s], rel);
  }
  return (base_series(ws, rel) * acc).truncated(trunc);
}

DualityReport duality_check(long k, long M, long N) {
  if (k <= 2 || k % 2 != 0) throw DomainError("duality_check: k must be even and > 2");
  if (M < 1 || N < 1) throw DomainError("duality_check: M, N must be >= 1");
  DualityReport rep;
  rep.k = k;
  rep.M = M;
  rep.N = N;
  const Basis neg(2 - k, M, N + 1);
  const Basis pos(k, N, M + 1);
  std::vector<LaurentQSeries> pos_forms;
  for (long n = 1; n <= N; ++n) pos_forms.push_back(pos.form(n).first);
  for (long m = 1; m <= M; ++m) {
    if (!neg.defined(m)) {
      rep.pairs_skipped += N;
      continue;
    }
    const LaurentQSeries f = neg.form(m).first;
    for (long n = 1; n <= N; ++n) {
      const BigInt lhs = f.coeff(n);
      const BigInt rhs = pos_forms[n - 1].coeff(m);
      ++rep.pairs_checked;
      if (abs(lhs) != abs(rhs)) {
        rep.violations.push_back({m, n, lhs, rhs});
        continue;
      }
      if (lhs == 0) continue;
      const int eps = sgn(lhs) * sgn(rhs);
      if (rep.epsilon == 0) {
        rep.epsilon = eps;
      } else if (eps != rep.epsilon) {
        throw DualityViolation("duality sign flips at m=" + std::to_string(m) + ", n=" + std::to_string(n));
      }
    }
  }
  return rep;
}

}  // namespace modasym::faber
