#pragma once
#include <map>

#include "eiscong/qseries.hpp"

namespace eiscong {

// Eigenvalue prescription delta_p in {1, p} for each prime p | N;
// N square-free, at least one delta_p = 1.
struct DeltaChoice {
  long N;
  std::map<long, long> delta;
};

// Validates the DeltaChoice invariants; FormatError on violation.
DeltaChoice make_delta(long N, const std::map<long, long>& delta);

// All valid DeltaChoices for square-free N (every assignment except all-p).
std::vector<DeltaChoice> all_delta_choices(long N);

// e(q): a0 = 1/24, a_n = sigma(n) for n >= 1.
QSeries e_series(long B);

// g - p * g(q^p): U_p-eigenvalue 1.
QSeries raise_keep_one(const QSeries& g, long p);

// g - g(q^p): U_p-eigenvalue p, constant term 0.
QSeries raise_keep_p(const QSeries& g, long p);

// Iterated level raising from e(q), primes ascending; a_l(E) = l+1 for
// good l, a_p(E) = delta_p for p | N.
QSeries build_eisenstein(const DeltaChoice& dc, long B);

// Closed form: n >= 1 -> sigma(n0) * prod_{delta_p = p} p^{ord_p(n)} with n0
// the prime-to-N part of n; n = 0 -> 0 if some delta_p = p, else
// (1/24) * prod_{p|N} (1-p).
Rat eis_coeff(const DeltaChoice& dc, long n);

}  // namespace eiscong
