#pragma once
#include "eiscong/qseries.hpp"

namespace eiscong {

// T(l) for primes l not dividing the level, U(p) for primes dividing it.
struct HeckeOp {
  enum class Kind { T, U };
  Kind kind;
  long ell;
  long N;
};

HeckeOp hecke_T(long ell, long N);
HeckeOp hecke_U(long p, long N);

// Weight-2 action: a_n(T_l g) = a_{nl} + l*a_{n/l} (a_{n/l} = 0 unless l | n),
// a0(T_l g) = (1+l)*a0; a_n(U_p g) = a_{np}, a0(U_p g) = a0.
// Output precision floor(B/l); PrecisionTooSmall when B < l.
QSeries apply(const HeckeOp& op, const QSeries& g);

struct EigenResult {
  bool ok;
  long first_fail;  // -1 when ok; comparison covers indices 1..floor(B/l)
};

EigenResult check_eigen(const HeckeOp& op, const QSeries& g, const Rat& lambda);
EigenResult check_eigen(const HeckeOp& op, const QSeries& g, const Residue& lambda);

// ceil((N/6) * prod_{p|N} (1 + 1/p)), the weight-2 Sturm bound for Gamma0(N).
long sturm_bound(long N);

}  // namespace eiscong
