#pragma once
#include "eiscong/qseries.hpp"

namespace eiscong {

// A: literal sigma(n/(n,M)); B: sigma(prime-to-M part of n).
enum class SpecialVariant { A, B };

struct SpecialFailure {
  long n;
  Int found;
  Int expected;
};

struct SpecialReport {
  long M = 0;
  Int r;
  SpecialVariant variant = SpecialVariant::B;
  long range = 0;
  bool pass = false;
  std::vector<SpecialFailure> failures;
};

// Expected coefficient of a form special at level M, before reduction:
// sigma-part (by variant) times prod_{p|M} (-1)^{ord_p(n)}.
Int special_expected(long n, long M, SpecialVariant v);

// Checks a_n(g) = special_expected(n) mod r for 1 <= n <= range.
SpecialReport is_special(const QSeries& g, long M, SpecialVariant v, long range);

// Canonical special witness: a_n defined by the specialness formula itself.
// Requires every p | M with p = -1 mod r (PrimeNotMinusOne otherwise).
QSeries synth_special(long M, long r, long B, SpecialVariant v);

// The Claim's lowering step: E = reduce(build_eisenstein(M, delta_s = 1,
// delta_p = p otherwise)); g' = 2^{-1} * extract(E - g, s) at precision
// floor(B/s). DenominatorNotInvertible for r in {2, 3}; SupportViolation if
// E - g is supported off q^s (the Claim's hypothesis fails for g).
QSeries lower_level(const QSeries& g, long M, long s, long r, long B);

// Indices 1..B where the claim-proof's literal formula
// sigma(n/(n,M)) * prod_{delta_p = p} p^{ord_p(n)} differs mod r from the
// eigenform-consistent eis_coeff, for the Claim's E (delta_s = 1).
std::vector<long> compare_claim_formula(long M, long s, long r, long B);

enum class R3Branch { UnitConstantTerm, ZeroConstantTerm, Mod9Construction };

struct R3Result {
  R3Branch branch;
  Int residue;  // (p-1)/24 mod 3, or (1-p)/8 mod 9 on the Mod9 branch
  Int modulus;  // 3 or 9
};

// The r = 3 endgame: p = 1 mod 3 but not mod 9 -> UnitConstantTerm;
// p = 1 mod 9 -> ZeroConstantTerm; p = 2 mod 3 -> Mod9Construction.
// Rejects p = 3.
R3Result classify_r3(long p);

const char* r3_branch_name(R3Branch b);

}  // namespace eiscong
