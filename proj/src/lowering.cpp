#include "eiscong/lowering.hpp"

#include <numeric>

#include "eiscong/eisenstein.hpp"

namespace eiscong {

Int special_expected(long n, long M, SpecialVariant v) {
  if (n < 1) throw FormatError("specialness is defined for n >= 1");
  auto ps = prime_factors(M);
  long sig = 1;
  for (long p : ps)
    if (ord_p(n, p) % 2 == 1) sig = -sig;
  long base = v == SpecialVariant::A ? n / std::gcd(n, M) : prime_to_part(n, ps);
  return sig * sigma(base);
}

SpecialReport is_special(const QSeries& g, long M, SpecialVariant v, long range) {
  if (g.tag() != RingTag::Mod)
    throw RingMismatch("is_special expects a mod-r series");
  if (!is_squarefree(M))
    throw FormatError("level " + std::to_string(M) + " is not square-free");
  if (range > g.prec())
    throw PrecisionTooSmall("range " + std::to_string(range) +
                            " exceeds precision " + std::to_string(g.prec()));
  SpecialReport rep;
  rep.M = M;
  rep.r = g.modulus();
  rep.variant = v;
  rep.range = range;
  for (long n = 1; n <= range; ++n) {
    Int want = mod_reduce(special_expected(n, M, v), g.modulus());
    if (g.res_at(n) != want)
      rep.failures.push_back({n, g.res_at(n), want});
  }
  rep.pass = rep.failures.empty();
  return rep;
}

QSeries synth_special(long M, long r, long B, SpecialVariant v) {
  if (!is_prime(r)) throw FormatError("modulus must be prime");
  if (!is_squarefree(M))
    throw FormatError("level " + std::to_string(M) + " is not square-free");
  for (long p : prime_factors(M))
    if ((p + 1) % r != 0) throw PrimeNotMinusOne(p, r);
  QSeries g = QSeries::mod(B, r);
  for (long n = 1; n <= B; ++n) g.set(n, special_expected(n, M, v));
  return g;
}

static DeltaChoice claim_delta(long M, long s) {
  if (M % s != 0 || !is_prime(s))
    throw FormatError("s must be a prime dividing M");
  std::map<long, long> d;
  for (long p : prime_factors(M)) d[p] = p == s ? 1 : p;
  return make_delta(M, d);
}

QSeries lower_level(const QSeries& g, long M, long s, long r, long B) {
  if (r == 2 || r == 3)
    throw DenominatorNotInvertible("lowering needs 2 and 24 invertible mod r; r = " +
                                   std::to_string(r));
  if (!is_prime(r)) throw FormatError("modulus must be prime");
  if (g.tag() != RingTag::Mod || g.modulus() != r)
    throw RingMismatch("series must be mod " + std::to_string(r));
  if (g.prec() < B)
    throw PrecisionTooSmall("series precision " + std::to_string(g.prec()) +
                            " below requested range " + std::to_string(B));
  DeltaChoice dc = claim_delta(M, s);
  QSeries E = reduce_mod(build_eisenstein(dc, B), r);
  QSeries d = sub(E, g);
  QSeries h = extract(d, s);
  Residue half = mod_inverse(Residue(2, r));
  return scale(h, half.value);
}

std::vector<long> compare_claim_formula(long M, long s, long r, long B) {
  if (!is_prime(r)) throw FormatError("modulus must be prime");
  DeltaChoice dc = claim_delta(M, s);
  Int rr(r);
  std::vector<long> out;
  for (long n = 1; n <= B; ++n) {
    Int literal = sigma(n / std::gcd(n, M));
    for (auto [p, v] : dc.delta)
      if (v == p)
        for (int i = 0; i < ord_p(n, p); ++i) literal *= p;
    Rat eig = eis_coeff(dc, n);
    if (mod_reduce(literal, rr) != mod_reduce(eig.get_num(), rr)) out.push_back(n);
  }
  return out;
}

R3Result classify_r3(long p) {
  if (!is_prime(p)) throw FormatError("classify_r3 requires prime p");
  if (p == 3) throw FormatError("classify_r3 is undefined at p = 3");
  auto rational_mod = [](const Rat& q, long m) {
    Int inv;
    Int mm(m);
    if (!mpz_invert(inv.get_mpz_t(), q.get_den().get_mpz_t(), mm.get_mpz_t()))
      throw DenominatorNotInvertible(q.get_den().get_str() + " mod " +
                                     std::to_string(m));
    return mod_reduce(q.get_num() * inv, mm);
  };
  if (p % 3 == 2) {
    Rat v(1 - p, 8);
    v.canonicalize();
    return {R3Branch::Mod9Construction, rational_mod(v, 9), 9};
  }
  Rat v(p - 1, 24);
  v.canonicalize();
  Int res = rational_mod(v, 3);
  if (p % 9 == 1) return {R3Branch::ZeroConstantTerm, res, 3};
  return {R3Branch::UnitConstantTerm, res, 3};
}

const char* r3_branch_name(R3Branch b) {
  switch (b) {
    case R3Branch::UnitConstantTerm: return "UnitConstantTerm";
    case R3Branch::ZeroConstantTerm: return "ZeroConstantTerm";
    case R3Branch::Mod9Construction: return "Mod9Construction";
  }
  return "?";
}

}  // namespace eiscong
