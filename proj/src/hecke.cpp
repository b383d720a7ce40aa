#include "eiscong/hecke.hpp"

namespace eiscong {

HeckeOp hecke_T(long ell, long N) {
  if (!is_prime(ell)) throw FormatError("T requires prime index");
  if (N % ell == 0)
    throw FormatError("T_" + std::to_string(ell) + " requires l coprime to level " +
                      std::to_string(N));
  return HeckeOp{HeckeOp::Kind::T, ell, N};
}

HeckeOp hecke_U(long p, long N) {
  if (!is_prime(p)) throw FormatError("U requires prime index");
  if (N % p != 0)
    throw FormatError("U_" + std::to_string(p) + " requires p dividing level " +
                      std::to_string(N));
  return HeckeOp{HeckeOp::Kind::U, p, N};
}

QSeries apply(const HeckeOp& op, const QSeries& g) {
  long l = op.ell;
  long B = g.prec();
  if (B < l)
    throw PrecisionTooSmall("precision " + std::to_string(B) + " < operator index " +
                            std::to_string(l));
  long Bo = B / l;
  if (g.tag() == RingTag::Rational) {
    QSeries out = QSeries::rational(Bo);
    if (op.kind == HeckeOp::Kind::T) {
      out.set(0, Rat(g.rat_at(0) * (1 + l)));
      for (long n = 1; n <= Bo; ++n) {
        Rat v = g.rat_at(n * l);
        if (n % l == 0) v += Rat(l) * g.rat_at(n / l);
        out.set(n, v);
      }
    } else {
      out.set(0, g.rat_at(0));
      for (long n = 1; n <= Bo; ++n) out.set(n, g.rat_at(n * l));
    }
    return out;
  }
  QSeries out = QSeries::mod(Bo, g.modulus());
  if (op.kind == HeckeOp::Kind::T) {
    out.set(0, Int(g.res_at(0) * (1 + l)));
    for (long n = 1; n <= Bo; ++n) {
      Int v = g.res_at(n * l);
      if (n % l == 0) v += l * g.res_at(n / l);
      out.set(n, v);
    }
  } else {
    out.set(0, g.res_at(0));
    for (long n = 1; n <= Bo; ++n) out.set(n, g.res_at(n * l));
  }
  return out;
}

EigenResult check_eigen(const HeckeOp& op, const QSeries& g, const Rat& lambda) {
  QSeries lhs = apply(op, g);
  for (long n = 1; n <= lhs.prec(); ++n)
    if (lhs.rat_at(n) != lambda * g.rat_at(n)) return {false, n};
  return {true, -1};
}

EigenResult check_eigen(const HeckeOp& op, const QSeries& g, const Residue& lambda) {
  if (g.tag() != RingTag::Mod || g.modulus() != lambda.modulus)
    throw RingMismatch("eigenvalue modulus differs from series modulus");
  QSeries lhs = apply(op, g);
  for (long n = 1; n <= lhs.prec(); ++n)
    if (lhs.res_at(n) != mod_reduce(lambda.value * g.res_at(n), g.modulus()))
      return {false, n};
  return {true, -1};
}

long sturm_bound(long N) {
  if (N < 1) throw FormatError("sturm_bound requires N >= 1");
  // ceil((N/6) * prod (1 + 1/p)) computed exactly
  Rat b(N, 6);
  for (long p : prime_factors(N)) b *= Rat(p + 1, p);
  Int q = b.get_num() / b.get_den();
  if (q * b.get_den() != b.get_num()) q += 1;
  return q.get_si();
}

}  // namespace eiscong
