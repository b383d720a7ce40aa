#pragma once
#include <iosfwd>
#include <vector>

#include "eiscong/exactnum.hpp"

namespace eiscong {

enum class RingTag { Rational, Mod };

// Truncated q-expansion: coefficients for exponents 0..prec inclusive,
// all rational or all residues sharing one modulus.
class QSeries {
 public:
  static QSeries rational(long prec);
  static QSeries mod(long prec, Int modulus);

  long prec() const { return prec_; }
  RingTag tag() const { return tag_; }
  const Int& modulus() const { return modulus_; }  // 0 when rational

  const Rat& rat_at(long n) const;
  const Int& res_at(long n) const;
  void set(long n, const Rat& v);
  void set(long n, const Int& v);  // mod series; normalized into [0, m)

  bool operator==(const QSeries& o) const = default;

 private:
  QSeries(long prec, RingTag tag, Int modulus);
  void check_index(long n) const;

  long prec_;
  RingTag tag_;
  Int modulus_;
  std::vector<Rat> rat_;
  std::vector<Int> res_;
};

// Coefficient-wise binary ops at precision min(B1, B2); RingMismatch on
// differing ring tags or moduli.
QSeries add(const QSeries& a, const QSeries& b);
QSeries sub(const QSeries& a, const QSeries& b);
QSeries scale(const QSeries& g, const Rat& c);
QSeries scale(const QSeries& g, const Int& c);  // mod series

// g(q) -> g(q^s) at the same precision.
QSeries dilate(const QSeries& g, long s);

// Inverse of dilate: h with h(q^s) = d(q), precision floor(B/s).
// SupportViolation(n) at the smallest exponent not divisible by s
// (exponent 0 exempt).
QSeries extract(const QSeries& d, long s);

// Coefficient-wise image in Z/r; DenominatorNotInvertible(n, den) when
// r divides a coefficient denominator.
QSeries reduce_mod(const QSeries& g, const Int& r);

// Dump format: optional '#' comment lines, then 'prec=<B>', then
// 'ring=rational' with lines '<n> <num>/<den>' or 'ring=mod <m>' with
// lines '<n> <value>'. Save emits every index 0..B; round-trips bit-exactly.
void save_qseries(const QSeries& g, std::ostream& out);
QSeries load_qseries(std::istream& in);

}  // namespace eiscong
