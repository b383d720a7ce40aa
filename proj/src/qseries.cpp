#include "eiscong/qseries.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace eiscong {

QSeries::QSeries(long prec, RingTag tag, Int modulus)
    : prec_(prec), tag_(tag), modulus_(std::move(modulus)) {
  if (prec_ < 0) throw FormatError("precision must be >= 0");
  if (tag_ == RingTag::Rational) {
    rat_.assign(prec_ + 1, Rat(0));
  } else {
    if (modulus_ < 2) throw FormatError("series modulus must be >= 2");
    res_.assign(prec_ + 1, Int(0));
  }
}

QSeries QSeries::rational(long prec) { return QSeries(prec, RingTag::Rational, 0); }

QSeries QSeries::mod(long prec, Int modulus) {
  return QSeries(prec, RingTag::Mod, std::move(modulus));
}

void QSeries::check_index(long n) const {
  if (n < 0 || n > prec_)
    throw FormatError("index " + std::to_string(n) + " outside precision " +
                      std::to_string(prec_));
}

const Rat& QSeries::rat_at(long n) const {
  check_index(n);
  if (tag_ != RingTag::Rational) throw RingMismatch("rational access on mod series");
  return rat_[n];
}

const Int& QSeries::res_at(long n) const {
  check_index(n);
  if (tag_ != RingTag::Mod) throw RingMismatch("residue access on rational series");
  return res_[n];
}

void QSeries::set(long n, const Rat& v) {
  check_index(n);
  if (tag_ != RingTag::Rational) throw RingMismatch("rational write on mod series");
  rat_[n] = v;
  rat_[n].canonicalize();
}

void QSeries::set(long n, const Int& v) {
  check_index(n);
  if (tag_ != RingTag::Mod) throw RingMismatch("residue write on rational series");
  res_[n] = mod_reduce(v, modulus_);
}

static void require_same_ring(const QSeries& a, const QSeries& b) {
  if (a.tag() != b.tag() ||
      (a.tag() == RingTag::Mod && a.modulus() != b.modulus()))
    throw RingMismatch("series rings differ");
}

template <typename F>
static QSeries binop(const QSeries& a, const QSeries& b, F f) {
  require_same_ring(a, b);
  long B = std::min(a.prec(), b.prec());
  if (a.tag() == RingTag::Rational) {
    QSeries out = QSeries::rational(B);
    for (long n = 0; n <= B; ++n) out.set(n, Rat(f(a.rat_at(n), b.rat_at(n))));
    return out;
  }
  QSeries out = QSeries::mod(B, a.modulus());
  for (long n = 0; n <= B; ++n) out.set(n, Int(f(a.res_at(n), b.res_at(n))));
  return out;
}

QSeries add(const QSeries& a, const QSeries& b) {
  return binop(a, b, [](const auto& x, const auto& y) { return x + y; });
}

QSeries sub(const QSeries& a, const QSeries& b) {
  return binop(a, b, [](const auto& x, const auto& y) { return x - y; });
}

QSeries scale(const QSeries& g, const Rat& c) {
  if (g.tag() != RingTag::Rational) throw RingMismatch("rational scale on mod series");
  QSeries out = QSeries::rational(g.prec());
  for (long n = 0; n <= g.prec(); ++n) out.set(n, Rat(g.rat_at(n) * c));
  return out;
}

QSeries scale(const QSeries& g, const Int& c) {
  if (g.tag() != RingTag::Mod) throw RingMismatch("residue scale on rational series");
  QSeries out = QSeries::mod(g.prec(), g.modulus());
  for (long n = 0; n <= g.prec(); ++n) out.set(n, Int(g.res_at(n) * c));
  return out;
}

QSeries dilate(const QSeries& g, long s) {
  if (s < 2) throw FormatError("dilate requires s >= 2");
  long B = g.prec();
  if (g.tag() == RingTag::Rational) {
    QSeries out = QSeries::rational(B);
    for (long n = 0; n <= B; n += s) out.set(n, g.rat_at(n / s));
    return out;
  }
  QSeries out = QSeries::mod(B, g.modulus());
  for (long n = 0; n <= B; n += s) out.set(n, g.res_at(n / s));
  return out;
}

QSeries extract(const QSeries& d, long s) {
  if (s < 2) throw FormatError("extract requires s >= 2");
  long B = d.prec();
  for (long n = 1; n <= B; ++n) {
    if (n % s == 0) continue;
    bool zero = d.tag() == RingTag::Rational ? d.rat_at(n) == 0 : d.res_at(n) == 0;
    if (!zero) throw SupportViolation(n);
  }
  long Bh = B / s;
  if (d.tag() == RingTag::Rational) {
    QSeries out = QSeries::rational(Bh);
    for (long m = 0; m <= Bh; ++m) out.set(m, d.rat_at(m * s));
    return out;
  }
  QSeries out = QSeries::mod(Bh, d.modulus());
  for (long m = 0; m <= Bh; ++m) out.set(m, d.res_at(m * s));
  return out;
}

QSeries reduce_mod(const QSeries& g, const Int& r) {
  if (g.tag() != RingTag::Rational)
    throw RingMismatch("reduce_mod expects a rational series");
  QSeries out = QSeries::mod(g.prec(), r);
  for (long n = 0; n <= g.prec(); ++n) {
    const Rat& q = g.rat_at(n);
    Int den = q.get_den();
    Int inv;
    if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), r.get_mpz_t()))
      throw DenominatorNotInvertible("coefficient " + std::to_string(n) +
                                     " has denominator " + den.get_str() +
                                     " not invertible mod " + r.get_str());
    out.set(n, Int(q.get_num() * inv));
  }
  return out;
}

void save_qseries(const QSeries& g, std::ostream& out) {
  out << "prec=" << g.prec() << "\n";
  if (g.tag() == RingTag::Rational) {
    out << "ring=rational\n";
    for (long n = 0; n <= g.prec(); ++n) {
      const Rat& q = g.rat_at(n);
      out << n << " " << q.get_num() << "/" << q.get_den() << "\n";
    }
  } else {
    out << "ring=mod " << g.modulus() << "\n";
    for (long n = 0; n <= g.prec(); ++n) out << n << " " << g.res_at(n) << "\n";
  }
}

static bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos) continue;
    if (line[i] == '#') continue;
    if (i > 0 || line.back() == '\r') {
      size_t j = line.find_last_not_of(" \t\r");
      line = line.substr(i, j - i + 1);
    }
    return true;
  }
  return false;
}

QSeries load_qseries(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line) || line.rfind("prec=", 0) != 0)
    throw FormatError("qseries dump must start with prec=<B>");
  long B;
  try {
    B = std::stol(line.substr(5));
  } catch (const std::exception&) {
    throw FormatError("bad precision line: " + line);
  }
  if (!next_content_line(in, line) || line.rfind("ring=", 0) != 0)
    throw FormatError("qseries dump missing ring= line");
  std::string ring = line.substr(5);
  QSeries g = QSeries::rational(0);
  bool rational;
  if (ring == "rational") {
    g = QSeries::rational(B);
    rational = true;
  } else if (ring.rfind("mod ", 0) == 0) {
    Int m;
    if (mpz_set_str(m.get_mpz_t(), ring.substr(4).c_str(), 10) != 0)
      throw FormatError("bad modulus: " + ring);
    g = QSeries::mod(B, m);
    rational = false;
  } else {
    throw FormatError("unknown ring tag: " + ring);
  }
  while (next_content_line(in, line)) {
    std::istringstream ls(line);
    long n;
    std::string val;
    if (!(ls >> n >> val)) throw FormatError("bad coefficient line: " + line);
    if (n < 0 || n > B)
      throw FormatError("coefficient index " + std::to_string(n) +
                        " outside precision " + std::to_string(B));
    if (rational) {
      Rat q;
      if (mpq_set_str(q.get_mpq_t(), val.c_str(), 10) != 0)
        throw FormatError("bad rational value: " + val);
      q.canonicalize();
      g.set(n, q);
    } else {
      Int v;
      if (mpz_set_str(v.get_mpz_t(), val.c_str(), 10) != 0)
        throw FormatError("bad residue value: " + val);
      g.set(n, v);
    }
  }
  return g;
}

}  // namespace eiscong
