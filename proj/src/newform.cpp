#include "eiscong/newform.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace eiscong {

CurveInvariants curve_invariants(const WeierstrassCurve& c) {
  CurveInvariants v;
  v.b2 = c.a1 * c.a1 + 4 * c.a2;
  v.b4 = 2 * c.a4 + c.a1 * c.a3;
  v.b6 = c.a3 * c.a3 + 4 * c.a6;
  v.b8 = c.a1 * c.a1 * c.a6 + 4 * c.a2 * c.a6 - c.a1 * c.a3 * c.a4 +
         c.a2 * c.a3 * c.a3 - c.a4 * c.a4;
  v.c4 = v.b2 * v.b2 - 24 * v.b4;
  v.c6 = -v.b2 * v.b2 * v.b2 + 36 * v.b2 * v.b4 - 216 * v.b6;
  v.disc = -v.b2 * v.b2 * v.b8 - 8 * v.b4 * v.b4 * v.b4 - 27 * v.b6 * v.b6 +
           9 * v.b2 * v.b4 * v.b6;
  if (v.c4 * v.c4 * v.c4 - v.c6 * v.c6 != 1728 * v.disc)
    throw FormatError("curve invariant identity failed for " + c.label);
  return v;
}

void validate_curve(const WeierstrassCurve& c) {
  if (c.N < 1) throw FormatError("conductor must be positive");
  CurveInvariants v = curve_invariants(c);
  if (v.disc == 0) throw FormatError("curve " + c.label + " is singular");
  for (long p : prime_factors(c.N))
    if (!mpz_divisible_ui_p(v.disc.get_mpz_t(), p))
      throw FormatError("declared bad prime " + std::to_string(p) +
                        " has good reduction for " + c.label);
  // singular primes outside N contradict the declared conductor (minimal model
  // assumed); trial-divide the discriminant at desk scale
  Int d = abs(v.disc);
  for (long p = 2; p <= 1000000 && d > 1; p += (p == 2 ? 1 : 2)) {
    if (!mpz_divisible_ui_p(d.get_mpz_t(), p)) continue;
    while (mpz_divisible_ui_p(d.get_mpz_t(), p)) d /= p;
    if (c.N % p != 0)
      throw FormatError("prime " + std::to_string(p) +
                        " divides the discriminant of " + c.label +
                        " but not its declared conductor");
  }
}

static long powmod(long b, long e, long m) {
  long r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

static long to_mod(const Int& a, long p) {
  Int v = mod_reduce(a, Int(p));
  return v.get_si();
}

long count_points(const WeierstrassCurve& c, long p) {
  if (!is_prime(p)) throw FormatError("count_points requires prime p");
  if (p == 2) {
    long a1 = to_mod(c.a1, 2), a2 = to_mod(c.a2, 2), a3 = to_mod(c.a3, 2),
         a4 = to_mod(c.a4, 2), a6 = to_mod(c.a6, 2);
    long cnt = 1;
    for (long x = 0; x < 2; ++x)
      for (long y = 0; y < 2; ++y) {
        long lhs = (y * y + a1 * x * y + a3 * y) % 2;
        long rhs = (x * x * x + a2 * x * x + a4 * x + a6) % 2;
        if (lhs == rhs) ++cnt;
      }
    return cnt;
  }
  // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6; for each x the number of
  // y is 1 + chi(rhs)
  CurveInvariants v = curve_invariants(c);
  long b2 = to_mod(v.b2, p), b4 = to_mod(v.b4, p), b6 = to_mod(v.b6, p);
  long cnt = 1;
  for (long x = 0; x < p; ++x) {
    long u = (4 * x % p * x % p * x % p + b2 * x % p * x % p + 2 * b4 * x % p + b6) % p;
    if (u == 0) {
      cnt += 1;
    } else {
      long chi = powmod(u, (p - 1) / 2, p);
      cnt += chi == 1 ? 2 : 0;
    }
  }
  return cnt;
}

Int ap_from_curve(const WeierstrassCurve& c, long ell) {
  if (ell > 10000) throw FormatError("oracle bound is 10^4");
  long cnt = count_points(c, ell);
  Int ap = ell + 1 - cnt;
  if (c.N % ell == 0 && ap != 1 && ap != -1) throw AdditiveReduction(ell);
  return ap;
}

NewformData newform_from_curve(const WeierstrassCurve& c, long bound,
                               bool allow_additive) {
  validate_curve(c);
  if (!allow_additive && !is_squarefree(c.N))
    throw FormatError("conductor " + std::to_string(c.N) + " is not square-free");
  NewformData f;
  f.N = c.N;
  f.label = c.label;
  {
    std::ostringstream src;
    src << "curve:" << c.a1 << "," << c.a2 << "," << c.a3 << "," << c.a4 << ","
        << c.a6;
    f.source = src.str();
  }
  // The canonical bound is the largest prime recorded, matching what a file
  // round trip reconstructs.
  f.bound = 0;
  for (long l : primes_up_to(bound)) {
    f.bound = l;
    if (c.N % l == 0) {
      Int ap;
      try {
        ap = ap_from_curve(c, l);
      } catch (const AdditiveReduction&) {
        if (!allow_additive) throw;
        ap = 0;
      }
      f.ap[l] = ap;
      f.w[l] = ap == 0 ? +1 : -static_cast<int>(ap.get_si());
    } else {
      f.ap[l] = ap_from_curve(c, l);
    }
  }
  return f;
}

QSeries extend_coeffs(const NewformData& f, long B) {
  std::vector<Int> a(B + 1, Int(0));
  if (B >= 1) a[1] = 1;
  std::vector<long> least(B + 1, 0);  // least prime factor
  for (long n = 2; n <= B; ++n)
    if (least[n] == 0)
      for (long m = n; m <= B; m += n)
        if (least[m] == 0) least[m] = n;
  for (long n = 2; n <= B; ++n) {
    long l = least[n];
    long pk = l, m = n / l;
    while (m % l == 0) {
      pk *= l;
      m /= l;
    }
    if (m > 1) {
      a[n] = a[pk] * a[m];  // coprime split
      continue;
    }
    auto it = f.ap.find(l);
    if (it == f.ap.end()) throw MissingPrime(l);
    const Int& al = it->second;
    if (n == l) {
      a[n] = al;
    } else if (f.N % l == 0) {
      a[n] = al * a[n / l];  // a_{p^k} = a_p^k
    } else {
      a[n] = al * a[n / l] - l * a[n / (l * l)];
    }
  }
  QSeries g = QSeries::rational(B);
  for (long n = 1; n <= B; ++n) g.set(n, Rat(a[n]));
  return g;
}

// ---- torsion ----

namespace {

struct ShortPoint {  // on Y^2 = X^3 + A X + B; infinite when inf is true
  bool inf = true;
  Rat x, y;
};

ShortPoint sp_add(const ShortPoint& P, const ShortPoint& Q, const Int& A) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  if (P.x == Q.x && P.y == -Q.y) return {};
  Rat lam;
  if (P.x == Q.x) {
    lam = Rat(3 * P.x * P.x + A) / (2 * P.y);
  } else {
    lam = (Q.y - P.y) / (Q.x - P.x);
  }
  ShortPoint R;
  R.inf = false;
  R.x = lam * lam - P.x - Q.x;
  R.y = lam * (P.x - R.x) - P.y;
  R.x.canonicalize();
  R.y.canonicalize();
  return R;
}

// Order of P if <= 16, else 0. Torsion points on an integral short model have
// integral multiples, so a non-integral multiple ends the search early.
int sp_order(const ShortPoint& P, const Int& A) {
  ShortPoint Q;
  for (int k = 1; k <= 16; ++k) {
    Q = sp_add(Q, P, A);
    if (Q.inf) return k;
    if (Q.x.get_den() != 1 || Q.y.get_den() != 1) return 0;
  }
  return 0;
}

// Integer roots of X^3 + A X + B = C by exact bisection on monotone segments.
std::vector<Int> cubic_integer_roots(const Int& A, const Int& B, const Int& C) {
  auto f = [&](const Int& x) -> Int { return x * x * x + A * x + B - C; };
  // segment endpoints: +-bound with bound = 1 + max(|A|,|B-C|,1), plus the
  // critical points +-sqrt(-A/3) when A < 0
  Int bound = 1;
  Int absA = abs(A);
  Int absBC = abs(Int(B - C));
  if (absA > bound) bound = absA;
  if (absBC > bound) bound = absBC;
  bound += 1;
  std::vector<Int> cuts{-bound, bound};
  if (A < 0) {
    Int m = (-A) / 3;
    Int s = sqrt(m);
    for (long d = -1; d <= 2; ++d) {
      Int t = s + d;
      if (t > 0) {
        cuts.push_back(t);
        cuts.push_back(-t);
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<Int> roots;
  auto push = [&](const Int& x) {
    if (f(x) == 0 && std::find(roots.begin(), roots.end(), x) == roots.end())
      roots.push_back(x);
  };
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    Int lo = cuts[i], hi = cuts[i + 1];
    push(lo);
    push(hi);
    if (f(lo) == 0 || f(hi) == 0) continue;
    if ((f(lo) < 0) == (f(hi) < 0)) continue;
    bool inc = f(lo) < 0;
    while (hi - lo > 1) {
      Int mid = (lo + hi) / 2;
      Int val = f(mid);
      if (val == 0) {
        push(mid);
        break;
      }
      if ((val < 0) == inc)
        lo = mid;
      else
        hi = mid;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// All y >= 0 with y^2 | 2^12 3^12 |disc| (candidate Lutz-Nagell ordinates).
std::vector<Int> square_divisor_candidates(const Int& disc) {
  std::map<long, int> expo{{2, 12}, {3, 12}};
  Int d = abs(disc);
  for (long p = 2; d > 1; p += (p == 2 ? 1 : 2)) {
    if (Int(p) * p > d) {
      if (d.fits_slong_p()) {
        expo[d.get_si()] += 1;
        break;
      }
      throw Inconclusive("discriminant too large to factor at desk scale");
    }
    while (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
      expo[p] += 1;
      d /= p;
    }
  }
  std::vector<Int> out{0};
  std::vector<Int> acc{1};
  for (auto [p, e] : expo) {
    std::vector<Int> next;
    for (const Int& v : acc) {
      Int pk = 1;
      for (int i = 0; i <= e / 2; ++i) {
        next.push_back(v * pk);
        pk *= p;
      }
    }
    acc = std::move(next);
  }
  out.insert(out.end(), acc.begin(), acc.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

long torsion_order(const WeierstrassCurve& c) {
  validate_curve(c);
  CurveInvariants v = curve_invariants(c);
  // oracle 1: gcd of #E~(F_l) over 20 good odd primes
  Int g = 0;
  int used = 0;
  for (long l = 3; used < 20; l += 2) {
    if (!is_prime(l)) continue;
    if (c.N % l == 0 || mpz_divisible_ui_p(v.disc.get_mpz_t(), l)) continue;
    g = gcd(g, Int(count_points(c, l)));
    ++used;
  }
  // oracle 2: Lutz-Nagell on Y^2 = X^3 - 27 c4 X - 54 c6,
  // (X, Y) = (36 x + 3 b2, 108(2y + a1 x + a3))
  Int A = -27 * v.c4, B = -54 * v.c6;
  long points = 0;  // nontrivial torsion points found
  for (const Int& y : square_divisor_candidates(v.disc)) {
    for (const Int& x : cubic_integer_roots(A, B, y * y)) {
      ShortPoint P{false, Rat(x), Rat(y)};
      int ord = sp_order(P, A);
      if (ord > 0) points += y == 0 ? 1 : 2;  // (x, y) and (x, -y)
    }
  }
  long search = points + 1;
  if (g != search)
    throw Inconclusive("torsion oracles disagree for " + c.label + ": gcd bound " +
                       g.get_str() + ", point search " + std::to_string(search));
  return search;
}

// ---- files ----

static bool nf_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos) continue;
    if (line[i] == '#') continue;
    size_t j = line.find_last_not_of(" \t\r");
    line = line.substr(i, j - i + 1);
    return true;
  }
  return false;
}

NewformData load_newform(std::istream& in) {
  NewformData f;
  std::string line;
  bool have_level = false, have_label = false, have_source = false;
  std::set<long> seen;
  while (nf_content_line(in, line)) {
    if (line.rfind("level=", 0) == 0) {
      if (have_level) throw FormatError("duplicate level= line");
      try {
        f.N = std::stol(line.substr(6));
      } catch (const std::exception&) {
        throw FormatError("bad level: " + line);
      }
      if (f.N < 1) throw FormatError("level must be positive");
      have_level = true;
      continue;
    }
    if (line.rfind("label=", 0) == 0) {
      if (have_label) throw FormatError("duplicate label= line");
      f.label = line.substr(6);
      have_label = true;
      continue;
    }
    if (line.rfind("source=", 0) == 0) {
      if (have_source) throw FormatError("duplicate source= line");
      f.source = line.substr(7);
      have_source = true;
      continue;
    }
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind != "P" && kind != "L") throw FormatError("unrecognized line: " + line);
    if (!have_level) throw FormatError("coefficient row before level= line");
    long p;
    std::string aval;
    if (!(ls >> p >> aval)) throw FormatError("bad coefficient row: " + line);
    if (!is_prime(p)) throw FormatError("non-prime index in row: " + line);
    if (!seen.insert(p).second)
      throw FormatError("duplicate prime " + std::to_string(p));
    Int a;
    if (mpz_set_str(a.get_mpz_t(), aval.c_str(), 10) != 0)
      throw FormatError("bad coefficient value: " + aval);
    if (kind == "P") {
      if (f.N % p != 0)
        throw FormatError("P row prime " + std::to_string(p) +
                          " does not divide level " + std::to_string(f.N));
      std::string wval;
      if (!(ls >> wval)) throw FormatError("P row missing sign: " + line);
      int w;
      if (wval == "+1" || wval == "1")
        w = 1;
      else if (wval == "-1")
        w = -1;
      else
        throw FormatError("bad AL sign: " + wval);
      bool exact = (f.N / p) % p != 0;  // p || N
      if (exact) {
        if (a != 1 && a != -1)
          throw FormatError("a_p must be +-1 at p || N; got " + aval + " at p=" +
                            std::to_string(p));
        if (Int(w) != -a)
          throw FormatError("w_p != -a_p at p=" + std::to_string(p));
      } else if (a != 0) {
        throw FormatError("expected a_p = 0 at additive prime " + std::to_string(p));
      }
      f.ap[p] = a;
      f.w[p] = w;
    } else {
      if (f.N % p == 0)
        throw FormatError("L row prime " + std::to_string(p) + " divides level");
      std::string extra;
      if (ls >> extra) throw FormatError("trailing data on L row: " + line);
      f.ap[p] = a;
    }
  }
  if (!have_level || !have_label || !have_source)
    throw FormatError("newform file must declare level=, label=, source=");
  for (long p : prime_factors(f.N))
    if (!f.w.count(p))
      throw FormatError("missing bad prime " + std::to_string(p));
  long maxp = 0;
  for (auto& [p, a] : f.ap) maxp = std::max(maxp, p);
  for (long l : primes_up_to(maxp))
    if (!f.ap.count(l))
      throw FormatError("gap in prime coefficients at " + std::to_string(l));
  f.bound = maxp;
  return f;
}

void save_newform(const NewformData& f, std::ostream& out) {
  out << "level=" << f.N << "\n";
  out << "label=" << f.label << "\n";
  out << "source=" << f.source << "\n";
  for (auto& [p, a] : f.ap)
    if (f.N % p == 0)
      out << "P " << p << " " << a << " " << (f.w.at(p) > 0 ? "+1" : "-1") << "\n";
  for (auto& [p, a] : f.ap)
    if (f.N % p != 0) out << "L " << p << " " << a << "\n";
}

std::optional<WeierstrassCurve> curve_from_source(const NewformData& f) {
  if (f.source.rfind("curve:", 0) != 0) return std::nullopt;
  std::string rest = f.source.substr(6);
  for (char& ch : rest)
    if (ch == ',') ch = ' ';
  std::istringstream ls(rest);
  std::string s1, s2, s3, s4, s6;
  if (!(ls >> s1 >> s2 >> s3 >> s4 >> s6))
    throw FormatError("bad curve source: " + f.source);
  WeierstrassCurve c;
  auto parse = [](const std::string& s) {
    Int v;
    if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
      throw FormatError("bad curve coefficient: " + s);
    return v;
  };
  c.a1 = parse(s1);
  c.a2 = parse(s2);
  c.a3 = parse(s3);
  c.a4 = parse(s4);
  c.a6 = parse(s6);
  c.N = f.N;
  c.label = f.label;
  return c;
}

std::vector<std::string> verify_against_oracle(const NewformData& f) {
  auto c = curve_from_source(f);
  if (!c) throw FormatError("source records no curve to verify against");
  bool additive_ok = !is_squarefree(f.N);
  NewformData fresh = newform_from_curve(*c, f.bound, additive_ok);
  std::vector<std::string> diffs;
  for (auto& [p, a] : f.ap) {
    auto it = fresh.ap.find(p);
    if (it == fresh.ap.end() || it->second != a)
      diffs.push_back("a_" + std::to_string(p) + ": file " + a.get_str() +
                      ", oracle " +
                      (it == fresh.ap.end() ? std::string("absent")
                                            : it->second.get_str()));
  }
  for (auto& [p, w] : f.w) {
    auto it = fresh.w.find(p);
    if (it == fresh.w.end() || it->second != w)
      diffs.push_back("w_" + std::to_string(p) + ": file " + std::to_string(w) +
                      ", oracle " +
                      (it == fresh.w.end() ? std::string("absent")
                                           : std::to_string(it->second)));
  }
  return diffs;
}

std::vector<WeierstrassCurve> load_curves(std::istream& in) {
  std::vector<WeierstrassCurve> out;
  std::string line;
  while (nf_content_line(in, line)) {
    std::istringstream ls(line);
    WeierstrassCurve c;
    long a1, a2, a3, a4, a6;
    if (!(ls >> c.label >> c.N >> a1 >> a2 >> a3 >> a4 >> a6))
      throw FormatError("bad curve line: " + line);
    c.a1 = a1;
    c.a2 = a2;
    c.a3 = a3;
    c.a4 = a4;
    c.a6 = a6;
    out.push_back(c);
  }
  return out;
}

}  // namespace eiscong
