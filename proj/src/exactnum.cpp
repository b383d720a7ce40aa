#include "eiscong/exactnum.hpp"

#include <algorithm>

namespace eiscong {

Int mod_reduce(const Int& a, const Int& m) {
  Int v;
  mpz_mod(v.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());  // sign of m, result >= 0
  return v;
}

Residue::Residue(Int v, Int m) : value(), modulus(std::move(m)) {
  if (modulus < 2) throw FormatError("residue modulus must be >= 2");
  value = mod_reduce(v, modulus);
}

static void require_same_modulus(const Residue& a, const Residue& b) {
  if (a.modulus != b.modulus)
    throw RingMismatch("residue moduli " + a.modulus.get_str() + " and " +
                       b.modulus.get_str());
}

Residue Residue::operator+(const Residue& o) const {
  require_same_modulus(*this, o);
  return Residue(value + o.value, modulus);
}

Residue Residue::operator-(const Residue& o) const {
  require_same_modulus(*this, o);
  return Residue(value - o.value, modulus);
}

Residue Residue::operator*(const Residue& o) const {
  require_same_modulus(*this, o);
  return Residue(value * o.value, modulus);
}

Residue mod_inverse(const Residue& a) {
  Int inv;
  int ok = mpz_invert(inv.get_mpz_t(), a.value.get_mpz_t(), a.modulus.get_mpz_t());
  if (!ok)
    throw NotAUnit(a.value.get_str() + " mod " + a.modulus.get_str());
  return Residue(inv, a.modulus);
}

Int sigma(long n) {
  if (n < 1) throw FormatError("sigma requires n >= 1");
  Int total = 1;
  for (auto [p, e] : factorize(n)) {
    // 1 + p + ... + p^e
    Int geom = 0, pk = 1;
    for (int i = 0; i <= e; ++i) {
      geom += pk;
      pk *= p;
    }
    total *= geom;
  }
  return total;
}

std::vector<std::pair<long, int>> factorize(long n) {
  if (n < 1) throw FormatError("factorize requires n >= 1");
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> ps;
  for (auto [p, e] : factorize(n)) ps.push_back(p);
  return ps;
}

int ord_p(long n, long p) {
  if (n < 1) throw FormatError("ord_p requires n >= 1");
  if (!is_prime(p)) throw FormatError("ord_p requires prime p");
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

long prime_to_part(long n, const std::vector<long>& S) {
  if (n < 1) throw FormatError("prime_to_part requires n >= 1");
  for (long p : S)
    while (n % p == 0) n /= p;
  return n;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2))
    if (n % p == 0) return false;
  return true;
}

bool is_squarefree(long n) {
  if (n < 1) return false;
  for (auto [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

std::vector<long> primes_up_to(long bound) {
  std::vector<long> out;
  if (bound < 2) return out;
  std::vector<bool> comp(bound + 1, false);
  for (long i = 2; i <= bound; ++i) {
    if (!comp[i]) {
      out.push_back(i);
      for (long j = i * i; j <= bound; j += i) comp[j] = true;
    }
  }
  return out;
}

}  // namespace eiscong
