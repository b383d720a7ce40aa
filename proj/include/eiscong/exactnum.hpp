#pragma once
#include <gmpxx.h>

#include <utility>
#include <vector>

#include "eiscong/errors.hpp"

namespace eiscong {

using Int = mpz_class;
using Rat = mpq_class;

// Value in [0, m) with arithmetic only between equal moduli (m >= 2).
struct Residue {
  Int value;
  Int modulus;

  Residue(Int v, Int m);
  Residue operator+(const Residue& o) const;
  Residue operator-(const Residue& o) const;
  Residue operator*(const Residue& o) const;
  bool operator==(const Residue& o) const = default;
};

Residue mod_inverse(const Residue& a);  // NotAUnit when gcd(value, m) > 1

// Divisor sum over all d | n; rejects n = 0.
Int sigma(long n);

// Ascending (prime, exponent) pairs; empty for n = 1; rejects n = 0.
std::vector<std::pair<long, int>> factorize(long n);

// Distinct prime factors, ascending.
std::vector<long> prime_factors(long n);

// Largest e with p^e | n; rejects n = 0 and composite p.
int ord_p(long n, long p);

// n with every factor of a prime in S removed.
long prime_to_part(long n, const std::vector<long>& S);

bool is_prime(long n);
bool is_squarefree(long n);
std::vector<long> primes_up_to(long bound);

// a mod m normalized into [0, m); m >= 1.
Int mod_reduce(const Int& a, const Int& m);

}  // namespace eiscong
