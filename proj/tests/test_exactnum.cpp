#include <doctest.h>

#include <numeric>

#include "eiscong/exactnum.hpp"

using namespace eiscong;

TEST_CASE("sigma on anchors") {
  CHECK(sigma(1) == 1);
  CHECK(sigma(6) == 12);
  CHECK(sigma(19) == 20);
  CHECK_THROWS_AS(sigma(0), FormatError);
}

TEST_CASE("factorize on anchors") {
  CHECK(factorize(1).empty());
  CHECK(factorize(26) ==
        std::vector<std::pair<long, int>>{{2, 1}, {13, 1}});
  CHECK(factorize(99) ==
        std::vector<std::pair<long, int>>{{3, 2}, {11, 1}});
  CHECK_THROWS_AS(factorize(0), FormatError);
}

TEST_CASE("sigma agrees with divisor enumeration through factorize") {
  // Cross-check the two routines: sum p^e-generated divisors directly.
  for (long n = 1; n <= 10000; ++n) {
    Int total = 1;
    for (auto [p, e] : factorize(n)) {
      Int geom = 0, pk = 1;
      for (int k = 0; k <= e; ++k) {
        geom += pk;
        pk *= p;
      }
      total *= geom;
    }
    REQUIRE(sigma(n) == total);
  }
}

TEST_CASE("sigma is multiplicative on coprime pairs") {
  for (long m = 1; m <= 500; ++m)
    for (long n = m; n <= 500; ++n)
      if (std::gcd(m, n) == 1) REQUIRE(sigma(m * n) == sigma(m) * sigma(n));
}

TEST_CASE("ord_p on anchors") {
  CHECK(ord_p(7, 2) == 0);
  CHECK(ord_p(12, 2) == 2);
  CHECK(ord_p(27, 3) == 3);
  CHECK_THROWS_AS(ord_p(0, 2), FormatError);
  CHECK_THROWS_AS(ord_p(10, 4), FormatError);
}

TEST_CASE("prime_to_part on anchors and properties") {
  CHECK(prime_to_part(40, {2, 5}) == 1);
  CHECK(prime_to_part(90, {3}) == 10);
  CHECK(prime_to_part(7, {2, 13}) == 7);
  for (long n = 1; n <= 300; ++n) {
    long part = prime_to_part(n, {2, 3, 7});
    CHECK(n % part == 0);
    for (long p : {2L, 3L, 7L}) CHECK(part % p != 0);
  }
}

TEST_CASE("mod_inverse anchors") {
  CHECK(mod_inverse(Residue(Int(2), Int(5))) == Residue(Int(3), Int(5)));
  CHECK(mod_inverse(Residue(Int(1), Int(9))) == Residue(Int(1), Int(9)));
  CHECK_THROWS_AS(mod_inverse(Residue(Int(3), Int(9))), NotAUnit);
}

TEST_CASE("mod_inverse is an involution on units") {
  for (long m = 2; m <= 100; ++m)
    for (long a = 1; a < m; ++a)
      if (std::gcd(a, m) == 1) {
        Residue x{Int(a), Int(m)};
        REQUIRE(mod_inverse(mod_inverse(x)) == x);
        REQUIRE(mod_inverse(x) * x == Residue(Int(1), Int(m)));
      }
}

TEST_CASE("residue arithmetic requires equal moduli") {
  Residue a(Int(1), Int(5)), b(Int(1), Int(7));
  CHECK_THROWS_AS(a + b, RingMismatch);
  CHECK_THROWS_AS(a - b, RingMismatch);
  CHECK_THROWS_AS(a * b, RingMismatch);
  CHECK(Residue(Int(-1), Int(5)).value == 4);  // normalized into [0, m)
}

TEST_CASE("primality and square-free predicates") {
  CHECK(is_prime(2));
  CHECK(is_prime(11));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(is_squarefree(26));
  CHECK(is_squarefree(1));
  CHECK_FALSE(is_squarefree(99));
  CHECK(prime_factors(30) == std::vector<long>{2, 3, 5});
  auto primes = primes_up_to(30);
  CHECK(primes == std::vector<long>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
}
