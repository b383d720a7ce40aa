#include <doctest.h>

#include "eiscong/eisenstein.hpp"
#include "eiscong/lowering.hpp"
#include "eiscong/newform.hpp"
#include "support.hpp"

using namespace eiscong;

TEST_CASE("special_expected anchors") {
  // M = 551 = 19 * 29, variant B.
  CHECK(special_expected(1, 551, SpecialVariant::B) == 1);
  CHECK(special_expected(19, 551, SpecialVariant::B) == -1);
  CHECK(special_expected(29, 551, SpecialVariant::B) == -1);
  CHECK(special_expected(361, 551, SpecialVariant::B) == 1);  // (+1)^2 sigma(1)
  // Variant A at 361: sigma(361/19) * (-1)^2 = sigma(19) = 20.
  CHECK(special_expected(361, 551, SpecialVariant::A) == 20);
  // Away from prime powers of M the variants agree.
  CHECK(special_expected(6, 551, SpecialVariant::A) ==
        special_expected(6, 551, SpecialVariant::B));
}

TEST_CASE("synth_special satisfies its own predicate") {
  for (auto v : {SpecialVariant::A, SpecialVariant::B}) {
    QSeries g = synth_special(551, 5, 200, v);
    SpecialReport rep = is_special(g, 551, v, 200);
    REQUIRE(rep.pass);
    REQUIRE(rep.failures.empty());
  }
}

TEST_CASE("synth_special anchors at M=551, r=5") {
  QSeries g = synth_special(551, 5, 400, SpecialVariant::B);
  CHECK(g.res_at(1) == 1);
  CHECK(g.res_at(19) == 4);   // -1 mod 5
  CHECK(g.res_at(29) == 4);   // -1 mod 5
  CHECK(g.res_at(361) == 1);  // ord_19 = 2: (+1) * sigma(1)
}

TEST_CASE("synth_special precondition gate") {
  // M = 10 = 2 * 5 with r = 5: 2 is not -1 mod 5.
  try {
    synth_special(10, 5, 50, SpecialVariant::B);
    FAIL("expected PrimeNotMinusOne");
  } catch (const PrimeNotMinusOne& e) {
    CHECK(e.prime == 2);
  }
}

TEST_CASE("11a1 mod 5 is not special at level 11 (sign logic)") {
  // a_11 = +1 but specialness demands (-1)^1 * sigma(1) = -1 at n = 11,
  // since w_11 = -1 while the predicate encodes w_p = +1 at every p | M.
  NewformData f =
      newform_from_curve(testsupport::curve_by_label("11a1"), 60);
  QSeries g = reduce_mod(extend_coeffs(f, 60), Int(5));
  SpecialReport rep = is_special(g, 11, SpecialVariant::B, 50);
  REQUIRE_FALSE(rep.pass);
  REQUIRE(!rep.failures.empty());
  CHECK(rep.failures.front().n == 11);
  CHECK(rep.failures.front().found == 1);
  CHECK(rep.failures.front().expected == 4);  // -1 mod 5
}

TEST_CASE("the zero series fails at n = 1") {
  QSeries z = QSeries::mod(20, Int(5));
  SpecialReport rep = is_special(z, 551, SpecialVariant::B, 20);
  REQUIRE_FALSE(rep.pass);
  CHECK(rep.failures.front().n == 1);
  CHECK(rep.failures.front().expected == 1);
}

TEST_CASE("is_special validates its inputs") {
  QSeries z = QSeries::mod(20, Int(5));
  CHECK_THROWS_AS(is_special(z, 551, SpecialVariant::B, 100),
                  PrecisionTooSmall);  // range > precision
  CHECK_THROWS_AS(is_special(z, 99, SpecialVariant::B, 10), FormatError);
  QSeries rat = QSeries::rational(20);
  CHECK_THROWS_AS(is_special(rat, 551, SpecialVariant::B, 10), RingMismatch);
}

TEST_CASE("lowering preserves variant-B specialness") {
  // The full B = 600 sweep is in the acceptance binary; B = 300 here.
  struct Case { long M, r; std::vector<long> ss; };
  for (const Case& c : {Case{551, 5, {19, 29}}, Case{533, 7, {13, 41}}}) {
    for (long s : c.ss) {
      QSeries g = synth_special(c.M, c.r, 300, SpecialVariant::B);
      QSeries gp = lower_level(g, c.M, s, c.r, 300);
      REQUIRE(gp.prec() == 300 / s);
      SpecialReport rep = is_special(gp, c.M / s, SpecialVariant::B, 300 / s);
      REQUIRE(rep.pass);
    }
  }
}

TEST_CASE("factor-of-two exactness") {
  long M = 551, r = 5, s = 19, B = 300;
  QSeries g = synth_special(M, r, B, SpecialVariant::B);
  DeltaChoice dc = make_delta(M, {{19, 1}, {29, 29}});
  QSeries E = reduce_mod(build_eisenstein(dc, B), Int(r));
  QSeries d = sub(E, g);
  QSeries gp = lower_level(g, M, s, r, B);
  for (long n = 1; n <= B; ++n) {
    if (d.res_at(n) == 0) continue;
    REQUIRE(n % s == 0);
    REQUIRE(d.res_at(n) == mod_reduce(2 * gp.res_at(n / s), Int(r)));
  }
}

TEST_CASE("lowering E against itself gives zero") {
  DeltaChoice dc = make_delta(551, {{19, 1}, {29, 29}});
  QSeries E = reduce_mod(build_eisenstein(dc, 200), Int(5));
  QSeries z = lower_level(E, 551, 19, 5, 200);
  for (long n = 0; n <= z.prec(); ++n) REQUIRE(z.res_at(n) == 0);
}

TEST_CASE("a stray coefficient raises SupportViolation") {
  long M = 551, r = 5, s = 19, B = 100;
  QSeries g = synth_special(M, r, B, SpecialVariant::B);
  g.set(s + 1, Int(g.res_at(s + 1) + 1));
  try {
    lower_level(g, M, s, r, B);
    FAIL("expected SupportViolation");
  } catch (const SupportViolation& e) {
    CHECK(e.index == s + 1);
  }
}

TEST_CASE("lowering rejects r in {2, 3} and bad shapes") {
  QSeries g2 = synth_special(3, 2, 50, SpecialVariant::B);  // 3 = -1 mod 2
  CHECK_THROWS_AS(lower_level(g2, 3, 3, 2, 50), DenominatorNotInvertible);
  QSeries g5 = synth_special(551, 5, 50, SpecialVariant::B);
  CHECK_THROWS_AS(lower_level(g5, 551, 7, 5, 50), FormatError);  // 7 does not divide 551
  CHECK_THROWS_AS(lower_level(g5, 551, 19, 5, 80), PrecisionTooSmall);
}

TEST_CASE("variant divergence is confined to higher prime powers") {
  for (auto [M, r] : {std::pair<long, long>{551, 5}, {533, 7}}) {
    auto ps = prime_factors(M);
    for (long n = 1; n <= 600; ++n) {
      bool low_ord = true;
      for (long p : ps) low_ord = low_ord && ord_p(n, p) <= 1;
      Int a = mod_reduce(special_expected(n, M, SpecialVariant::A), Int(r));
      Int b = mod_reduce(special_expected(n, M, SpecialVariant::B), Int(r));
      if (low_ord) REQUIRE(a == b);
      if (a != b) {
        bool high = false;
        for (long p : ps) high = high || ord_p(n, p) >= 2;
        REQUIRE(high);
      }
    }
  }
}

TEST_CASE("claim-formula comparison localizes the discrepancy") {
  CHECK(compare_claim_formula(551, 19, 5, 600) == std::vector<long>{361});
  CHECK(compare_claim_formula(533, 13, 7, 600) ==
        std::vector<long>{169, 338, 507});
}

TEST_CASE("classify_r3 anchors") {
  R3Result a = classify_r3(7);
  CHECK(a.branch == R3Branch::UnitConstantTerm);
  CHECK(a.residue == 1);  // (7-1)/24 = 1/4, 4^{-1} = 1 mod 3
  CHECK(a.modulus == 3);

  R3Result b = classify_r3(19);
  CHECK(b.branch == R3Branch::ZeroConstantTerm);
  CHECK(b.residue == 0);  // (19-1)/24 = 3/4 = 0 mod 3
  CHECK(b.modulus == 3);

  R3Result c = classify_r3(2);
  CHECK(c.branch == R3Branch::Mod9Construction);
  CHECK(c.residue == 1);  // (1-2)/8 = -1 * 8 = 1 mod 9
  CHECK(c.modulus == 9);

  CHECK_THROWS_AS(classify_r3(3), FormatError);
  CHECK_THROWS_AS(classify_r3(15), FormatError);
}

TEST_CASE("classify_r3 branch membership matches congruence classes") {
  for (long p : primes_up_to(1000)) {
    if (p == 3) continue;
    R3Result res = classify_r3(p);
    if (p % 3 == 2) {
      CHECK(res.branch == R3Branch::Mod9Construction);
    } else if (p % 9 == 1) {
      CHECK(res.branch == R3Branch::ZeroConstantTerm);
    } else {
      CHECK(res.branch == R3Branch::UnitConstantTerm);
    }
  }
}
