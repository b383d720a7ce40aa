#include <doctest.h>

#include <numeric>

#include "eiscong/eisenstein.hpp"

using namespace eiscong;

TEST_CASE("e_series anchors") {
  QSeries e0 = e_series(0);
  CHECK(e0.prec() == 0);
  CHECK(e0.rat_at(0) == Rat(1, 24));
  QSeries e = e_series(10);
  CHECK(e.rat_at(1) == 1);
  CHECK(e.rat_at(6) == 12);
  for (long n = 1; n <= 10; ++n) CHECK(e.rat_at(n) == sigma(n));
}

TEST_CASE("raise_keep_one anchors at p=11") {
  QSeries g = raise_keep_one(e_series(30), 11);
  CHECK(g.rat_at(0) == Rat(-5, 12));  // (1 - 11)/24
  CHECK(g.rat_at(11) == 1);           // sigma(11) - 11*sigma(1) = 12 - 11
  CHECK(g.rat_at(2) == 3);            // untouched away from 11
}

TEST_CASE("raise_keep_p anchors") {
  QSeries g13 = raise_keep_p(e_series(30), 13);
  CHECK(g13.rat_at(0) == 0);
  CHECK(g13.rat_at(13) == 13);  // sigma(13) - sigma(1) = 14 - 1
  QSeries g2 = raise_keep_p(e_series(10), 2);
  CHECK(g2.rat_at(4) == 4);  // sigma(4) - sigma(2) = 7 - 3
}

TEST_CASE("make_delta validates its invariants") {
  CHECK_NOTHROW(make_delta(11, {{11, 1}}));
  CHECK_NOTHROW(make_delta(26, {{2, 2}, {13, 1}}));
  // non-square-free level
  CHECK_THROWS_AS(make_delta(99, {{3, 1}, {11, 1}}), FormatError);
  // missing prime factor
  CHECK_THROWS_AS(make_delta(26, {{2, 1}}), FormatError);
  // extra prime
  CHECK_THROWS_AS(make_delta(11, {{11, 1}, {3, 1}}), FormatError);
  // delta value outside {1, p}
  CHECK_THROWS_AS(make_delta(11, {{11, 2}}), FormatError);
  // no delta_p = 1 slot
  CHECK_THROWS_AS(make_delta(26, {{2, 2}, {13, 13}}), FormatError);
}

TEST_CASE("build_eisenstein anchors") {
  DeltaChoice d11 = make_delta(11, {{11, 1}});
  QSeries E11 = build_eisenstein(d11, 50);
  CHECK(E11.rat_at(0) == Rat(-5, 12));
  CHECK(E11.rat_at(2) == 3);
  CHECK(E11.rat_at(11) == 1);

  DeltaChoice d26 = make_delta(26, {{2, 2}, {13, 1}});
  QSeries E26 = build_eisenstein(d26, 200);
  CHECK(E26.rat_at(0) == 0);
  CHECK(E26.rat_at(4) == 4);
  CHECK(E26.rat_at(169) == 1);
}

TEST_CASE("eis_coeff anchors") {
  DeltaChoice d11 = make_delta(11, {{11, 1}});
  CHECK(eis_coeff(d11, 0) == Rat(-5, 12));
  DeltaChoice d26 = make_delta(26, {{2, 2}, {13, 1}});
  CHECK(eis_coeff(d26, 4) == 4);
  CHECK(eis_coeff(d26, 169) == 1);
  CHECK(eis_coeff(d26, 0) == 0);
}

TEST_CASE("oracle agreement on a sample of levels") {
  // The exhaustive N <= 105 sweep lives in the acceptance binary; here a
  // representative sample keeps the unit suite fast.
  for (long N : {11, 14, 15, 26, 30}) {
    for (const DeltaChoice& dc : all_delta_choices(N)) {
      QSeries E = build_eisenstein(dc, 120);
      for (long n = 0; n <= 120; ++n)
        REQUIRE(E.rat_at(n) == eis_coeff(dc, n));
    }
  }
}

TEST_CASE("raising operators commute") {
  // N = 30 with delta_2 = 1, delta_3 = 3, delta_5 = 5 applied in all orders.
  QSeries e = e_series(90);
  QSeries a = raise_keep_p(raise_keep_p(raise_keep_one(e, 2), 3), 5);
  QSeries b = raise_keep_one(raise_keep_p(raise_keep_p(e, 5), 3), 2);
  QSeries c = raise_keep_p(raise_keep_one(raise_keep_p(e, 3), 2), 5);
  CHECK(a == b);
  CHECK(a == c);
  DeltaChoice dc = make_delta(30, {{2, 1}, {3, 3}, {5, 5}});
  CHECK(a == build_eisenstein(dc, 90));
}

TEST_CASE("coefficients are multiplicative") {
  DeltaChoice dc = make_delta(26, {{2, 1}, {13, 13}});
  for (long m = 1; m <= 60; ++m)
    for (long n = 1; n <= 60; ++n)
      if (std::gcd(m, n) == 1)
        REQUIRE(eis_coeff(dc, m * n) == eis_coeff(dc, m) * eis_coeff(dc, n));
}

TEST_CASE("integrality and the a0 denominator bound") {
  for (long N : {11, 19, 37, 14, 15}) {
    for (const DeltaChoice& dc : all_delta_choices(N)) {
      QSeries E = build_eisenstein(dc, 80);
      CHECK(Int(24) % E.rat_at(0).get_den() == 0);
      for (long n = 1; n <= 80; ++n) REQUIRE(E.rat_at(n).get_den() == 1);
    }
  }
}

TEST_CASE("all_delta_choices enumerates 2^k - 1 assignments") {
  CHECK(all_delta_choices(11).size() == 1);   // {1}
  CHECK(all_delta_choices(26).size() == 3);   // all but (2, 13)
  CHECK(all_delta_choices(30).size() == 7);   // all but (2, 3, 5)
  for (const DeltaChoice& dc : all_delta_choices(30)) {
    bool has_one = false;
    for (auto [p, v] : dc.delta) has_one = has_one || v == 1;
    CHECK(has_one);
  }
}
