#pragma once
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "eiscong/qseries.hpp"

namespace eiscong {

// Integer long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
// with its declared conductor.
struct WeierstrassCurve {
  Int a1, a2, a3, a4, a6;
  long N;
  std::string label;
};

struct CurveInvariants {
  Int b2, b4, b6, b8, c4, c6, disc;
};

CurveInvariants curve_invariants(const WeierstrassCurve& c);

// Checks disc != 0, every p | N singular, and no singular prime outside N
// (model assumed minimal); FormatError on inconsistency.
void validate_curve(const WeierstrassCurve& c);

// #E~(F_p) including the point at infinity and, at bad primes, the singular
// point; naive O(p) enumeration via the quadratic character.
long count_points(const WeierstrassCurve& c, long p);

// a_l = l + 1 - #E~(F_l); at declared bad primes the result must be +-1,
// else AdditiveReduction.
Int ap_from_curve(const WeierstrassCurve& c, long ell);

// Prime-indexed coefficients, AL signs, level, label for one newform.
struct NewformData {
  long N = 0;
  std::string label;
  std::string source;
  std::map<long, Int> ap;  // every prime <= bound, including p | N
  std::map<long, int> w;   // p | N -> +-1
  long bound = 0;
};

// a_l for all primes l <= bound; w_p = -a_p for p | N. allow_additive is for
// fixture regeneration only: stores a_p = 0 at additive primes instead of
// raising, so non-semistable negative-control fixtures can be written.
NewformData newform_from_curve(const WeierstrassCurve& c, long bound,
                               bool allow_additive = false);

// q-expansion to precision B via the standard recursions
// (a_{l^k} = a_l a_{l^{k-1}} - l a_{l^{k-2}} for l coprime to N, a_{p^k} = a_p^k for
// p | N, multiplicative across coprime indices); a0 = 0, a1 = 1.
QSeries extend_coeffs(const NewformData& f, long B);

// Order of the rational torsion subgroup by two independent oracles:
// gcd of #E~(F_l) over 20 good odd primes, and a Lutz-Nagell point search
// on the scaled short model; Inconclusive if they disagree.
long torsion_order(const WeierstrassCurve& c);

// Text format: header lines level=<N>, label=<s>, source=<s>; rows
// 'P <p> <a_p> <w_p>' for p | N and 'L <l> <a_l>' for good primes;
// '#' comments. Rejects duplicates, gaps in good primes, missing bad
// primes, and w_p != -a_p (the last only where p || N).
NewformData load_newform(std::istream& in);
void save_newform(const NewformData& f, std::ostream& out);

// Recovers the model from a 'curve:a1,a2,a3,a4,a6' source string.
std::optional<WeierstrassCurve> curve_from_source(const NewformData& f);

// Recomputes every coefficient and sign from the source curve and returns
// human-readable differences (empty = data matches the oracle);
// FormatError when the source records no curve.
std::vector<std::string> verify_against_oracle(const NewformData& f);

// Lines 'label N a1 a2 a3 a4 a6', '#' comments.
std::vector<WeierstrassCurve> load_curves(std::istream& in);

}  // namespace eiscong
