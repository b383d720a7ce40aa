#include "eiscong/eisenstein.hpp"

namespace eiscong {

DeltaChoice make_delta(long N, const std::map<long, long>& delta) {
  if (N < 2) throw FormatError("level must be >= 2");
  if (!is_squarefree(N))
    throw FormatError("level " + std::to_string(N) + " is not square-free");
  auto ps = prime_factors(N);
  if (delta.size() != ps.size())
    throw FormatError("delta map must cover exactly the primes dividing " +
                      std::to_string(N));
  bool has_one = false;
  for (long p : ps) {
    auto it = delta.find(p);
    if (it == delta.end())
      throw FormatError("delta missing prime " + std::to_string(p));
    if (it->second != 1 && it->second != p)
      throw FormatError("delta_" + std::to_string(p) + " must be 1 or " +
                        std::to_string(p));
    if (it->second == 1) has_one = true;
  }
  if (!has_one) throw FormatError("at least one delta_p must be 1");
  return DeltaChoice{N, delta};
}

std::vector<DeltaChoice> all_delta_choices(long N) {
  auto ps = prime_factors(N);
  std::vector<DeltaChoice> out;
  size_t k = ps.size();
  for (size_t mask = 0; mask + 1 < (size_t(1) << k); ++mask) {
    // bit set => delta_p = p; skip the all-p assignment (last mask)
    std::map<long, long> d;
    for (size_t i = 0; i < k; ++i) d[ps[i]] = (mask >> i) & 1 ? ps[i] : 1;
    out.push_back(make_delta(N, d));
  }
  return out;
}

QSeries e_series(long B) {
  QSeries g = QSeries::rational(B);
  g.set(0, Rat(1, 24));
  for (long n = 1; n <= B; ++n) g.set(n, Rat(sigma(n)));
  return g;
}

QSeries raise_keep_one(const QSeries& g, long p) {
  if (!is_prime(p)) throw FormatError("raise_keep_one requires prime p");
  return sub(g, scale(dilate(g, p), Rat(p)));
}

QSeries raise_keep_p(const QSeries& g, long p) {
  if (!is_prime(p)) throw FormatError("raise_keep_p requires prime p");
  return sub(g, dilate(g, p));
}

QSeries build_eisenstein(const DeltaChoice& dc, long B) {
  make_delta(dc.N, dc.delta);  // revalidate
  QSeries g = e_series(B);
  for (auto [p, v] : dc.delta)  // std::map iterates primes ascending
    g = v == 1 ? raise_keep_one(g, p) : raise_keep_p(g, p);
  return g;
}

Rat eis_coeff(const DeltaChoice& dc, long n) {
  make_delta(dc.N, dc.delta);
  if (n < 0) throw FormatError("eis_coeff requires n >= 0");
  if (n == 0) {
    Rat a0(1, 24);
    for (auto [p, v] : dc.delta) {
      if (v == p) return Rat(0);
      a0 *= Rat(1 - p);
    }
    return a0;
  }
  long n0 = prime_to_part(n, prime_factors(dc.N));
  Int c = sigma(n0);
  for (auto [p, v] : dc.delta)
    if (v == p)
      for (int i = 0; i < ord_p(n, p); ++i) c *= p;
  return Rat(c);
}

}  // namespace eiscong
