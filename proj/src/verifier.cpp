#include "eiscong/verifier.hpp"

#include <numeric>
#include <chrono>
#include <fstream>
#include <sstream>

#include "eiscong/hecke.hpp"

namespace eiscong {

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
    case CheckStatus::HypViolation: return "hypothesis-violation";
  }
  return "?";
}

const char* provenance_name(CuspProvenance p) {
  switch (p) {
    case CuspProvenance::PrimeFormula: return "prime-formula";
    case CuspProvenance::Table: return "table";
    case CuspProvenance::UserFile: return "user-file";
  }
  return "?";
}

// Shipped composite-level table; data/cusp_orders.txt carries the same values.
static const std::pair<long, long> kCuspTable[] = {
    {14, 6}, {15, 8}, {21, 8}, {26, 21}, {33, 100}, {35, 48},
};

CuspidalOrder cusp_order(long N, const std::string& table_path) {
  if (!is_squarefree(N))
    throw FormatError("cusp_order requires square-free N");
  if (is_prime(N)) {
    Rat q(N - 1, 12);
    q.canonicalize();
    return {N, q.get_num(), CuspProvenance::PrimeFormula};
  }
  if (!table_path.empty()) {
    std::ifstream in(table_path);
    if (!in) throw FormatError("cannot open cusp table " + table_path);
    std::string line;
    while (std::getline(in, line)) {
      size_t i = line.find_first_not_of(" \t\r");
      if (i == std::string::npos || line[i] == '#') continue;
      std::istringstream ls(line);
      long lvl, ord;
      if (!(ls >> lvl >> ord) || ord < 1)
        throw FormatError("bad cusp table line: " + line);
      if (lvl == N) return {N, Int(ord), CuspProvenance::UserFile};
    }
    throw UnknownLevel(N);
  }
  for (auto [lvl, ord] : kCuspTable)
    if (lvl == N) return {N, Int(ord), CuspProvenance::Table};
  throw UnknownLevel(N);
}

DeltaChoice choose_delta(const NewformData& f, long r) {
  (void)r;
  std::map<long, long> d;
  bool has_minus = false;
  for (auto [p, w] : f.w) {
    if (w < 0) {
      d[p] = 1;
      has_minus = true;
    } else {
      d[p] = p;
    }
  }
  if (!has_minus)
    throw NoMinusSign("every Atkin-Lehner sign of " + f.label +
                      " is +1; no delta_p = 1 slot exists");
  return make_delta(f.N, d);
}

namespace {

std::string int_str(const Int& v) { return v.get_str(); }

struct Pipeline {
  const CertificateRequest& req;
  const NewformData& f;
  long r;
  long B;
  std::vector<Check> checks;
  bool violated = false;
  bool failed = false;

  Pipeline(const CertificateRequest& rq, long range)
      : req(rq), f(rq.f), r(rq.r), B(range) {}

  void push(const std::string& name, CheckStatus st, Json witness) {
    checks.push_back({name, st, std::move(witness)});
    if (st == CheckStatus::Fail) failed = true;
    if (st == CheckStatus::HypViolation) violated = true;
  }
  void skip(const std::string& name, const std::string& why) {
    push(name, CheckStatus::Skipped, Json{{"reason", why}});
  }
  bool clean() const { return !violated && !failed; }
};

std::string factor_string(long n) {
  std::ostringstream os;
  bool first = true;
  for (auto [p, e] : factorize(n)) {
    if (!first) os << "*";
    first = false;
    os << p;
    if (e > 1) os << "^" << e;
  }
  return first ? "1" : os.str();
}

}  // namespace

CertificateReport certify(const CertificateRequest& req) {
  const NewformData& f = req.f;
  long r = req.r;
  if (!is_prime(r)) throw FormatError("r must be prime");
  long sturm = sturm_bound(f.N);
  long B = req.range > 0 ? req.range : std::max<long>(100, sturm);
  if (req.mode == Mode::Theorem && B < sturm)
    throw FormatError("range " + std::to_string(B) + " below Sturm bound " +
                      std::to_string(sturm));
  if (B < 1) throw FormatError("range must be >= 1");
  if (req.mode == Mode::Vatsal && !req.curve)
    throw FormatError("vatsal mode requires a curve");
  if (req.curve) {
    if (req.curve->N != f.N)
      throw FormatError("curve conductor differs from newform level");
    validate_curve(*req.curve);
  }
  bool vatsal = req.mode == Mode::Vatsal;
  Pipeline pl(req, B);
  Int rr(r);

  // hypothesis gates
  {
    bool sf = is_squarefree(f.N);
    pl.push("hypothesis-square-free",
            sf ? CheckStatus::Pass : CheckStatus::HypViolation,
            Json{{"N", f.N}, {"factorization", factor_string(f.N)},
                 {"square_free", sf}});
  }
  if (vatsal) {
    pl.skip("hypothesis-r-coprime-6N", "vatsal mode has no 6N hypothesis");
  } else if (!pl.violated) {
    long g = std::gcd(6 * f.N, r);
    pl.push("hypothesis-r-coprime-6N",
            g == 1 ? CheckStatus::Pass : CheckStatus::HypViolation,
            Json{{"r", r}, {"six_N", 6 * f.N}, {"gcd", g}});
  } else {
    pl.skip("hypothesis-r-coprime-6N", "earlier hypothesis violated");
  }
  if (pl.violated) {
    const char* names[] = {"congruence-good-primes", "bad-prime-ap-sign",
                           "plus-sign-primes-minus-one-mod-r", "w-at-r",
                           "delta-choice", "delta-consistency",
                           "eisenstein-congruence", "ordinary-at-r",
                           "cusp-order-divisibility", "torsion-divisibility"};
    for (const char* n : names) pl.skip(n, "hypothesis violated");
    CertificateReport rep{req, B, std::move(pl.checks), "hypothesis-violation"};
    return rep;
  }

  // (i) a_l = 1 + l mod r at good primes
  {
    Json fail_witness = nullptr;
    long checked = 0;
    for (long l : primes_up_to(B)) {
      if (f.N % l == 0) continue;
      auto it = f.ap.find(l);
      if (it == f.ap.end()) throw MissingPrime(l);
      ++checked;
      Int lhs = mod_reduce(it->second, rr);
      Int rhs = mod_reduce(Int(1 + l), rr);
      if (lhs != rhs && fail_witness.is_null())
        fail_witness = Json{{"l", l}, {"a_l", int_str(it->second)},
                            {"found_mod_r", lhs.get_si()},
                            {"expected_mod_r", rhs.get_si()}};
    }
    pl.push("congruence-good-primes",
            fail_witness.is_null() ? CheckStatus::Pass : CheckStatus::Fail,
            Json{{"range", B}, {"checked_primes", checked},
                 {"first_failure", fail_witness}});
  }

  // (ii) a_p = -w_p at p | N
  {
    Json rows = Json::array();
    bool ok = true;
    for (auto [p, w] : f.w) {
      const Int& ap = f.ap.at(p);
      bool match = ap == -Int(w);
      if ((f.N / p) % p == 0) match = ap == 0;  // additive prime, a_p = 0
      rows.push_back(Json{{"p", p}, {"a_p", int_str(ap)}, {"w_p", w},
                          {"consistent", match}});
      ok = ok && match;
    }
    pl.push("bad-prime-ap-sign", ok ? CheckStatus::Pass : CheckStatus::Fail,
            Json{{"primes", rows}});
  }

  // (iii) w_p = +1 => p = -1 mod r ; (iv) r | N => w_r = -1
  if (vatsal) {
    pl.skip("plus-sign-primes-minus-one-mod-r",
            "not among the vatsal-mode hypotheses");
    pl.skip("w-at-r", "not among the vatsal-mode hypotheses");
  } else {
    Json rows = Json::array();
    bool ok = true;
    for (auto [p, w] : f.w) {
      if (w != 1) continue;
      bool match = (p + 1) % r == 0;
      rows.push_back(Json{{"p", p}, {"w_p", w}, {"p_mod_r", p % r},
                          {"minus_one_mod_r", match}});
      ok = ok && match;
    }
    pl.push("plus-sign-primes-minus-one-mod-r",
            ok ? CheckStatus::Pass : CheckStatus::Fail, Json{{"primes", rows}});
    if (f.N % r == 0) {
      int wr = f.w.at(r);
      pl.push("w-at-r", wr == -1 ? CheckStatus::Pass : CheckStatus::Fail,
              Json{{"r", r}, {"w_r", wr}});
    } else {
      pl.skip("w-at-r", "r does not divide N");
    }
  }

  // delta choice, self-check, Eisenstein congruence
  if (vatsal) {
    pl.skip("delta-choice", "vatsal mode certifies reducibility without E");
    pl.skip("delta-consistency", "vatsal mode certifies reducibility without E");
    pl.skip("eisenstein-congruence", "vatsal mode certifies reducibility without E");
  } else if (!pl.clean()) {
    pl.skip("delta-choice", "earlier check failed");
    pl.skip("delta-consistency", "earlier check failed");
    pl.skip("eisenstein-congruence", "earlier check failed");
  } else {
    std::optional<DeltaChoice> dc;
    try {
      dc = choose_delta(f, r);
      Json dmap = Json::object();
      for (auto [p, v] : dc->delta) dmap[std::to_string(p)] = v;
      pl.push("delta-choice", CheckStatus::Pass, Json{{"delta", dmap}});
    } catch (const NoMinusSign& e) {
      pl.push("delta-choice", CheckStatus::Fail, Json{{"error", e.what()}});
    }
    if (dc) {
      Json rows = Json::array();
      bool ok = true;
      for (auto [p, v] : dc->delta) {
        const Int& ap = f.ap.at(p);
        bool match = v == 1 ? ap == 1 : mod_reduce(ap - v, rr) == 0;
        rows.push_back(Json{{"p", p}, {"delta_p", v}, {"a_p", int_str(ap)},
                            {"consistent", match}});
        ok = ok && match;
      }
      pl.push("delta-consistency", ok ? CheckStatus::Pass : CheckStatus::Fail,
              Json{{"primes", rows}});

      QSeries fq = extend_coeffs(f, B);
      Json fail_witness = nullptr;
      for (long n = 1; n <= B; ++n) {
        Int lhs = mod_reduce(fq.rat_at(n).get_num(), rr);
        Int rhs = mod_reduce(eis_coeff(*dc, n).get_num(), rr);
        if (lhs != rhs) {
          fail_witness = Json{{"n", n}, {"newform_mod_r", lhs.get_si()},
                              {"eisenstein_mod_r", rhs.get_si()}};
          break;
        }
      }
      pl.push("eisenstein-congruence",
              fail_witness.is_null() ? CheckStatus::Pass : CheckStatus::Fail,
              Json{{"range", B}, {"first_failure", fail_witness}});
    } else {
      pl.skip("delta-consistency", "no delta choice");
      pl.skip("eisenstein-congruence", "no delta choice");
    }
  }

  // ordinarity
  if (vatsal) {
    pl.skip("ordinary-at-r", "a consequence, not a hypothesis, in vatsal mode");
  } else if (f.N % r == 0) {
    const Int& ar = f.ap.at(r);
    pl.push("ordinary-at-r", ar == 1 ? CheckStatus::Pass : CheckStatus::Fail,
            Json{{"r", r}, {"a_r", int_str(ar)}, {"criterion", "a_r = 1"}});
  } else {
    auto it = f.ap.find(r);
    if (it == f.ap.end()) throw MissingPrime(r);
    Int res = mod_reduce(it->second, rr);
    pl.push("ordinary-at-r", res != 0 ? CheckStatus::Pass : CheckStatus::Fail,
            Json{{"r", r}, {"a_r", int_str(it->second)},
                 {"a_r_mod_r", res.get_si()}});
  }

  // conclusions
  if (vatsal) {
    pl.skip("cusp-order-divisibility", "outside the vatsal theorem");
  } else if (!pl.clean()) {
    pl.skip("cusp-order-divisibility", "earlier check failed");
  } else {
    try {
      CuspidalOrder co = cusp_order(f.N, req.cusp_table_path);
      bool div = mod_reduce(co.order, rr) == 0;
      pl.push("cusp-order-divisibility",
              div ? CheckStatus::Pass : CheckStatus::Fail,
              Json{{"N", f.N}, {"order", int_str(co.order)},
                   {"provenance", provenance_name(co.provenance)}, {"r", r},
                   {"divides", div}});
    } catch (const UnknownLevel& e) {
      pl.push("cusp-order-divisibility", CheckStatus::Fail,
              Json{{"error", e.what()}});
    }
  }
  if (!pl.clean()) {
    pl.skip("torsion-divisibility", pl.violated ? "hypothesis violated"
                                                : "earlier check failed");
  } else if (!req.curve) {
    pl.skip("torsion-divisibility", "no curve attached");
  } else {
    long T = torsion_order(*req.curve);
    bool div = T % r == 0;
    pl.push("torsion-divisibility", div ? CheckStatus::Pass : CheckStatus::Fail,
            Json{{"curve", req.curve->label}, {"order", T}, {"r", r},
                 {"divides", div}});
  }

  std::string verdict = pl.violated ? "hypothesis-violation"
                        : pl.failed ? "fail"
                                    : "pass";
  return CertificateReport{req, B, std::move(pl.checks), verdict};
}

Json report_to_json(const CertificateReport& rep, bool with_timestamp) {
  Json req;
  req["newform"] = rep.request.f.label;
  req["level"] = rep.request.f.N;
  req["r"] = rep.request.r;
  req["mode"] = rep.request.mode == Mode::Vatsal ? "vatsal" : "theorem";
  req["range"] = rep.range;
  if (rep.request.curve) {
    const WeierstrassCurve& c = *rep.request.curve;
    req["curve"] = c.a1.get_str() + "," + c.a2.get_str() + "," + c.a3.get_str() +
                   "," + c.a4.get_str() + "," + c.a6.get_str();
  } else {
    req["curve"] = nullptr;
  }
  Json checks = Json::array();
  for (const Check& c : rep.checks)
    checks.push_back(Json{{"name", c.name},
                          {"status", status_name(c.status)},
                          {"witness", c.witness}});
  Json out;
  out["request"] = std::move(req);
  out["checks"] = std::move(checks);
  out["verdict"] = rep.verdict;
  out["ranges"] = Json{{"congruence", rep.range}};
  if (with_timestamp) {
    auto now = std::chrono::system_clock::now();
    out["generated_at"] =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch())
            .count();
  }
  return out;
}

std::string report_to_text(const CertificateReport& rep) {
  std::ostringstream os;
  os << "certify " << rep.request.f.label << " r=" << rep.request.r << " mode="
     << (rep.request.mode == Mode::Vatsal ? "vatsal" : "theorem")
     << " range=" << rep.range << "\n";
  for (const Check& c : rep.checks) {
    const char* glyph = c.status == CheckStatus::Pass         ? "+"
                        : c.status == CheckStatus::Fail       ? "x"
                        : c.status == CheckStatus::HypViolation ? "!"
                                                              : "-";
    os << "[" << glyph << "] " << c.name << "\n";
  }
  os << "verdict: " << rep.verdict << "\n";
  return os.str();
}

int report_exit_code(const CertificateReport& rep) {
  if (rep.verdict == "pass") return 0;
  if (rep.verdict == "fail") return 1;
  return 2;
}

}  // namespace eiscong
