#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eiscong/lowering.hpp"
#include "eiscong/verifier.hpp"

using namespace eiscong;

namespace {

std::map<long, long> parse_delta(const std::string& arg) {
  std::map<long, long> d;
  std::string item;
  std::istringstream in(arg);
  while (std::getline(in, item, ',')) {
    size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw FormatError("bad --delta entry '" + item + "' (want p=v)");
    try {
      long p = std::stol(item.substr(0, eq));
      long v = std::stol(item.substr(eq + 1));
      if (!d.emplace(p, v).second)
        throw FormatError("duplicate prime in --delta: " + item);
    } catch (const std::invalid_argument&) {
      throw FormatError("bad --delta entry '" + item + "'");
    } catch (const std::out_of_range&) {
      throw FormatError("bad --delta entry '" + item + "'");
    }
  }
  if (d.empty()) throw FormatError("--delta must list at least one p=v pair");
  return d;
}

WeierstrassCurve parse_curve(const std::string& arg, long N,
                             const std::string& label) {
  std::string s = arg;
  for (char& ch : s)
    if (ch == ',') ch = ' ';
  std::istringstream in(s);
  std::string t[5];
  if (!(in >> t[0] >> t[1] >> t[2] >> t[3] >> t[4]))
    throw FormatError("curve needs five comma-separated a-invariants: " + arg);
  std::string extra;
  if (in >> extra) throw FormatError("too many a-invariants: " + arg);
  WeierstrassCurve c;
  Int* slot[5] = {&c.a1, &c.a2, &c.a3, &c.a4, &c.a6};
  for (int i = 0; i < 5; ++i)
    if (mpz_set_str(slot[i]->get_mpz_t(), t[i].c_str(), 10) != 0)
      throw FormatError("bad a-invariant: " + t[i]);
  c.N = N;
  c.label = label;
  return c;
}

QSeries load_qseries_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return load_qseries(in);
}

NewformData load_newform_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return load_newform(in);
}

void emit_qseries(const QSeries& g, const std::string& out_path) {
  if (out_path.empty()) {
    save_qseries(g, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw FormatError("cannot write " + out_path);
    save_qseries(g, out);
  }
}

QSeries as_mod_series(const QSeries& g, long r) {
  if (g.tag() == RingTag::Rational) return reduce_mod(g, Int(r));
  if (g.modulus() != r)
    throw FormatError("series modulus " + g.modulus().get_str() +
                      " differs from --mod " + std::to_string(r));
  return g;
}

Json special_report_json(const SpecialReport& rep, const std::string& in_path) {
  Json fails = Json::array();
  for (const SpecialFailure& f : rep.failures)
    fails.push_back(Json{{"n", f.n}, {"found", f.found.get_str()},
                         {"expected", f.expected.get_str()}});
  Json out;
  out["request"] = Json{{"command", "special"}, {"in", in_path},
                        {"level", rep.M}, {"mod", rep.r.get_si()},
                        {"variant", rep.variant == SpecialVariant::A ? "A" : "B"},
                        {"range", rep.range}};
  out["checks"] = Json::array({Json{{"name", "special-congruence"},
                                    {"status", rep.pass ? "pass" : "fail"},
                                    {"witness", Json{{"failures", fails}}}}});
  out["verdict"] = rep.pass ? "pass" : "fail";
  out["ranges"] = Json{{"congruence", rep.range}};
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eisenstein congruence certificates for weight-2 newforms"};
  app.require_subcommand(1);
  bool deterministic = false;
  app.add_flag("--deterministic", deterministic,
               "suppress timestamps for byte-identical output");

  // eis build / eis coeff
  auto* eis = app.add_subcommand("eis", "Eisenstein series construction");
  eis->require_subcommand(1);
  long eis_level = 0, eis_prec = 0, eis_n = 0;
  std::string eis_delta, eis_out;
  auto* eis_build = eis->add_subcommand("build", "build and dump the series");
  eis_build->add_option("--level", eis_level, "square-free level N")->required();
  eis_build->add_option("--delta", eis_delta, "eigenvalue choice, e.g. 2=1,13=13")
      ->required();
  eis_build->add_option("--prec", eis_prec, "number of coefficients a_1..a_prec")
      ->required();
  eis_build->add_option("--out", eis_out, "write dump here instead of stdout");
  auto* eis_coeff_cmd = eis->add_subcommand("coeff", "print one coefficient");
  eis_coeff_cmd->add_option("--level", eis_level, "square-free level N")->required();
  eis_coeff_cmd->add_option("--delta", eis_delta, "eigenvalue choice, e.g. 2=1,13=13")
      ->required();
  eis_coeff_cmd->add_option("--n", eis_n, "coefficient index (0 = constant term)")
      ->required();

  // newform from-curve / verify-oracle
  auto* nf = app.add_subcommand("newform", "newform data from curves or files");
  nf->require_subcommand(1);
  std::string nf_ainv, nf_label, nf_out, nf_in;
  long nf_level = 0, nf_prec = 0;
  bool nf_allow_additive = false;
  auto* nf_from = nf->add_subcommand("from-curve", "point-count a curve");
  nf_from->add_option("--a-invariants", nf_ainv, "a1,a2,a3,a4,a6 of the model")
      ->required();
  nf_from->add_option("--level", nf_level, "conductor of the curve")->required();
  nf_from->add_option("--label", nf_label, "label stored in the file")->required();
  nf_from->add_option("--prec", nf_prec, "record a_l for primes l <= prec")
      ->required();
  nf_from->add_option("--out", nf_out, "write file here instead of stdout");
  nf_from->add_flag("--allow-additive", nf_allow_additive,
                    "record a_p = 0 at additive primes instead of erroring "
                    "(negative-control fixtures only)");
  auto* nf_verify = nf->add_subcommand("verify-oracle", "re-count and diff");
  nf_verify->add_option("--in", nf_in, "newform file with a curve source line")
      ->required();

  // certify
  auto* cert = app.add_subcommand("certify", "run the certificate pipeline");
  std::string cert_nf, cert_curve, cert_mode = "theorem", cert_table;
  long cert_r = 0, cert_range = 0;
  bool cert_json = false;
  cert->add_option("--newform", cert_nf, "newform coefficient file")->required();
  cert->add_option("--r", cert_r, "congruence prime r")->required();
  cert->add_option("--curve", cert_curve,
                   "a1,a2,a3,a4,a6 enabling the torsion conclusion");
  cert->add_option("--mode", cert_mode, "hypothesis set (default: theorem)")
      ->check(CLI::IsMember({"theorem", "vatsal"}));
  cert->add_option("--cusp-table", cert_table,
                   "cusp-order table replacing the built-in one");
  cert->add_option("--range", cert_range,
                   "check primes l <= range (default: max(sturm, 100))");
  cert->add_flag("--json", cert_json, "emit the JSON report");

  // special
  auto* spec_cmd = app.add_subcommand("special", "test the specialness predicate");
  std::string sp_in, sp_variant = "B";
  long sp_level = 0, sp_mod = 0, sp_range = 0;
  bool sp_json = false;
  spec_cmd->add_option("--in", sp_in, "q-series dump to test")->required();
  spec_cmd->add_option("--level", sp_level, "square-free level M")->required();
  spec_cmd->add_option("--mod", sp_mod, "prime modulus r")->required();
  spec_cmd->add_option("--variant", sp_variant,
                       "sign-pattern variant (default: B)")
      ->check(CLI::IsMember({"A", "B"}));
  spec_cmd->add_option("--range", sp_range, "check indices 1..range")->required();
  spec_cmd->add_flag("--json", sp_json, "emit the JSON report");

  // lower
  auto* low = app.add_subcommand("lower", "level-lower a special form");
  std::string low_in, low_out;
  long low_level = 0, low_s = 0, low_mod = 0;
  bool low_compare = false, low_json = false;
  low->add_option("--in", low_in, "q-series dump of the special form")->required();
  low->add_option("--level", low_level, "level M of the input form")->required();
  low->add_option("--s", low_s, "prime divisor of M to remove")->required();
  low->add_option("--mod", low_mod, "prime modulus r (r > 3)")->required();
  low->add_flag("--compare-claim-formula", low_compare,
                "also diff the two specialness variants at level M/s");
  low->add_option("--out", low_out, "write dump here instead of stdout");
  low->add_flag("--json", low_json, "with --compare-claim-formula, emit JSON");

  // cusp
  auto* cusp = app.add_subcommand("cusp", "cuspidal subgroup order");
  long cusp_level = 0;
  std::string cusp_table;
  cusp->add_option("--level", cusp_level, "level N (prime or tabulated)")
      ->required();
  cusp->add_option("--table", cusp_table,
                   "cusp-order table replacing the built-in one");

  // classify-r3
  auto* r3 = app.add_subcommand("classify-r3", "r = 3 endgame branch");
  long r3_p = 0;
  r3->add_option("--p", r3_p, "prime p != 3")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return 3;
  }

  try {
    if (eis_build->parsed()) {
      DeltaChoice dc = make_delta(eis_level, parse_delta(eis_delta));
      emit_qseries(build_eisenstein(dc, eis_prec), eis_out);
      return 0;
    }
    if (eis_coeff_cmd->parsed()) {
      DeltaChoice dc = make_delta(eis_level, parse_delta(eis_delta));
      std::cout << eis_coeff(dc, eis_n) << "\n";
      return 0;
    }
    if (nf_from->parsed()) {
      WeierstrassCurve c = parse_curve(nf_ainv, nf_level, nf_label);
      NewformData f = newform_from_curve(c, nf_prec, nf_allow_additive);
      if (nf_out.empty()) {
        save_newform(f, std::cout);
      } else {
        std::ofstream out(nf_out);
        if (!out) throw FormatError("cannot write " + nf_out);
        save_newform(f, out);
      }
      return 0;
    }
    if (nf_verify->parsed()) {
      NewformData f = load_newform_file(nf_in);
      auto diffs = verify_against_oracle(f);
      if (diffs.empty()) {
        std::cout << "oracle-match: " << f.label << " (" << f.ap.size()
                  << " primes)\n";
        return 0;
      }
      for (const std::string& d : diffs) std::cout << "mismatch " << d << "\n";
      return 1;
    }
    if (cert->parsed()) {
      CertificateRequest req;
      req.f = load_newform_file(cert_nf);
      req.r = cert_r;
      req.range = cert_range;
      req.mode = cert_mode == "vatsal" ? Mode::Vatsal : Mode::Theorem;
      if (!cert_curve.empty())
        req.curve = parse_curve(cert_curve, req.f.N, req.f.label);
      req.cusp_table_path = cert_table;
      CertificateReport rep = certify(req);
      if (cert_json)
        std::cout << report_to_json(rep, !deterministic).dump(2) << "\n";
      else
        std::cout << report_to_text(rep);
      return report_exit_code(rep);
    }
    if (spec_cmd->parsed()) {
      QSeries g = as_mod_series(load_qseries_file(sp_in), sp_mod);
      SpecialVariant v = sp_variant == "A" ? SpecialVariant::A : SpecialVariant::B;
      SpecialReport rep = is_special(g, sp_level, v, sp_range);
      if (sp_json) {
        std::cout << special_report_json(rep, sp_in).dump(2) << "\n";
      } else {
        std::cout << "special level=" << rep.M << " mod=" << rep.r << " variant="
                  << (v == SpecialVariant::A ? "A" : "B")
                  << " range=" << rep.range << "\n";
        for (const SpecialFailure& f : rep.failures)
          std::cout << "mismatch n=" << f.n << " found=" << f.found
                    << " expected=" << f.expected << "\n";
        std::cout << "verdict: " << (rep.pass ? "pass" : "fail") << "\n";
      }
      return rep.pass ? 0 : 1;
    }
    if (low->parsed()) {
      QSeries g = as_mod_series(load_qseries_file(low_in), low_mod);
      long B = g.prec();
      try {
        QSeries lowered = lower_level(g, low_level, low_s, low_mod, B);
        if (!low_compare || !low_json) emit_qseries(lowered, low_out);
      } catch (const SupportViolation& e) {
        std::cerr << e.what() << "\n";
        return 1;
      }
      if (low_compare) {
        auto diff = compare_claim_formula(low_level, low_s, low_mod, B);
        if (low_json) {
          Json idx = Json::array();
          for (long n : diff) idx.push_back(n);
          Json out;
          out["request"] = Json{{"command", "lower-compare"}, {"level", low_level},
                                {"s", low_s}, {"mod", low_mod}, {"range", B}};
          out["checks"] = Json::array(
              {Json{{"name", "claim-formula-comparison"},
                    {"status", "pass"},
                    {"witness", Json{{"differing_indices", idx}}}}});
          out["verdict"] = "pass";
          out["ranges"] = Json{{"congruence", B}};
          std::cout << out.dump(2) << "\n";
        } else {
          std::cout << "# claim-formula differing indices:";
          for (long n : diff) std::cout << " " << n;
          std::cout << "\n";
        }
      }
      return 0;
    }
    if (cusp->parsed()) {
      CuspidalOrder co = cusp_order(cusp_level, cusp_table);
      std::cout << "N=" << co.N << " order=" << co.order
                << " provenance=" << provenance_name(co.provenance) << "\n";
      return 0;
    }
    if (r3->parsed()) {
      R3Result res = classify_r3(r3_p);
      std::cout << "branch=" << r3_branch_name(res.branch)
                << " residue=" << res.residue << " mod " << res.modulus << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
