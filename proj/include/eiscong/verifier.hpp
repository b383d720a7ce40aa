#pragma once
#include <json.hpp>
#include <optional>
#include <string>

#include "eiscong/eisenstein.hpp"
#include "eiscong/newform.hpp"

namespace eiscong {

using Json = nlohmann::ordered_json;

enum class CheckStatus { Pass, Fail, Skipped, HypViolation };
const char* status_name(CheckStatus s);

struct Check {
  std::string name;
  CheckStatus status;
  Json witness;
};

enum class Mode { Theorem, Vatsal };

enum class CuspProvenance { PrimeFormula, Table, UserFile };

struct CuspidalOrder {
  long N;
  Int order;
  CuspProvenance provenance;
};

// Prime N -> numerator((N-1)/12); composite square-free N -> shipped table or
// user file ('N order' lines); UnknownLevel on a lookup miss.
CuspidalOrder cusp_order(long N, const std::string& table_path = "");
const char* provenance_name(CuspProvenance p);

struct CertificateRequest {
  NewformData f;
  long r = 0;
  long range = 0;  // 0 = default max(100, sturm_bound(N))
  Mode mode = Mode::Theorem;
  std::optional<WeierstrassCurve> curve;
  std::string cusp_table_path;  // empty = shipped table
};

struct CertificateReport {
  CertificateRequest request;
  long range = 0;  // congruence range actually used
  std::vector<Check> checks;
  std::string verdict;  // pass | fail | hypothesis-violation
};

// delta_p = 1 where w_p = -1, delta_p = p where w_p = +1;
// NoMinusSign when every w_p = +1.
DeltaChoice choose_delta(const NewformData& f, long r);

// Runs the full pipeline; the check list is fixed per mode (unreached checks
// are reported as skipped, so identical requests yield identical reports).
CertificateReport certify(const CertificateRequest& req);

Json report_to_json(const CertificateReport& rep, bool with_timestamp);
std::string report_to_text(const CertificateReport& rep);
int report_exit_code(const CertificateReport& rep);  // 0 pass, 1 fail, 2 violation

}  // namespace eiscong
