#pragma once
// Shared helpers for the unit and acceptance test binaries: locating the repo
// and the CLI, regenerating newform fixtures from the shipped curve models,
// running the CLI as a subprocess, and a minimal structural JSON-schema check.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "eiscong/newform.hpp"

namespace testsupport {

using Json = nlohmann::ordered_json;

inline std::string repo_dir() { return EISCONG_REPO_DIR; }
inline std::string cli_path() { return EISCONG_CLI_PATH; }

inline std::string work_dir() {
  std::string d = EISCONG_WORK_DIR;
  std::filesystem::create_directories(d);
  return d;
}

struct RunResult {
  int exit_code;
  std::string out;
};

// Runs the CLI with the given argument string, capturing stdout (and stderr
// too when merge_stderr is set).
inline RunResult run_cli(const std::string& args, bool merge_stderr = false) {
  std::string cmd = cli_path() + " " + args +
                    (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed: " + cmd);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = pclose(p);
  int code = WIFEXITED(st) ? WEXITSTATUS(st) : 128;
  return {code, out};
}

inline eiscong::WeierstrassCurve curve_by_label(const std::string& label) {
  std::ifstream in(repo_dir() + "/fixtures/curves.txt");
  if (!in) throw std::runtime_error("missing fixtures/curves.txt");
  for (const eiscong::WeierstrassCurve& c : eiscong::load_curves(in))
    if (c.label == label) return c;
  throw std::runtime_error("unknown fixture label " + label);
}

// Regenerates <label>.nf in the work directory by point counting; no trusted
// coefficient tables are checked in.
inline std::string write_nf(const std::string& label, long prec,
                            bool allow_additive = false) {
  eiscong::WeierstrassCurve c = curve_by_label(label);
  eiscong::NewformData f = eiscong::newform_from_curve(c, prec, allow_additive);
  std::string path = work_dir() + "/" + label + ".nf";
  std::ofstream out(path);
  eiscong::save_newform(f, out);
  return path;
}

inline std::string curve_flag(const eiscong::WeierstrassCurve& c) {
  return c.a1.get_str() + "," + c.a2.get_str() + "," + c.a3.get_str() + "," +
         c.a4.get_str() + "," + c.a6.get_str();
}

// --- minimal structural JSON-schema validation (type / required /
// properties / items / enum / additionalProperties) ---

inline bool type_matches(const std::string& t, const Json& doc) {
  if (t == "object") return doc.is_object();
  if (t == "array") return doc.is_array();
  if (t == "string") return doc.is_string();
  if (t == "integer") return doc.is_number_integer();
  if (t == "number") return doc.is_number();
  if (t == "boolean") return doc.is_boolean();
  if (t == "null") return doc.is_null();
  return false;
}

inline void schema_errors(const Json& schema, const Json& doc,
                          const std::string& at,
                          std::vector<std::string>& errs) {
  if (schema.contains("type")) {
    const Json& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = type_matches(t.get<std::string>(), doc);
    } else {
      for (const Json& one : t)
        if (type_matches(one.get<std::string>(), doc)) ok = true;
    }
    if (!ok) {
      errs.push_back(at + ": type mismatch");
      return;
    }
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const Json& v : schema["enum"])
      if (v == doc) ok = true;
    if (!ok) errs.push_back(at + ": value not in enum");
  }
  if (doc.is_object()) {
    if (schema.contains("required"))
      for (const Json& k : schema["required"])
        if (!doc.contains(k.get<std::string>()))
          errs.push_back(at + ": missing required key " + k.get<std::string>());
    const Json* props =
        schema.contains("properties") ? &schema["properties"] : nullptr;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      if (props && props->contains(it.key())) {
        schema_errors((*props)[it.key()], it.value(), at + "." + it.key(),
                      errs);
      } else if (schema.contains("additionalProperties")) {
        const Json& ap = schema["additionalProperties"];
        if (ap.is_boolean() && !ap.get<bool>())
          errs.push_back(at + ": unexpected key " + it.key());
        else if (ap.is_object())
          schema_errors(ap, it.value(), at + "." + it.key(), errs);
      }
    }
  }
  if (doc.is_array() && schema.contains("items")) {
    for (size_t i = 0; i < doc.size(); ++i)
      schema_errors(schema["items"], doc[i], at + "[" + std::to_string(i) + "]",
                    errs);
  }
}

inline std::vector<std::string> validate_schema(const Json& schema,
                                                const Json& doc) {
  std::vector<std::string> errs;
  schema_errors(schema, doc, "$", errs);
  return errs;
}

inline Json load_report_schema() {
  std::ifstream in(repo_dir() + "/schema/report.schema.json");
  if (!in) throw std::runtime_error("missing schema/report.schema.json");
  return Json::parse(in);
}

}  // namespace testsupport
