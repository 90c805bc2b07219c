#pragma once

// Audit reports: one row per checked inequality instance, rendered to CSV
// deterministically.

#include <ostream>
#include <string>
#include <vector>

#include "ranklab/common.hpp"

namespace ranklab {

enum class Verdict { kHolds, kViolated, kInconclusive };

inline const char* verdict_str(Verdict v) {
  switch (v) {
    case Verdict::kHolds:
      return "holds";
    case Verdict::kViolated:
      return "violated";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  throw std::logic_error("unknown verdict");
}

struct AuditReport {
  std::string instance_id;
  std::string inequality;  // rendered statement, lhs-side first
  Rat lhs = 0;             // computed left side (bound used)
  Rat rhs = 0;             // computed right side (bound used)
  std::string constants;   // rendered constants that produced rhs
  Verdict verdict = Verdict::kInconclusive;
  std::string witness;     // combination, certificate size, flags
};

inline std::string rat_str(const Rat& r) {
  const Int num = boost::multiprecision::numerator(r);
  const Int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline std::string csv_quote(const std::string& s) {
  bool needs = false;
  for (char c : s) {
    if (c == ',' || c == '"' || c == '\n') {
      needs = true;
      break;
    }
  }
  if (!needs) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

inline void write_reports_csv(std::ostream& os, const std::vector<AuditReport>& rows) {
  os << "instance_id,inequality,lhs,rhs,constants,verdict,witness\n";
  for (const auto& r : rows) {
    os << csv_quote(r.instance_id) << ',' << csv_quote(r.inequality) << ','
       << rat_str(r.lhs) << ',' << rat_str(r.rhs) << ',' << csv_quote(r.constants)
       << ',' << verdict_str(r.verdict) << ',' << csv_quote(r.witness) << '\n';
  }
}

}  // namespace ranklab
