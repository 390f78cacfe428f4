#ifndef ESUM_CATALOG_HPP
#define ESUM_CATALOG_HPP

#include <optional>
#include <string>
#include <vector>

#include "esum/numeric.hpp"
#include "esum/parser.hpp"
#include "esum/relations.hpp"

namespace esum {

// One catalog row: an identity (or family of identity lines) together with
// the generating-function method that proves it.  Records are data files;
// transcription problems are data bugs fixable without rebuilds.
struct IdentityCheck {
  std::string label;
  std::string lhs;
  std::string rhs;
  bool uncertain = false;  // per-line transcription flag
};

struct IdentityRecord {
  std::string id;
  std::string table;   // "1", "2", "3" or "extra"
  std::string method;  // F-invocation combination; empty or "stuffle" = none
  bool run_method = true;
  std::string signs;  // optional per-group signs for the method run
  enum Status { kExpectedHolds, kTranscriptionUncertain } status = kExpectedHolds;
  std::vector<std::map<std::string, long>> params;
  std::vector<std::pair<std::string, std::string>> defs;  // ordered name -> expr
  std::vector<IdentityCheck> checks;
};

std::vector<IdentityRecord> load_catalog_file(const std::string& path);
std::vector<IdentityRecord> load_catalog(const std::string& dir);

struct RunOptions {
  enum Mode { kNumeric, kSpan, kBoth } mode = kNumeric;
  double eps = 1e-8;
  std::vector<int> weights;  // empty: all instantiations
  EvalConfig eval;
  int span_weight_cap_mzv = 7;
  int span_weight_cap_euler = 5;
};

struct ReportEntry {
  std::string record_id;
  std::string instantiation;  // e.g. "line2 u=3" or "method w=5"
  std::string mode;           // numeric / span
  std::string status;         // PASS / FAIL / mismatch (flagged) / skipped / ...
  std::vector<DegreeResidual> residuals;
  std::vector<std::pair<std::string, std::string>> certificate;  // row id -> coeff
  bool counts_as_failure = false;
};

std::vector<ReportEntry> run_record(const IdentityRecord& rec, const RunOptions& opts);

std::string report_to_json(const std::vector<ReportEntry>& entries);
std::string report_to_text(const std::vector<ReportEntry>& entries);

}  // namespace esum

#endif
