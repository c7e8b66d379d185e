#pragma once

#include <string>
#include <vector>

#include "kuelsh/kulshammer.hpp"

namespace kuelsh {

struct LadderEntry {
  unsigned n = 0;
  size_t t_dim = 0;
  size_t t_mod_comm_dim = 0;
  size_t tperp_dim = 0;
  std::vector<std::string> tperp_basis;
  QuotientInvariants quotient;
};

struct ExpectationCheck {
  std::string name;
  std::string expected, computed;
  bool ok = false;
};

// Serializable record of all computed invariants for one instance. JSON
// rendering is deterministic: fixed key order, canonical element syntax.
struct AnalysisReport {
  std::string schema = "kuelsh/1";
  std::string family;  // "2B", "3A" or "custom"
  int k = 0, s = 0;
  std::string a, c, d;
  std::string field;
  int64_t p = 0;
  size_t dim = 0;
  IntMatrix cartan;
  std::vector<cpp_int> cartan_divisors;
  cpp_int cartan_det;
  size_t center_dim = 0;
  std::vector<std::string> center_basis;
  size_t commutator_dim = 0;
  std::vector<std::pair<std::string, std::string>> form_socle_values;
  std::vector<LadderEntry> ladder;
  size_t reynolds_dim = 0;
  int t1perp_mod_reynolds_dim = -1;
  size_t loewy_length = 0;
  bool small_params = false;
  std::string expectation_status;  // "match", "mismatch" or "uncovered"
  std::vector<ExpectationCheck> checks;
  std::vector<std::string> notes;
};

enum class ReportFormat { Text, Json };

std::string render(const AnalysisReport& r, ReportFormat format);
AnalysisReport parse_report_json(const std::string& text);

}  // namespace kuelsh
