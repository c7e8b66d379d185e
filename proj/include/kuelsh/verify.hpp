#pragma once

#include "kuelsh/families.hpp"
#include "kuelsh/report.hpp"

namespace kuelsh {

// Everything the pipeline computes for one algebra: form, ladder and the
// quotient fingerprints per ladder step.
struct Analysis {
  StructureAlgebra algebra;
  TraceForm form;
  KulshammerLadder ladder;
  std::vector<QuotientInvariants> quotients;  // Z / T_n^perp per step
  std::vector<cpp_int> cartan_divisors;
  cpp_int cartan_det = 0;
};

Analysis analyze(StructureAlgebra algebra, unsigned n_max);

// full pipeline for a family instance, including the expectation comparison;
// n_max = 0 picks the stabilizing depth; out receives the computed objects
AnalysisReport analyze_family_instance(const FamilyParams& params, unsigned n_max = 0,
                                       Analysis* out = nullptr);

// same pipeline for a user presentation; expectation is reported as uncovered
AnalysisReport analyze_custom_instance(const QuiverPresentation& q, size_t loewy_bound,
                                       unsigned n_max = 0);

// expectation comparison used by reports and the verification grids
std::vector<ExpectationCheck> compare_expected(const Analysis& an, const Expectation& e);

// parameter grids for the verification sweep
std::vector<FamilyParams> verification_grid(bool full);

}  // namespace kuelsh
