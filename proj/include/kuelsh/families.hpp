#pragma once

#include <optional>

#include "kuelsh/algebra.hpp"
#include "kuelsh/kulshammer.hpp"

namespace kuelsh {

enum class Family { Q2B, Q3A };

// Parameters of the two quaternion-type families: Q(2B)_1^{k,s}(a,c) with two
// simple modules and Q(3A)_1^{2,2}(d) with three.
struct FamilyParams {
  Family family = Family::Q2B;
  int k = 1, s = 3;
  FieldElement a, c;  // Q2B; a nonzero
  FieldElement d;     // Q3A; d outside {0,1}
  FieldSpec field;

  void validate() const;  // throws InvalidParams
  std::string describe() const;
};

QuiverPresentation family_presentation(const FamilyParams& p);
size_t family_loewy_bound(const FamilyParams& p);
StructureAlgebra build_family(const FamilyParams& p);

// same algebra with the coefficient of c in the loop-square relation
// perturbed by +1; used by the oracle-sensitivity check
StructureAlgebra build_family_with_perturbed_c(const FamilyParams& p);

// one element of a subspace basis, as a sum of (coefficient, path monomial)
using PathExprSum = std::vector<std::pair<FieldElement, std::string>>;

// Closed-form answers for a parameter choice, from the classification case
// analysis; a lookup-and-compute oracle kept independent of the computation
// pipeline. Square and cube tests go through frobenius_root.
struct Expectation {
  bool structural_covered = false;  // dim / Cartan / center (any characteristic)
  size_t dim = 0;
  IntMatrix cartan;
  cpp_int cartan_det;
  size_t center_dim = 0;

  bool t1_covered = false;  // characteristic-2 case table or the p=3 cube remark
  std::string t1_case;
  size_t dim_t1_mod_comm = 0;

  bool t1_perp_covered = false;
  std::vector<PathExprSum> t1_perp_basis;
  size_t t1_perp_dim = 0;
  std::string quotient_tag;
  QuotientInvariants quotient_fp;

  int t1perp_mod_reynolds_dim = -1;  // Q3A only; -1 = not covered

  bool small_params = false;  // (k,s) = (1,3): no normalization claims
  std::vector<std::string> notes;
  std::string uncovered_reason;
};

Expectation expected(const FamilyParams& p);

// model-ring fingerprints used by the oracle (monomial enumeration, not the
// algebra pipeline)
QuotientInvariants fp_power_series(size_t m);                 // K[Y]/(Y^m)
QuotientInvariants fp_power_plus_square(size_t m);            // K[Y,S]/(Y^m,S^2,YS)
QuotientInvariants fp_two_truncated(size_t a, size_t b);      // K[U,Y]/(U^a,Y^b,UY)
QuotientInvariants fp_two_identified(size_t a, size_t b);     // K[U,Y]/(U^a-Y^b,UY)
QuotientInvariants fp_two_truncated_sq(size_t a, size_t b);   // + S with S^2=US=YS=0
QuotientInvariants fp_two_identified_sq(size_t a, size_t b);  // identified tops + S

struct RescalingWitness {
  FieldElement x_alpha, x_beta, x_gamma, x_eta;
};

// Diagonal-on-arrows isomorphism between two Q2B parameter choices with the
// same (k, s) and field, if one exists; verified by transporting the whole
// multiplication table. The scalar search is exhaustive over finite fields;
// no witness is claimed over rational function fields.
std::optional<RescalingWitness> arrow_rescaling(const FamilyParams& from,
                                                const FamilyParams& to);

// all elements of a finite spec (errors on GF(p)(t))
std::vector<FieldElement> enumerate_field(const FieldSpec& spec);

}  // namespace kuelsh
