#pragma once

#include "kuelsh/algebra.hpp"

namespace kuelsh {

// Symmetrizing form: a linear functional psi with psi(xy) an associative,
// symmetric, nondegenerate bilinear form. Built on a socle basis rescaled so
// that socle elements of one block agree modulo commutators.
class TraceForm {
public:
  const std::vector<FieldElement>& psi() const { return psi_; }
  FieldElement apply(const AlgebraElement& x) const;
  const Matrix& gram() const { return gram_; }
  // the rescaled socle element and scaling factor per vertex
  const std::vector<AlgebraElement>& socle_elements() const { return socle_elements_; }
  const std::vector<FieldElement>& scalings() const { return scalings_; }

  // same form with psi scaled by a nonzero constant; still symmetrizing
  TraceForm rescaled(const FieldElement& factor) const;

private:
  friend TraceForm build_trace_form(const StructureAlgebra& A);
  void compute_gram(const StructureAlgebra& A);
  void verify(const StructureAlgebra& A) const;

  std::vector<FieldElement> psi_;
  Matrix gram_;
  std::vector<AlgebraElement> socle_elements_;
  std::vector<FieldElement> scalings_;
};

TraceForm build_trace_form(const StructureAlgebra& A);

// T_n = {x : x^(p^n) in [A,A]}; computed through the semilinear kernel over
// classes modulo the commutator subspace.
Subspace tn_space(const StructureAlgebra& A, unsigned n);

// {y : psi(x y) = 0 for all x in S}
Subspace orthogonal(const StructureAlgebra& A, const TraceForm& form, const Subspace& S);

struct LadderStep {
  unsigned n = 0;
  Subspace t;       // T_n
  Subspace t_perp;  // T_n^perp, an ideal of the center
};

struct KulshammerLadder {
  std::vector<LadderStep> steps;
  Subspace center;
  Subspace reynolds;  // Z(A) n soc(A)
};

// smallest n with p^n >= loewy length, so the ladder visibly stabilizes
unsigned default_ladder_depth(const StructureAlgebra& A);

// Computes T_n and T_n^perp for n = 0..n_max plus the Reynolds ideal, and
// verifies the chain, the ideal property, dim T_n + dim T_n^perp = dim A, and
// stabilization at the Reynolds ideal once p^n_max reaches the loewy length.
KulshammerLadder kulshammer_ladder(const StructureAlgebra& A, const TraceForm& form,
                                   unsigned n_max);

struct QuotientInvariants {
  size_t total_dim = 0;
  std::vector<size_t> radical_power_dims;  // dim rad^1, rad^2, ... (until zero)
  size_t socle_dim = 0;
  size_t nilpotency_index = 0;  // smallest N with rad^N = 0; 0 for the zero ring
  bool operator==(const QuotientInvariants&) const = default;
};

// Isomorphism fingerprint of the commutative quotient Z/I for an ideal I of a
// subalgebra Z (here: the center modulo a Kuelshammer ideal).
QuotientInvariants quotient_invariants(const StructureAlgebra& A, const Subspace& Z,
                                       const Subspace& I);

}  // namespace kuelsh
