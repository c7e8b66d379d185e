#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kuelsh/linalg.hpp"

namespace kuelsh {

// A quiver with relations. Relations are pairs of linear combinations of
// parallel paths (written over the arrow alphabet); admissibility requires
// every monomial to have length >= 2.
struct QuiverPresentation {
  struct Arrow {
    std::string label;
    int src = 0, dst = 0;
  };
  // one side of a relation: sum of (coefficient, arrow index sequence)
  using PathSum = std::vector<std::pair<FieldElement, std::vector<int>>>;
  struct Relation {
    PathSum lhs, rhs;
  };

  FieldSpec spec;
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;

  int vertex_index(const std::string& label) const;
  int arrow_index(const std::string& label) const;
  void validate() const;  // throws NonAdmissible
};

using AlgebraElement = std::vector<FieldElement>;

// Finite-dimensional associative unital algebra presented by structure
// constants over a canonical basis of surviving paths. Immutable after
// construction.
class StructureAlgebra {
public:
  using SparseVec = std::vector<std::pair<int, FieldElement>>;

  const FieldSpec& spec() const { return spec_; }
  size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& basis_labels() const { return labels_; }
  const std::string& label(size_t i) const { return labels_[i]; }
  int path_length(size_t i) const { return path_length_[i]; }
  std::pair<int, int> vertex_pair(size_t i) const { return vertex_pair_[i]; }
  const std::vector<std::string>& vertex_labels() const { return vertex_labels_; }
  size_t vertex_count() const { return vertex_labels_.size(); }
  // basis index of the trivial path at vertex v
  int idempotent_index(size_t v) const { return idempotent_index_[v]; }
  // basis index of an arrow (arrows always survive)
  int arrow_basis_index(size_t a) const { return arrow_basis_index_[a]; }
  const std::vector<QuiverPresentation::Arrow>& arrows() const { return arrows_; }
  size_t loewy_bound() const { return loewy_bound_; }
  // smallest N with rad^N = 0
  size_t loewy_length() const { return loewy_length_; }

  AlgebraElement zero_element() const;
  AlgebraElement unit() const;
  AlgebraElement basis_element(size_t i) const;
  AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) const;
  const SparseVec& basis_product(size_t i, size_t j) const { return mult_[i * dim() + j]; }
  AlgebraElement power(const AlgebraElement& x, uint64_t e) const;

  // exhaustive check over all basis triples; throws on failure
  void verify_associativity() const;

  Subspace commutator_subspace() const;
  Subspace center() const;
  Subspace radical() const;
  Subspace socle() const;
  Subspace full_space() const;
  IntMatrix cartan_matrix() const;

  std::string element_to_string(const AlgebraElement& x) const;

private:
  friend StructureAlgebra build_quotient(const QuiverPresentation& q, size_t loewy_bound);

  FieldSpec spec_;
  std::vector<std::string> vertex_labels_;
  std::vector<QuiverPresentation::Arrow> arrows_;
  std::vector<std::string> labels_;
  std::vector<int> path_length_;
  std::vector<std::pair<int, int>> vertex_pair_;
  std::vector<int> idempotent_index_;
  std::vector<int> arrow_basis_index_;
  std::vector<SparseVec> mult_;  // dim x dim
  size_t loewy_bound_ = 0;
  size_t loewy_length_ = 0;
};

// Quotient of the path algebra by the ideal generated by the relations,
// saturated inside the window of paths of length <= 2*loewy_bound. Requires
// every path longer than loewy_bound to vanish in the quotient
// (SaturationFailure otherwise) and verifies associativity exhaustively.
StructureAlgebra build_quotient(const QuiverPresentation& q, size_t loewy_bound);

// Path-monomial expressions over an algebra's arrow labels: factors joined
// by '.', powers on factors or parenthesized groups, "e<vertex>" for trivial
// paths, "1" for the unit. Integer coefficients with '*' and '+'/'-' sums.
AlgebraElement eval_path_expr(const StructureAlgebra& A, const std::string& expr);
// linear combination with arbitrary field coefficients
AlgebraElement eval_terms(const StructureAlgebra& A,
                          const std::vector<std::pair<FieldElement, std::string>>& terms);

// Text format: "field gf:4", "vertex 1 2", "arrow beta 1 2",
// "rel beta.eta = (g+1)*alpha.beta + gamma.beta", optional "loewy 4".
struct ParsedPresentation {
  QuiverPresentation presentation;
  size_t loewy_bound = 0;  // 0 = not given
};
ParsedPresentation parse_presentation(const std::string& text);

FieldSpec parse_field_tag(const std::string& tag);  // "gf:4", "rat:2", "gf:7"

}  // namespace kuelsh
