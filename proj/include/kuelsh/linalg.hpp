#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <vector>

#include "kuelsh/field.hpp"

namespace kuelsh {

using boost::multiprecision::cpp_int;

// Dense matrix over a FieldSpec, row-major. Desk-scale only: dimensions here
// stay below ~100, so no sparsity and no pivoting tricks.
class Matrix {
public:
  Matrix() = default;
  Matrix(FieldSpec spec, size_t rows, size_t cols)
      : spec_(std::move(spec)), rows_(rows), cols_(cols),
        e_(rows * cols, FieldElement::zero(spec_)) {}

  static Matrix identity(const FieldSpec& spec, size_t n);
  static Matrix from_rows(const FieldSpec& spec, const std::vector<std::vector<FieldElement>>& r);

  const FieldSpec& spec() const { return spec_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  FieldElement& operator()(size_t i, size_t j) { return e_[i * cols_ + j]; }
  const FieldElement& operator()(size_t i, size_t j) const { return e_[i * cols_ + j]; }

  std::vector<FieldElement> row(size_t i) const;
  Matrix transposed() const;
  Matrix operator*(const Matrix& o) const;
  bool operator==(const Matrix& o) const;

private:
  FieldSpec spec_;
  size_t rows_ = 0, cols_ = 0;
  std::vector<FieldElement> e_;
};

// In-place reduced row echelon form with first-nonzero pivot scan; returns rank.
size_t rref_in_place(Matrix& m);
std::pair<Matrix, size_t> rref(Matrix m);

// Right kernel {x : m x = 0} as rows of the returned matrix, in RREF.
Matrix kernel(const Matrix& m);

// Linear subspace of K^ambient in canonical form: RREF basis, zero rows
// dropped. Equality of subspaces is representation equality.
class Subspace {
public:
  Subspace() = default;
  static Subspace zero(const FieldSpec& spec, size_t ambient);
  static Subspace full(const FieldSpec& spec, size_t ambient);
  static Subspace span(const FieldSpec& spec, size_t ambient,
                       const std::vector<std::vector<FieldElement>>& vectors);

  size_t ambient_dim() const { return ambient_; }
  size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const FieldSpec& spec() const { return basis_.spec(); }

  Subspace sum(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  bool contains(const std::vector<FieldElement>& v) const;
  bool contains(const Subspace& o) const;
  size_t quotient_dim(const Subspace& o) const;  // dim(*this) - dim(o), o must be contained

  // residue of v modulo this subspace: v minus its projection along pivots
  std::vector<FieldElement> reduce(std::vector<FieldElement> v) const;

  bool operator==(const Subspace& o) const;

private:
  size_t ambient_ = 0;
  Matrix basis_;
};

// Integer matrix with arbitrary-precision entries.
struct IntMatrix {
  size_t rows = 0, cols = 0;
  std::vector<cpp_int> e;

  IntMatrix() = default;
  IntMatrix(size_t r, size_t c) : rows(r), cols(c), e(r * c, 0) {}
  cpp_int& operator()(size_t i, size_t j) { return e[i * cols + j]; }
  const cpp_int& operator()(size_t i, size_t j) const { return e[i * cols + j]; }
  bool operator==(const IntMatrix&) const = default;
};

// Nonzero elementary divisors d1 | d2 | ..., positive, via gcd-driven reduction.
std::vector<cpp_int> smith_normal_form(IntMatrix m);

// Solutions lambda of sum_i lambda_i^(p^n) v_i = 0, a K-subspace. Reduces to a
// K-linear system through p_power_decompose applied entrywise.
Subspace semilinear_kernel(const std::vector<std::vector<FieldElement>>& images, unsigned n);

}  // namespace kuelsh
