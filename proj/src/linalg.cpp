#include "kuelsh/linalg.hpp"

#include <algorithm>

#include "kuelsh/errors.hpp"

namespace kuelsh {

Matrix Matrix::identity(const FieldSpec& spec, size_t n) {
  Matrix m(spec, n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = FieldElement::one(spec);
  return m;
}

Matrix Matrix::from_rows(const FieldSpec& spec,
                         const std::vector<std::vector<FieldElement>>& r) {
  size_t cols = r.empty() ? 0 : r.front().size();
  Matrix m(spec, r.size(), cols);
  for (size_t i = 0; i < r.size(); ++i) {
    if (r[i].size() != cols) fail(Errc::BadInput, "ragged rows");
    for (size_t j = 0; j < cols; ++j) m(i, j) = r[i][j];
  }
  return m;
}

std::vector<FieldElement> Matrix::row(size_t i) const {
  return {e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_};
}

Matrix Matrix::transposed() const {
  Matrix t(spec_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) fail(Errc::BadInput, "matrix shape mismatch");
  Matrix r(spec_, rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const FieldElement& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (size_t j = 0; j < o.cols_; ++j) r(i, j) = r(i, j) + a * o(k, j);
    }
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

size_t rref_in_place(Matrix& m) {
  size_t rank = 0;
  for (size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    size_t piv = rank;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != rank)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(rank, j));
    FieldElement s = m(rank, col).inv();
    for (size_t j = col; j < m.cols(); ++j) m(rank, j) = m(rank, j) * s;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == rank || m(i, col).is_zero()) continue;
      FieldElement f = m(i, col);
      for (size_t j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

std::pair<Matrix, size_t> rref(Matrix m) {
  size_t rank = rref_in_place(m);
  return {std::move(m), rank};
}

Matrix kernel(const Matrix& m) {
  Matrix r = m;
  size_t rank = rref_in_place(r);
  std::vector<size_t> pivot_col;
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t i = 0; i < rank; ++i) {
    size_t col = 0;
    while (col < r.cols() && r(i, col).is_zero()) ++col;
    pivot_col.push_back(col);
    is_pivot[col] = true;
  }
  std::vector<std::vector<FieldElement>> rows;
  for (size_t j = 0; j < m.cols(); ++j) {
    if (is_pivot[j]) continue;
    std::vector<FieldElement> v(m.cols(), FieldElement::zero(m.spec()));
    v[j] = FieldElement::one(m.spec());
    for (size_t i = 0; i < rank; ++i) v[pivot_col[i]] = -r(i, j);
    rows.push_back(std::move(v));
  }
  Matrix k = rows.empty() ? Matrix(m.spec(), 0, m.cols()) : Matrix::from_rows(m.spec(), rows);
  rref_in_place(k);
  return k;
}

Subspace Subspace::zero(const FieldSpec& spec, size_t ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix(spec, 0, ambient);
  return s;
}

Subspace Subspace::full(const FieldSpec& spec, size_t ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix::identity(spec, ambient);
  return s;
}

Subspace Subspace::span(const FieldSpec& spec, size_t ambient,
                        const std::vector<std::vector<FieldElement>>& vectors) {
  for (const auto& v : vectors)
    if (v.size() != ambient) fail(Errc::AmbientMismatch, "vector length != ambient dim");
  Matrix m = vectors.empty() ? Matrix(spec, 0, ambient) : Matrix::from_rows(spec, vectors);
  size_t rank = rref_in_place(m);
  Matrix b(spec, rank, ambient);
  for (size_t i = 0; i < rank; ++i)
    for (size_t j = 0; j < ambient; ++j) b(i, j) = m(i, j);
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = std::move(b);
  return s;
}

Subspace Subspace::sum(const Subspace& o) const {
  if (ambient_ != o.ambient_) fail(Errc::AmbientMismatch, "subspace sum: ambient mismatch");
  std::vector<std::vector<FieldElement>> rows;
  for (size_t i = 0; i < basis_.rows(); ++i) rows.push_back(basis_.row(i));
  for (size_t i = 0; i < o.basis_.rows(); ++i) rows.push_back(o.basis_.row(i));
  return span(spec(), ambient_, rows);
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (ambient_ != o.ambient_) fail(Errc::AmbientMismatch, "subspace intersect: ambient mismatch");
  // solve u A = v B via the kernel of the stacked transpose
  size_t a = dim(), b = o.dim();
  if (a == 0 || b == 0) return zero(spec(), ambient_);
  Matrix st(spec(), ambient_, a + b);
  for (size_t j = 0; j < a; ++j)
    for (size_t c = 0; c < ambient_; ++c) st(c, j) = basis_(j, c);
  for (size_t j = 0; j < b; ++j)
    for (size_t c = 0; c < ambient_; ++c) st(c, a + j) = -o.basis_(j, c);
  Matrix k = kernel(st);
  std::vector<std::vector<FieldElement>> rows;
  for (size_t i = 0; i < k.rows(); ++i) {
    std::vector<FieldElement> v(ambient_, FieldElement::zero(spec()));
    for (size_t j = 0; j < a; ++j)
      for (size_t c = 0; c < ambient_; ++c) v[c] = v[c] + k(i, j) * basis_(j, c);
    rows.push_back(std::move(v));
  }
  return span(spec(), ambient_, rows);
}

std::vector<FieldElement> Subspace::reduce(std::vector<FieldElement> v) const {
  if (v.size() != ambient_) fail(Errc::AmbientMismatch, "reduce: ambient mismatch");
  for (size_t i = 0; i < basis_.rows(); ++i) {
    size_t col = 0;
    while (col < ambient_ && basis_(i, col).is_zero()) ++col;
    if (col == ambient_ || v[col].is_zero()) continue;
    FieldElement f = v[col];
    for (size_t j = col; j < ambient_; ++j) v[j] = v[j] - f * basis_(i, j);
  }
  return v;
}

bool Subspace::contains(const std::vector<FieldElement>& v) const {
  auto r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](const FieldElement& x) { return x.is_zero(); });
}

bool Subspace::contains(const Subspace& o) const {
  for (size_t i = 0; i < o.basis_.rows(); ++i)
    if (!contains(o.basis_.row(i))) return false;
  return true;
}

size_t Subspace::quotient_dim(const Subspace& o) const {
  if (!contains(o)) fail(Errc::BadInput, "quotient_dim: not a subspace");
  return dim() - o.dim();
}

bool Subspace::operator==(const Subspace& o) const {
  return ambient_ == o.ambient_ && basis_ == o.basis_;
}

namespace {

cpp_int abs_int(const cpp_int& v) { return v < 0 ? cpp_int(-v) : v; }

}  // namespace

std::vector<cpp_int> smith_normal_form(IntMatrix m) {
  size_t n = std::min(m.rows, m.cols);
  std::vector<cpp_int> divisors;
  size_t s = 0;
  while (s < n) {
    size_t pi = s, pj = s;
    cpp_int best = 0;
    for (size_t i = s; i < m.rows; ++i)
      for (size_t j = s; j < m.cols; ++j) {
        if (m(i, j) == 0) continue;
        if (best == 0 || abs_int(m(i, j)) < best) {
          best = abs_int(m(i, j));
          pi = i;
          pj = j;
        }
      }
    if (best == 0) break;
    for (size_t j = 0; j < m.cols; ++j) std::swap(m(pi, j), m(s, j));
    for (size_t i = 0; i < m.rows; ++i) std::swap(m(i, pj), m(i, s));

    bool clean = true;
    for (size_t i = s + 1; i < m.rows; ++i) {
      cpp_int q = m(i, s) / m(s, s);
      if (q != 0)
        for (size_t j = s; j < m.cols; ++j) m(i, j) -= q * m(s, j);
      if (m(i, s) != 0) clean = false;
    }
    for (size_t j = s + 1; j < m.cols; ++j) {
      cpp_int q = m(s, j) / m(s, s);
      if (q != 0)
        for (size_t i = s; i < m.rows; ++i) m(i, j) -= q * m(i, s);
      if (m(s, j) != 0) clean = false;
    }
    if (!clean) continue;  // nonzero remainders left; repeat with a smaller pivot

    bool redo = false;
    for (size_t i = s + 1; i < m.rows && !redo; ++i)
      for (size_t j = s + 1; j < m.cols && !redo; ++j)
        if (m(i, j) % m(s, s) != 0) {
          for (size_t c = s; c < m.cols; ++c) m(s, c) += m(i, c);
          redo = true;
        }
    if (redo) continue;

    divisors.push_back(abs_int(m(s, s)));
    ++s;
  }
  return divisors;
}

Subspace semilinear_kernel(const std::vector<std::vector<FieldElement>>& images, unsigned n) {
  if (images.empty()) fail(Errc::BadInput, "semilinear_kernel: no images");
  if (images.front().empty()) fail(Errc::BadInput, "semilinear_kernel: empty vectors");
  const FieldSpec spec = images[0][0].spec();
  size_t len = images.front().size();
  for (const auto& v : images) {
    if (v.size() != len) fail(Errc::SpecMismatch, "semilinear_kernel: ragged images");
    for (const auto& x : v)
      if (!x.spec().compatible(spec)) fail(Errc::SpecMismatch, "semilinear_kernel: mixed specs");
  }

  // lambda solves sum lambda_i^q v_i = 0 iff it solves the K-linear system of
  // all p-basis components, coordinate by coordinate
  uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) q *= static_cast<uint64_t>(spec.characteristic());
  std::vector<std::vector<FieldElement>> rows;
  for (size_t r = 0; r < len; ++r) {
    std::vector<std::vector<FieldElement>> comp(images.size());
    for (size_t i = 0; i < images.size(); ++i) comp[i] = images[i][r].p_power_decompose(n);
    for (uint64_t j = 0; j < q; ++j) {
      std::vector<FieldElement> row;
      row.reserve(images.size());
      for (size_t i = 0; i < images.size(); ++i) row.push_back(comp[i][j]);
      rows.push_back(std::move(row));
    }
  }
  Matrix k = kernel(Matrix::from_rows(spec, rows));
  std::vector<std::vector<FieldElement>> basis;
  for (size_t i = 0; i < k.rows(); ++i) basis.push_back(k.row(i));
  return Subspace::span(spec, images.size(), basis);
}

}  // namespace kuelsh
