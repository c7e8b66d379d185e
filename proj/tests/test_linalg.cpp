#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kuelsh/errors.hpp"
#include "kuelsh/linalg.hpp"

using namespace kuelsh;

namespace {

FieldSpec gf2() { return FieldSpec::prime(2); }
FieldSpec gf4() { return FieldSpec::extension(2, Poly{{1, 1, 1}}); }
FieldSpec rat2() { return FieldSpec::rational_function(2); }

FieldElement fe(const FieldSpec& K, const std::string& s) { return parse_element(K, s); }

Matrix mat(const FieldSpec& K, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<FieldElement>> r;
  for (const auto& row : rows) {
    std::vector<FieldElement> v;
    for (const auto& s : row) v.push_back(fe(K, s));
    r.push_back(std::move(v));
  }
  return Matrix::from_rows(K, r);
}

// cofactor-expansion determinant oracle for small integer matrices
cpp_int det_oracle(const IntMatrix& m) {
  if (m.rows == 1) return m(0, 0);
  cpp_int d = 0;
  int sign = 1;
  for (size_t c = 0; c < m.cols; ++c) {
    IntMatrix sub(m.rows - 1, m.cols - 1);
    for (size_t i = 1; i < m.rows; ++i) {
      size_t jj = 0;
      for (size_t j = 0; j < m.cols; ++j) {
        if (j == c) continue;
        sub(i - 1, jj++) = m(i, j);
      }
    }
    d += sign * m(0, c) * det_oracle(sub);
    sign = -sign;
  }
  return d;
}

std::vector<FieldElement> all_gf4_elements() {
  auto K = gf4();
  std::vector<FieldElement> v;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) v.push_back(FieldElement::from_poly(K, gfpoly::trim(Poly{{a, b}})));
  return v;
}

}  // namespace

TEST_CASE("rref") {
  auto K = gf2();
  auto [r1, rank1] = rref(Matrix::identity(K, 2));
  CHECK(rank1 == 2);
  CHECK(r1 == Matrix::identity(K, 2));

  auto [r2, rank2] = rref(mat(K, {{"1", "1"}, {"1", "1"}}));
  CHECK(rank2 == 1);
  CHECK(r2.row(0) == std::vector<FieldElement>{fe(K, "1"), fe(K, "1")});

  auto R = rat2();
  auto [r3, rank3] = rref(mat(R, {{"t", "1"}, {"t^2", "t"}}));
  CHECK(rank3 == 1);
  CHECK(r3.row(0) == std::vector<FieldElement>{fe(R, "1"), fe(R, "1/t")});
}

TEST_CASE("kernel") {
  auto K = gf2();
  CHECK(kernel(Matrix(K, 3, 3)).rows() == 3);
  CHECK(kernel(Matrix::identity(K, 3)).rows() == 0);
  auto k = kernel(mat(K, {{"1", "1"}}));
  REQUIRE(k.rows() == 1);
  CHECK(k.row(0) == std::vector<FieldElement>{fe(K, "1"), fe(K, "1")});
}

TEST_CASE("rank-nullity on random matrices") {
  std::mt19937 rng(5);
  for (const auto& K : {gf2(), gf4()}) {
    std::uniform_int_distribution<int> dim(1, 6), bit(0, (int)K.size() - 1);
    auto elems = K.size() == 2
                     ? std::vector<FieldElement>{FieldElement::zero(K), FieldElement::one(K)}
                     : all_gf4_elements();
    for (int it = 0; it < 30; ++it) {
      size_t r = dim(rng), c = dim(rng);
      Matrix m(K, r, c);
      for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) m(i, j) = elems[bit(rng)];
      auto [rr, rank] = rref(m);
      auto k = kernel(m);
      CHECK(rank + k.rows() == c);
      // every kernel row really solves m x = 0
      for (size_t i = 0; i < k.rows(); ++i) {
        for (size_t row = 0; row < r; ++row) {
          auto s = FieldElement::zero(K);
          for (size_t j = 0; j < c; ++j) s = s + m(row, j) * k(i, j);
          CHECK(s.is_zero());
        }
      }
    }
  }
}

TEST_CASE("subspace lattice") {
  auto K = gf2();
  auto e1 = Subspace::span(K, 2, {{fe(K, "1"), fe(K, "0")}});
  auto e2 = Subspace::span(K, 2, {{fe(K, "0"), fe(K, "1")}});
  CHECK(e1.sum(e2) == Subspace::full(K, 2));
  CHECK(e1.intersect(e1) == e1);

  auto a = Subspace::span(K, 3, {{fe(K, "1"), fe(K, "1"), fe(K, "0")}});
  auto b = Subspace::span(K, 3, {{fe(K, "1"), fe(K, "1"), fe(K, "0")},
                                 {fe(K, "0"), fe(K, "0"), fe(K, "1")}});
  CHECK(a.intersect(b) == a);
  CHECK(b.contains(a));
  CHECK(b.quotient_dim(a) == 1);
  CHECK_THROWS_AS((void)Subspace::zero(K, 2).sum(Subspace::zero(K, 3)), Error);
}

TEST_CASE("smith normal form") {
  {
    IntMatrix m(2, 2);
    m(0, 0) = 4;
    m(0, 1) = 2;
    m(1, 0) = 2;
    m(1, 1) = 4;
    auto d = smith_normal_form(m);
    REQUIRE(d.size() == 2);
    CHECK(d[0] == 2);
    CHECK(d[1] == 6);
    CHECK(d[0] * d[1] == det_oracle(m));
  }
  {
    IntMatrix id(4, 4);
    for (size_t i = 0; i < 4; ++i) id(i, i) = 1;
    auto d = smith_normal_form(id);
    CHECK(d == std::vector<cpp_int>(4, 1));
  }
  {
    IntMatrix m(3, 3);
    int64_t vals[3][3] = {{4, 2, 2}, {2, 3, 1}, {2, 1, 3}};
    for (size_t i = 0; i < 3; ++i)
      for (size_t j = 0; j < 3; ++j) m(i, j) = vals[i][j];
    auto d = smith_normal_form(m);
    REQUIRE(d.size() == 3);
    cpp_int prod = d[0] * d[1] * d[2];
    CHECK(prod == 16);
    CHECK(det_oracle(m) == 16);
  }
}

TEST_CASE("smith divisibility and determinant on random matrices") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> dim(1, 4), val(-6, 6);
  for (int it = 0; it < 60; ++it) {
    size_t n = dim(rng);
    IntMatrix m(n, n);
    for (auto& v : m.e) v = val(rng);
    cpp_int det = det_oracle(m);
    auto d = smith_normal_form(m);
    for (size_t i = 0; i + 1 < d.size(); ++i) CHECK(d[i + 1] % d[i] == 0);
    if (det != 0) {
      REQUIRE(d.size() == n);
      cpp_int prod = 1;
      for (const auto& v : d) prod *= v;
      CHECK(prod == (det < 0 ? cpp_int(-det) : det));
    } else {
      CHECK(d.size() < n);
    }
  }
}

TEST_CASE("semilinear kernel") {
  SUBCASE("square constant over GF(4)") {
    auto K = gf4();
    auto c = fe(K, "g+1");
    auto s = semilinear_kernel({{FieldElement::one(K)}, {c}}, 1);
    // oracle: exhaustive search over GF(4)^2
    std::vector<std::vector<FieldElement>> sols;
    for (const auto& l1 : all_gf4_elements())
      for (const auto& l2 : all_gf4_elements())
        if ((l1 * l1 + l2 * l2 * c).is_zero()) sols.push_back({l1, l2});
    auto expect = Subspace::span(K, 2, sols);
    CHECK(s == expect);
    CHECK(s.dim() == 1);
    CHECK(s.contains({fe(K, "g"), fe(K, "1")}));
  }
  SUBCASE("non-square over GF(2)(t)") {
    auto R = rat2();
    auto s = semilinear_kernel({{FieldElement::one(R)}, {fe(R, "t")}}, 1);
    CHECK(s.dim() == 0);
  }
  SUBCASE("all zero images give the full space") {
    auto K = gf2();
    auto z = FieldElement::zero(K);
    auto s = semilinear_kernel({{z}, {z}, {z}}, 1);
    CHECK(s == Subspace::full(K, 3));
  }
  SUBCASE("solutions really solve, and perfect specs match the linear root system") {
    std::mt19937 rng(29);
    auto K = gf4();
    auto elems = all_gf4_elements();
    std::uniform_int_distribution<int> pick(0, 3);
    for (int it = 0; it < 20; ++it) {
      std::vector<std::vector<FieldElement>> imgs(3);
      for (auto& v : imgs)
        for (int j = 0; j < 2; ++j) v.push_back(elems[pick(rng)]);
      auto s = semilinear_kernel(imgs, 1);
      for (size_t i = 0; i < s.dim(); ++i) {
        auto lam = s.basis().row(i);
        for (int j = 0; j < 2; ++j) {
          auto acc = FieldElement::zero(K);
          for (size_t k = 0; k < 3; ++k) acc = acc + lam[k].pow(2) * imgs[k][j];
          CHECK(acc.is_zero());
        }
      }
      // cross-check: kernel of the coordinatewise square root system
      std::vector<std::vector<FieldElement>> rows;
      for (int j = 0; j < 2; ++j) {
        std::vector<FieldElement> row;
        for (size_t k = 0; k < 3; ++k) row.push_back(*imgs[k][j].frobenius_root(1));
        rows.push_back(std::move(row));
      }
      auto k = kernel(Matrix::from_rows(K, rows));
      std::vector<std::vector<FieldElement>> kb;
      for (size_t i = 0; i < k.rows(); ++i) kb.push_back(k.row(i));
      CHECK(s == Subspace::span(K, 3, kb));
    }
  }
}
