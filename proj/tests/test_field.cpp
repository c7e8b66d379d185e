#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kuelsh/errors.hpp"
#include "kuelsh/field.hpp"

using namespace kuelsh;

namespace {

FieldSpec gf2() { return FieldSpec::prime(2); }
FieldSpec gf3() { return FieldSpec::prime(3); }
FieldSpec gf4() {
  return FieldSpec::extension(2, Poly{{1, 1, 1}});  // g^2+g+1
}
FieldSpec rat2() { return FieldSpec::rational_function(2); }
FieldSpec rat3() { return FieldSpec::rational_function(3); }
FieldSpec gf9() {
  return FieldSpec::extension(3, Poly{{1, 0, 1}});  // g^2+1
}

std::vector<FieldElement> all_gf4() {
  auto K = gf4();
  std::vector<FieldElement> v;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) v.push_back(FieldElement::from_poly(K, gfpoly::trim(Poly{{a, b}})));
  return v;
}

FieldElement random_element(const FieldSpec& K, std::mt19937& rng) {
  std::uniform_int_distribution<int64_t> coef(0, K.characteristic() - 1);
  std::uniform_int_distribution<int> deg(0, 3);
  auto rand_poly = [&](bool nonzero) {
    Poly f;
    do {
      f.c.clear();
      int d = deg(rng);
      for (int i = 0; i <= d; ++i) f.c.push_back(coef(rng));
      f = gfpoly::trim(std::move(f));
    } while (nonzero && f.is_zero());
    return f;
  };
  switch (K.kind()) {
    case FieldKind::Prime:
      return FieldElement::from_integer(K, coef(rng));
    case FieldKind::Extension:
      return FieldElement::from_poly(K, rand_poly(false));
    case FieldKind::RationalFunction:
      return FieldElement::fraction(K, rand_poly(false), rand_poly(true));
  }
  return FieldElement::zero(K);
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  auto K = gf2();
  auto one = FieldElement::one(K);
  CHECK(one + one == FieldElement::zero(K));
  auto L = gf3();
  CHECK(FieldElement::from_integer(L, 2) + FieldElement::from_integer(L, 2) ==
        FieldElement::one(L));
  CHECK_THROWS_AS(one / FieldElement::zero(K), Error);
  CHECK_THROWS_AS((void)(one + FieldElement::one(L)), Error);
}

TEST_CASE("extension field forced by modulus") {
  auto K = gf4();
  auto g = FieldElement::generator(K);
  CHECK(g * g == g + FieldElement::one(K));
  // multiplication table sanity: g * (g+1) = g^2+g = 1
  CHECK(g * (g + FieldElement::one(K)) == FieldElement::one(K));
}

TEST_CASE("rational function sum via common-denominator oracle") {
  auto K = rat2();
  auto t = FieldElement::generator(K);
  auto one = FieldElement::one(K);
  auto lhs = one / t + one / (t + one);
  // oracle: raw polynomial arithmetic, n1*d2 + n2*d1 over d1*d2
  Poly n1{{1}}, d1{{0, 1}}, n2{{1}}, d2{{1, 1}};
  Poly num = gfpoly::add(gfpoly::mul(n1, d2, 2), gfpoly::mul(n2, d1, 2), 2);
  Poly den = gfpoly::mul(d1, d2, 2);
  CHECK(lhs == FieldElement::fraction(K, num, den));
  CHECK(lhs.to_string() == "1/(t^2+t)");
}

TEST_CASE("element parsing round-trips canonical printing") {
  auto K = rat2();
  auto e = parse_element(K, "(t^3+1)/(t^2+t)");
  // gcd(t^3+1, t^2+t) = t+1, so this reduces
  CHECK(e == FieldElement::fraction(K, Poly{{1, 1, 1}}, Poly{{0, 1}}));
  CHECK(parse_element(K, e.to_string()) == e);

  auto L = gf4();
  CHECK(parse_element(L, "g+1") == FieldElement::generator(L) + FieldElement::one(L));

  auto M = rat3();
  auto f = parse_element(M, "2t^2+1");
  CHECK(parse_element(M, f.to_string()) == f);
  CHECK_THROWS_AS(parse_element(K, "x+1"), Error);

  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    auto x = random_element(K, rng);
    CHECK(parse_element(K, x.to_string()) == x);
    auto y = random_element(M, rng);
    CHECK(parse_element(M, y.to_string()) == y);
  }
}

TEST_CASE("frobenius basics") {
  auto K = gf4();
  auto g = FieldElement::generator(K);
  CHECK(g.frobenius(1) == g * g);
  // inverse frobenius on GF(9): the root of x is x^3
  auto h = FieldElement::generator(gf9());
  auto r = (h + FieldElement::one(gf9())).frobenius_root(1);
  REQUIRE(r.has_value());
  CHECK(r->frobenius(1) == h + FieldElement::one(gf9()));
  auto R = rat2();
  auto t = FieldElement::generator(R);
  CHECK(t.frobenius(1) == t * t);
  auto L = gf3();
  CHECK(FieldElement::from_integer(L, 2).frobenius(1) == FieldElement::from_integer(L, 2));
}

TEST_CASE("frobenius is a ring homomorphism") {
  std::mt19937 rng(11);
  for (const auto& K : {gf4(), rat2(), rat3()}) {
    for (int i = 0; i < 40; ++i) {
      auto x = random_element(K, rng);
      auto y = random_element(K, rng);
      CHECK((x * y).frobenius(1) == x.frobenius(1) * y.frobenius(1));
      CHECK((x + y).frobenius(1) == x.frobenius(1) + y.frobenius(1));
    }
  }
}

TEST_CASE("frobenius_root") {
  auto K = gf4();
  auto g = FieldElement::generator(K);
  // oracle: exhaustive search over the 4 elements
  auto target = g + FieldElement::one(K);
  std::optional<FieldElement> expect;
  for (const auto& y : all_gf4())
    if (y * y == target) expect = y;
  REQUIRE(expect.has_value());
  CHECK(*expect == g);  // g^2 = g+1
  CHECK(target.frobenius_root(1) == expect);

  auto R = rat2();
  auto t = FieldElement::generator(R);
  CHECK((t * t).frobenius_root(1) == t);
  CHECK_FALSE(t.frobenius_root(1).has_value());

  // perfect specs always have roots
  std::mt19937 rng(3);
  for (int i = 0; i < 30; ++i) {
    auto x = random_element(K, rng);
    auto r = x.frobenius_root(1);
    REQUIRE(r.has_value());
    CHECK(r->frobenius(1) == x);
  }
}

TEST_CASE("p_power_decompose") {
  auto R = rat2();
  auto t = FieldElement::generator(R);
  SUBCASE("t^3+t^2 -> (t, t)") {
    auto x = t.pow(3) + t.pow(2);
    auto w = x.p_power_decompose(1);
    REQUIRE(w.size() == 2);
    CHECK(w[0] == t);
    CHECK(w[1] == t);
  }
  SUBCASE("1 -> (1, 0)") {
    auto w = FieldElement::one(R).p_power_decompose(1);
    CHECK(w[0] == FieldElement::one(R));
    CHECK(w[1] == FieldElement::zero(R));
  }
  SUBCASE("perfect branch") {
    auto K = gf4();
    auto g = FieldElement::generator(K);
    auto w = g.p_power_decompose(1);
    REQUIRE(w.size() == 2);
    CHECK(w[0] == g * g);
    CHECK(w[1] == FieldElement::zero(K));
  }
  SUBCASE("round-trip on random elements") {
    std::mt19937 rng(19);
    for (const auto& K : {rat2(), rat3()}) {
      auto tt = FieldElement::generator(K);
      for (unsigned n = 1; n <= 2; ++n) {
        uint64_t q = 1;
        for (unsigned i = 0; i < n; ++i) q *= K.characteristic();
        if (q > 9) continue;
        for (int i = 0; i < 15; ++i) {
          auto x = random_element(K, rng);
          auto w = x.p_power_decompose(n);
          auto sum = FieldElement::zero(K);
          for (size_t j = 0; j < w.size(); ++j) sum = sum + w[j].pow(q) * tt.pow(j);
          CHECK(sum == x);
        }
      }
    }
  }
  SUBCASE("root exists iff only component 0 is nonzero") {
    std::mt19937 rng(23);
    for (int i = 0; i < 40; ++i) {
      auto x = random_element(R, rng);
      auto w = x.p_power_decompose(1);
      bool others_vanish = w[1].is_zero();
      CHECK(x.frobenius_root(1).has_value() == others_vanish);
    }
  }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937 rng(101);
  for (const auto& K : {gf2(), gf3(), gf4(), gf9(), rat2(), rat3()}) {
    for (int i = 0; i < 25; ++i) {
      auto x = random_element(K, rng);
      auto y = random_element(K, rng);
      auto z = random_element(K, rng);
      CHECK((x + y) + z == x + (y + z));
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * (y + z) == x * y + x * z);
      CHECK(x + (-x) == FieldElement::zero(K));
      if (!x.is_zero()) CHECK(x * x.inv() == FieldElement::one(K));
    }
  }
}

TEST_CASE("canonical form is unique") {
  auto K = rat2();
  // (t^2+t)/(t+1) == t
  auto e = FieldElement::fraction(K, Poly{{0, 1, 1}}, Poly{{1, 1}});
  CHECK(e == FieldElement::generator(K));
  // denominators are monic
  auto M = rat3();
  auto f = FieldElement::fraction(M, Poly{{1}}, Poly{{0, 2}});  // 1/(2t)
  CHECK(f.den().lead() == 1);
  CHECK(f == parse_element(M, "2/t"));
}
