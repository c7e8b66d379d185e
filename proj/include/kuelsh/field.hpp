#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kuelsh/poly.hpp"

namespace kuelsh {

enum class FieldKind { Prime, Extension, RationalFunction };

// Exact field of positive characteristic: GF(p), GF(p^m) with a user-supplied
// irreducible modulus, or the rational function field GF(p)(t). Specs are
// immutable and shared; two specs are compatible iff they share the same
// underlying data.
class FieldSpec {
public:
  static FieldSpec prime(int64_t p);
  static FieldSpec extension(int64_t p, Poly modulus, std::string symbol = "g");
  static FieldSpec rational_function(int64_t p, std::string symbol = "t");

  int64_t characteristic() const { return impl_->p; }
  FieldKind kind() const { return impl_->kind; }
  bool is_perfect() const { return impl_->kind != FieldKind::RationalFunction; }
  int extension_degree() const { return impl_->m; }  // 1 for prime fields
  const Poly& modulus() const { return impl_->modulus; }
  const std::string& symbol() const { return impl_->symbol; }
  // number of elements for finite specs, 0 for GF(p)(t)
  uint64_t size() const;
  std::string description() const;

  bool same_as(const FieldSpec& o) const { return impl_ == o.impl_; }
  bool compatible(const FieldSpec& o) const;

private:
  struct Impl {
    int64_t p = 2;
    FieldKind kind = FieldKind::Prime;
    Poly modulus;  // extension only
    int m = 1;
    std::string symbol;
  };
  std::shared_ptr<const Impl> impl_;
};

// Canonical field element. Uniform fraction-of-polynomials storage:
//   prime:     num constant, den = 1
//   extension: num of degree < m in the generator, den = 1
//   rational:  num/den reduced, den monic and nonzero
// Equality is representation equality.
class FieldElement {
public:
  FieldElement() = default;

  static FieldElement zero(const FieldSpec& spec);
  static FieldElement one(const FieldSpec& spec);
  static FieldElement from_integer(const FieldSpec& spec, int64_t n);
  static FieldElement from_poly(const FieldSpec& spec, Poly num);
  static FieldElement fraction(const FieldSpec& spec, Poly num, Poly den);
  // the generator g (extension) or variable t (rational function)
  static FieldElement generator(const FieldSpec& spec);

  const FieldSpec& spec() const { return spec_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement pow(uint64_t e) const;

  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  // x -> x^(p^n)
  FieldElement frobenius(unsigned n) const;
  // y with y^(p^n) = x, if any; unique when it exists
  std::optional<FieldElement> frobenius_root(unsigned n) const;
  // components (w_0,...,w_{q-1}), q = p^n, with x = sum_j w_j^q t^j over
  // GF(p)(t); (root, 0, ..., 0) over perfect specs
  std::vector<FieldElement> p_power_decompose(unsigned n) const;

  std::string to_string() const;

private:
  FieldElement(FieldSpec spec, Poly num, Poly den)
      : spec_(std::move(spec)), num_(std::move(num)), den_(std::move(den)) {}
  void canonicalize();

  FieldSpec spec_;
  Poly num_;
  Poly den_{{1}};
};

// Element grammar: integers, the spec's symbol, + - * / ^ and parentheses,
// with implicit multiplication between an integer and a symbol ("2t^2").
// Canonical printing is the inverse of parsing.
FieldElement parse_element(const FieldSpec& spec, const std::string& text);

void require_same_spec(const FieldElement& a, const FieldElement& b);

}  // namespace kuelsh
