#include "kuelsh/field.hpp"

#include <cctype>

#include "kuelsh/errors.hpp"

namespace kuelsh {

using gfpoly::mod;
using gfpoly::mul;

FieldSpec FieldSpec::prime(int64_t p) {
  if (!gfp::is_prime(p)) fail(Errc::InvalidParams, "characteristic must be prime");
  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->kind = FieldKind::Prime;
  impl->m = 1;
  FieldSpec s;
  s.impl_ = std::move(impl);
  return s;
}

FieldSpec FieldSpec::extension(int64_t p, Poly modulus, std::string symbol) {
  if (!gfp::is_prime(p)) fail(Errc::InvalidParams, "characteristic must be prime");
  modulus = gfpoly::monic(gfpoly::trim(std::move(modulus)), p);
  if (modulus.degree() < 2) fail(Errc::InvalidParams, "extension modulus must have degree >= 2");
  if (!gfpoly::is_irreducible(modulus, p))
    fail(Errc::InvalidParams, "extension modulus is reducible");
  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->kind = FieldKind::Extension;
  impl->m = modulus.degree();
  impl->modulus = std::move(modulus);
  impl->symbol = std::move(symbol);
  FieldSpec s;
  s.impl_ = std::move(impl);
  return s;
}

FieldSpec FieldSpec::rational_function(int64_t p, std::string symbol) {
  if (!gfp::is_prime(p)) fail(Errc::InvalidParams, "characteristic must be prime");
  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->kind = FieldKind::RationalFunction;
  impl->symbol = std::move(symbol);
  FieldSpec s;
  s.impl_ = std::move(impl);
  return s;
}

uint64_t FieldSpec::size() const {
  if (kind() == FieldKind::RationalFunction) return 0;
  uint64_t q = 1;
  for (int i = 0; i < impl_->m; ++i) q *= static_cast<uint64_t>(impl_->p);
  return q;
}

std::string FieldSpec::description() const {
  switch (kind()) {
    case FieldKind::Prime:
      return "GF(" + std::to_string(impl_->p) + ")";
    case FieldKind::Extension:
      return "GF(" + std::to_string(size()) + ")=GF(" + std::to_string(impl_->p) + ")[" +
             impl_->symbol + "]/(" + gfpoly::to_string(impl_->modulus, impl_->p, impl_->symbol) +
             ")";
    case FieldKind::RationalFunction:
      return "GF(" + std::to_string(impl_->p) + ")(" + impl_->symbol + ")";
  }
  return {};
}

bool FieldSpec::compatible(const FieldSpec& o) const {
  if (impl_ == o.impl_) return true;
  return impl_->p == o.impl_->p && impl_->kind == o.impl_->kind &&
         impl_->modulus == o.impl_->modulus && impl_->symbol == o.impl_->symbol;
}

void require_same_spec(const FieldElement& a, const FieldElement& b) {
  if (!a.spec().compatible(b.spec())) fail(Errc::FieldMismatch, "elements from different fields");
}

FieldElement FieldElement::zero(const FieldSpec& spec) {
  return FieldElement(spec, gfpoly::zero(), gfpoly::one());
}

FieldElement FieldElement::one(const FieldSpec& spec) {
  return FieldElement(spec, gfpoly::one(), gfpoly::one());
}

FieldElement FieldElement::from_integer(const FieldSpec& spec, int64_t n) {
  return FieldElement(spec, gfpoly::constant(n, spec.characteristic()), gfpoly::one());
}

FieldElement FieldElement::from_poly(const FieldSpec& spec, Poly num) {
  FieldElement e(spec, std::move(num), gfpoly::one());
  e.canonicalize();
  return e;
}

FieldElement FieldElement::fraction(const FieldSpec& spec, Poly num, Poly den) {
  FieldElement e(spec, std::move(num), std::move(den));
  e.canonicalize();
  return e;
}

FieldElement FieldElement::generator(const FieldSpec& spec) {
  if (spec.kind() == FieldKind::Prime)
    fail(Errc::BadElementSyntax, "prime field has no generator symbol");
  return from_poly(spec, gfpoly::monomial(1, 1, spec.characteristic()));
}

bool FieldElement::is_one() const { return num_ == gfpoly::one() && den_ == gfpoly::one(); }

void FieldElement::canonicalize() {
  const int64_t p = spec_.characteristic();
  num_ = gfpoly::trim(std::move(num_));
  den_ = gfpoly::trim(std::move(den_));
  switch (spec_.kind()) {
    case FieldKind::Prime:
    case FieldKind::Extension: {
      if (den_.is_zero()) fail(Errc::DivisionByZero, "zero denominator");
      if (!(den_ == gfpoly::one())) {
        if (spec_.kind() == FieldKind::Prime) {
          num_ = gfpoly::scale(num_, gfp::inv(den_.lead(), p), p);
        } else {
          num_ = mod(mul(num_, gfpoly::inv_mod(den_, spec_.modulus(), p), p), spec_.modulus(), p);
        }
        den_ = gfpoly::one();
      }
      if (spec_.kind() == FieldKind::Prime) {
        if (num_.degree() > 0) fail(Errc::BadElementSyntax, "non-constant in prime field");
      } else {
        num_ = mod(num_, spec_.modulus(), p);
      }
      break;
    }
    case FieldKind::RationalFunction: {
      if (den_.is_zero()) fail(Errc::DivisionByZero, "zero denominator");
      if (num_.is_zero()) {
        den_ = gfpoly::one();
        break;
      }
      Poly g = gfpoly::gcd(num_, den_, p);
      if (g.degree() > 0) {
        num_ = gfpoly::divmod(num_, g, p).first;
        den_ = gfpoly::divmod(den_, g, p).first;
      }
      int64_t s = gfp::inv(den_.lead(), p);
      num_ = gfpoly::scale(num_, s, p);
      den_ = gfpoly::scale(den_, s, p);
      break;
    }
  }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same_spec(*this, o);
  const int64_t p = spec_.characteristic();
  FieldElement r(spec_,
                 gfpoly::add(mul(num_, o.den_, p), mul(o.num_, den_, p), p),
                 mul(den_, o.den_, p));
  r.canonicalize();
  return r;
}

FieldElement FieldElement::operator-() const {
  FieldElement r(spec_, gfpoly::neg(num_, spec_.characteristic()), den_);
  return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same_spec(*this, o);
  const int64_t p = spec_.characteristic();
  FieldElement r(spec_, mul(num_, o.num_, p), mul(den_, o.den_, p));
  r.canonicalize();
  return r;
}

FieldElement FieldElement::inv() const {
  if (is_zero()) fail(Errc::DivisionByZero, "inverse of zero");
  FieldElement r(spec_, den_, num_);
  r.canonicalize();
  return r;
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inv(); }

FieldElement FieldElement::pow(uint64_t e) const {
  FieldElement r = one(spec_), base = *this;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

bool FieldElement::operator==(const FieldElement& o) const {
  return spec_.compatible(o.spec_) && num_ == o.num_ && den_ == o.den_;
}

static uint64_t p_power(int64_t p, unsigned n) {
  uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) {
    q *= static_cast<uint64_t>(p);
    if (q > (1u << 20)) fail(Errc::InvalidParams, "p^n too large");
  }
  return q;
}

FieldElement FieldElement::frobenius(unsigned n) const {
  return pow(p_power(spec_.characteristic(), n));
}

std::optional<FieldElement> FieldElement::frobenius_root(unsigned n) const {
  const int64_t p = spec_.characteristic();
  if (n == 0 || is_zero()) return *this;
  switch (spec_.kind()) {
    case FieldKind::Prime:
      return *this;  // x^p = x
    case FieldKind::Extension: {
      // Frobenius has order m on GF(p^m); invert it by iterating
      unsigned m = static_cast<unsigned>(spec_.extension_degree());
      unsigned k = (m - (n % m)) % m;
      return frobenius(k);
    }
    case FieldKind::RationalFunction: {
      uint64_t q = p_power(p, n);
      Poly rn, rd;
      if (!gfpoly::qth_root(num_, q, p, rn)) return std::nullopt;
      if (!gfpoly::qth_root(den_, q, p, rd)) return std::nullopt;
      return fraction(spec_, std::move(rn), std::move(rd));
    }
  }
  return std::nullopt;
}

std::vector<FieldElement> FieldElement::p_power_decompose(unsigned n) const {
  const int64_t p = spec_.characteristic();
  const uint64_t q = p_power(p, n);
  std::vector<FieldElement> out(static_cast<size_t>(q), zero(spec_));
  if (spec_.is_perfect()) {
    out[0] = *frobenius_root(n);
    return out;
  }
  if (is_zero()) return out;
  // x = f/g = f g^(q-1) / g^q; split h = f g^(q-1) along exponents mod q,
  // using that GF(p) coefficients are their own q-th roots
  Poly gq1 = gfpoly::one();
  for (uint64_t i = 0; i + 1 < q; ++i) gq1 = mul(gq1, den_, p);
  Poly h = mul(num_, gq1, p);
  std::vector<Poly> comp(static_cast<size_t>(q));
  for (size_t i = 0; i < h.c.size(); ++i) {
    if (h.c[i] == 0) continue;
    size_t j = i % q;
    size_t deg = i / q;
    if (comp[j].c.size() <= deg) comp[j].c.resize(deg + 1, 0);
    comp[j].c[deg] = h.c[i];
  }
  for (size_t j = 0; j < q; ++j)
    out[j] = fraction(spec_, gfpoly::trim(std::move(comp[j])), den_);
  return out;
}

std::string FieldElement::to_string() const {
  const int64_t p = spec_.characteristic();
  const std::string& sym = spec_.symbol();
  if (spec_.kind() != FieldKind::RationalFunction || den_ == gfpoly::one())
    return gfpoly::to_string(num_, p, sym.empty() ? "g" : sym);
  auto wrap = [&](const Poly& f) {
    std::string s = gfpoly::to_string(f, p, sym);
    bool multi = s.find('+') != std::string::npos;
    return multi ? "(" + s + ")" : s;
  };
  return wrap(num_) + "/" + wrap(den_);
}

namespace {

// recursive-descent parser for the element grammar
struct ElementParser {
  const FieldSpec& spec;
  const std::string& s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void err(const std::string& msg) {
    fail(Errc::BadElementSyntax, msg + " at position " + std::to_string(i) + " in '" + s + "'");
  }

  FieldElement parse() {
    FieldElement v = sum();
    skip();
    if (i != s.size()) err("trailing input");
    return v;
  }

  FieldElement sum() {
    FieldElement v = eat('-') ? -product() : product();
    for (;;) {
      if (eat('+'))
        v = v + product();
      else if (eat('-'))
        v = v - product();
      else
        return v;
    }
  }

  FieldElement product() {
    FieldElement v = power();
    for (;;) {
      if (eat('*'))
        v = v * power();
      else if (eat('/'))
        v = v / power();
      else {
        // implicit multiplication: integer literal directly before a symbol
        skip();
        if (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '(')) {
          v = v * power();
        } else {
          return v;
        }
      }
    }
  }

  FieldElement power() {
    FieldElement v = atom();
    skip();
    if (i < s.size() && s[i] == '^') {
      ++i;
      skip();
      bool brace = eat('{');
      size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (start == i) err("expected exponent");
      uint64_t e = std::stoull(s.substr(start, i - start));
      if (brace && !eat('}')) err("expected '}'");
      v = v.pow(e);
    }
    return v;
  }

  FieldElement atom() {
    skip();
    if (i >= s.size()) err("unexpected end");
    if (s[i] == '(') {
      ++i;
      FieldElement v = sum();
      if (!eat(')')) err("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      return FieldElement::from_integer(spec, std::stoll(s.substr(start, i - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(s[i]))) {
      size_t start = i;
      while (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i]))) ++i;
      std::string name = s.substr(start, i - start);
      if (name != spec.symbol()) err("unknown symbol '" + name + "'");
      return FieldElement::generator(spec);
    }
    err("unexpected character");
  }
};

}  // namespace

FieldElement parse_element(const FieldSpec& spec, const std::string& text) {
  ElementParser p{spec, text};
  return p.parse();
}

}  // namespace kuelsh
