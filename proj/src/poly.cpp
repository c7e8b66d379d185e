#include "kuelsh/poly.hpp"

#include <algorithm>

#include "kuelsh/errors.hpp"

namespace kuelsh {
namespace gfp {

int64_t norm(int64_t a, int64_t p) {
  int64_t r = a % p;
  return r < 0 ? r + p : r;
}

int64_t add(int64_t a, int64_t b, int64_t p) { return norm(a + b, p); }
int64_t sub(int64_t a, int64_t b, int64_t p) { return norm(a - b, p); }
int64_t mul(int64_t a, int64_t b, int64_t p) { return norm(a * b, p); }

int64_t inv(int64_t a, int64_t p) {
  a = norm(a, p);
  if (a == 0) fail(Errc::DivisionByZero, "inverse of 0 in GF(p)");
  // extended euclid
  int64_t t = 0, newt = 1, r = p, newr = a;
  while (newr != 0) {
    int64_t q = r / newr;
    std::swap(t -= q * newt, newt);
    std::swap(r -= q * newr, newr);
  }
  return norm(t, p);
}

int64_t pow(int64_t a, uint64_t e, int64_t p) {
  int64_t r = 1 % p;
  a = norm(a, p);
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}

bool is_prime(int64_t p) {
  if (p < 2) return false;
  for (int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace gfp

namespace gfpoly {

Poly zero() { return {}; }
Poly one() { return Poly{{1}}; }

Poly trim(Poly a) {
  while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
  return a;
}

Poly constant(int64_t v, int64_t p) {
  v = gfp::norm(v, p);
  if (v == 0) return {};
  return Poly{{v}};
}

Poly monomial(int64_t coeff, int deg, int64_t p) {
  coeff = gfp::norm(coeff, p);
  if (coeff == 0) return {};
  Poly r;
  r.c.assign(deg + 1, 0);
  r.c[deg] = coeff;
  return r;
}

static void check_degree(size_t deg) {
  if (deg > kMaxDegree) fail(Errc::DegreeBound, "polynomial degree exceeds bound");
}

Poly add(const Poly& a, const Poly& b, int64_t p) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); ++i) {
    int64_t v = 0;
    if (i < a.c.size()) v += a.c[i];
    if (i < b.c.size()) v += b.c[i];
    r.c[i] = gfp::norm(v, p);
  }
  return trim(std::move(r));
}

Poly neg(const Poly& a, int64_t p) {
  Poly r = a;
  for (auto& v : r.c) v = gfp::norm(-v, p);
  return r;
}

Poly sub(const Poly& a, const Poly& b, int64_t p) { return add(a, neg(b, p), p); }

Poly scale(const Poly& a, int64_t s, int64_t p) {
  s = gfp::norm(s, p);
  if (s == 0) return {};
  Poly r = a;
  for (auto& v : r.c) v = gfp::mul(v, s, p);
  return trim(std::move(r));
}

Poly mul(const Poly& a, const Poly& b, int64_t p) {
  if (a.is_zero() || b.is_zero()) return {};
  check_degree(a.c.size() + b.c.size() - 2);
  Poly r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = gfp::norm(r.c[i + j] + a.c[i] * b.c[j], p);
  }
  return trim(std::move(r));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, int64_t p) {
  if (b.is_zero()) fail(Errc::DivisionByZero, "polynomial division by zero");
  Poly rem = a, quot;
  if (a.degree() >= b.degree()) quot.c.assign(a.degree() - b.degree() + 1, 0);
  int64_t linv = gfp::inv(b.lead(), p);
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    int shift = rem.degree() - b.degree();
    int64_t f = gfp::mul(rem.lead(), linv, p);
    quot.c[shift] = f;
    for (size_t i = 0; i < b.c.size(); ++i)
      rem.c[i + shift] = gfp::norm(rem.c[i + shift] - f * b.c[i], p);
    rem = trim(std::move(rem));
  }
  return {trim(std::move(quot)), rem};
}

Poly mod(const Poly& a, const Poly& b, int64_t p) { return divmod(a, b, p).second; }

Poly monic(const Poly& a, int64_t p) {
  if (a.is_zero()) return a;
  return scale(a, gfp::inv(a.lead(), p), p);
}

Poly gcd(Poly a, Poly b, int64_t p) {
  while (!b.is_zero()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

Poly pow_mod(const Poly& a, uint64_t e, const Poly& modulus, int64_t p) {
  Poly r = one(), base = mod(a, modulus, p);
  while (e) {
    if (e & 1) r = mod(mul(r, base, p), modulus, p);
    base = mod(mul(base, base, p), modulus, p);
    e >>= 1;
  }
  return r;
}

Poly inv_mod(const Poly& a, const Poly& modulus, int64_t p) {
  // extended euclid on (modulus, a)
  Poly r0 = modulus, r1 = mod(a, modulus, p);
  if (r1.is_zero()) fail(Errc::DivisionByZero, "inverse of 0 in extension field");
  Poly t0 = zero(), t1 = one();
  while (!r1.is_zero()) {
    auto [q, r2] = divmod(r0, r1, p);
    Poly t2 = sub(t0, mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.degree() != 0) fail(Errc::DivisionByZero, "element not invertible mod modulus");
  return mod(scale(t0, gfp::inv(r0.lead(), p), p), modulus, p);
}

bool qth_root(const Poly& a, uint64_t q, int64_t p, Poly& out) {
  (void)p;
  if (a.is_zero()) {
    out = zero();
    return true;
  }
  Poly r;
  r.c.assign(a.degree() / q + 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    if (i % q != 0) return false;
    // coefficients lie in GF(p), fixed by x -> x^q
    r.c[i / q] = a.c[i];
  }
  out = trim(std::move(r));
  return true;
}

bool is_irreducible(const Poly& f, int64_t p) {
  int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  // trial division by all monic polynomials of degree <= n/2; fine for the
  // tiny moduli this library is meant for
  std::vector<int64_t> digits;
  for (int d = 1; 2 * d <= n; ++d) {
    digits.assign(d, 0);
    const size_t count = [&] {
      size_t c = 1;
      for (int i = 0; i < d; ++i) c *= static_cast<size_t>(p);
      return c;
    }();
    for (size_t it = 0; it < count; ++it) {
      Poly g;
      g.c.assign(d + 1, 0);
      g.c[d] = 1;
      size_t v = it;
      for (int i = 0; i < d; ++i) {
        g.c[i] = static_cast<int64_t>(v % p);
        v /= p;
      }
      if (mod(f, g, p).is_zero()) return false;
    }
  }
  return true;
}

std::string to_string(const Poly& a, int64_t p, const std::string& symbol) {
  if (a.is_zero()) return "0";
  std::string s;
  for (int i = a.degree(); i >= 0; --i) {
    int64_t v = a.c[i];
    if (v == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(v);
    } else {
      if (v != 1) s += std::to_string(v);
      s += symbol;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  (void)p;
  return s;
}

}  // namespace gfpoly
}  // namespace kuelsh
