#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kuelsh {

// Dense polynomial over GF(p), coefficients in [0,p), no trailing zeros.
// The zero polynomial is the empty vector. All functions take p explicitly.
struct Poly {
  std::vector<int64_t> c;

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  int64_t lead() const { return c.empty() ? 0 : c.back(); }
  bool operator==(const Poly&) const = default;
};

namespace gfp {

// residue arithmetic mod a prime p
int64_t norm(int64_t a, int64_t p);
int64_t add(int64_t a, int64_t b, int64_t p);
int64_t sub(int64_t a, int64_t b, int64_t p);
int64_t mul(int64_t a, int64_t b, int64_t p);
int64_t inv(int64_t a, int64_t p);
int64_t pow(int64_t a, uint64_t e, int64_t p);
bool is_prime(int64_t p);

}  // namespace gfp

namespace gfpoly {

// Degree guard: results beyond this degree abort with Errc::DegreeBound.
inline constexpr int kMaxDegree = 512;

Poly zero();
Poly one();
Poly constant(int64_t v, int64_t p);
Poly monomial(int64_t coeff, int deg, int64_t p);
Poly trim(Poly a);

Poly add(const Poly& a, const Poly& b, int64_t p);
Poly sub(const Poly& a, const Poly& b, int64_t p);
Poly neg(const Poly& a, int64_t p);
Poly mul(const Poly& a, const Poly& b, int64_t p);
Poly scale(const Poly& a, int64_t s, int64_t p);
// quotient and remainder; b must be nonzero
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, int64_t p);
Poly mod(const Poly& a, const Poly& b, int64_t p);
Poly gcd(Poly a, Poly b, int64_t p);  // monic
Poly monic(const Poly& a, int64_t p);
Poly pow_mod(const Poly& a, uint64_t e, const Poly& modulus, int64_t p);
// extended euclid: g = gcd, and u with u*a = g (mod modulus); used for inverses
Poly inv_mod(const Poly& a, const Poly& modulus, int64_t p);

// exact q-th root where q = p^n, if it exists (all exponents divisible by q;
// GF(p) coefficients are their own q-th roots)
bool qth_root(const Poly& a, uint64_t q, int64_t p, Poly& out);

bool is_irreducible(const Poly& f, int64_t p);

std::string to_string(const Poly& a, int64_t p, const std::string& symbol);

}  // namespace gfpoly
}  // namespace kuelsh
