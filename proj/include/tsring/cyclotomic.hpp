#pragma once

#include <cstdint>
#include <vector>

#include "tsring/scalar.hpp"

namespace tsring {

// Integer coefficients of the m-th cyclotomic polynomial, lowest degree first.
std::vector<Integer> cyclotomic_polynomial(std::uint64_t m);

// Q[x]/Phi_m(x); x is a primitive m-th root of unity.
class CyclotomicRing {
 public:
  using Element = std::vector<Rational>;  // length degree(), lowest first

  explicit CyclotomicRing(std::uint64_t m);

  std::uint64_t order() const { return m_; }
  std::size_t degree() const { return phi_.size() - 1; }
  const std::vector<Integer>& modulus() const { return phi_; }

  Element zero() const;
  Element one() const;
  Element from_rational(const Rational& r) const;
  // x^k for any integer k (negative exponents wrap modulo m).
  Element root_power(std::int64_t k) const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element mul(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;

  // sigma_a: x -> x^a. BadGaloisIndex unless gcd(a, m) = 1.
  Element galois(std::uint64_t a, const Element& x) const;
  // Sum of sigma_a(x) over all a in (Z/m)^x.
  Rational trace(const Element& x) const;

  bool is_rational(const Element& x) const;
  // Throws Violation if x is not in Q.
  Rational to_rational(const Element& x) const;

  // Reduce an arbitrary-degree rational polynomial modulo Phi_m.
  Element reduce(std::vector<Rational> poly) const;

 private:
  std::uint64_t m_;
  std::vector<Integer> phi_;
};

}  // namespace tsring
