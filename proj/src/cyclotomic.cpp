#include "tsring/cyclotomic.hpp"

#include <numeric>

namespace tsring {

namespace {

// Exact division of integer polynomials (lowest degree first); divisor monic.
std::vector<Integer> poly_divide(std::vector<Integer> num, const std::vector<Integer>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<Integer> quot(num.size() - dn, Integer(0));
  for (std::size_t k = num.size(); k-- > dn;) {
    const Integer coef = num[k];
    quot[k - dn] = coef;
    for (std::size_t j = 0; j <= dn; ++j) num[k - dn + j] -= coef * den[j];
  }
  for (std::size_t j = 0; j < dn; ++j)
    if (sgn(num[j]) != 0) throw Error(ErrorCode::Violation, "inexact cyclotomic division");
  return quot;
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(std::uint64_t m) {
  if (m == 0) throw Error(ErrorCode::BadInput, "cyclotomic order must be positive");
  std::vector<Integer> poly(m + 1, Integer(0));
  poly[0] = -1;
  poly[m] = 1;
  for (std::uint64_t d = 1; d < m; ++d)
    if (m % d == 0) poly = poly_divide(poly, cyclotomic_polynomial(d));
  return poly;
}

CyclotomicRing::CyclotomicRing(std::uint64_t m) : m_(m), phi_(cyclotomic_polynomial(m)) {}

CyclotomicRing::Element CyclotomicRing::zero() const { return Element(degree(), Rational(0)); }

CyclotomicRing::Element CyclotomicRing::one() const { return from_rational(1); }

CyclotomicRing::Element CyclotomicRing::from_rational(const Rational& r) const {
  Element e = zero();
  e[0] = r;
  return e;
}

CyclotomicRing::Element CyclotomicRing::root_power(std::int64_t k) const {
  const auto m = static_cast<std::int64_t>(m_);
  const auto exp = static_cast<std::size_t>(((k % m) + m) % m);
  std::vector<Rational> poly(exp + 1, Rational(0));
  poly[exp] = 1;
  return reduce(std::move(poly));
}

CyclotomicRing::Element CyclotomicRing::reduce(std::vector<Rational> poly) const {
  const std::size_t deg = degree();
  for (std::size_t k = poly.size(); k-- > deg;) {
    if (sgn(poly[k]) == 0) continue;
    const Rational coef = poly[k];
    // x^deg = -(phi_0 + ... + phi_{deg-1} x^{deg-1})
    for (std::size_t j = 0; j <= deg; ++j) poly[k - deg + j] -= coef * phi_[j];
  }
  poly.resize(deg, Rational(0));
  return poly;
}

CyclotomicRing::Element CyclotomicRing::add(const Element& a, const Element& b) const {
  Element r(degree());
  for (std::size_t i = 0; i < degree(); ++i) r[i] = a[i] + b[i];
  return r;
}

CyclotomicRing::Element CyclotomicRing::sub(const Element& a, const Element& b) const {
  Element r(degree());
  for (std::size_t i = 0; i < degree(); ++i) r[i] = a[i] - b[i];
  return r;
}

CyclotomicRing::Element CyclotomicRing::neg(const Element& a) const {
  Element r(degree());
  for (std::size_t i = 0; i < degree(); ++i) r[i] = -a[i];
  return r;
}

CyclotomicRing::Element CyclotomicRing::mul(const Element& a, const Element& b) const {
  std::vector<Rational> poly(2 * degree(), Rational(0));
  for (std::size_t i = 0; i < degree(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < degree(); ++j) poly[i + j] += a[i] * b[j];
  }
  return reduce(std::move(poly));
}

CyclotomicRing::Element CyclotomicRing::galois(std::uint64_t a, const Element& x) const {
  if (std::gcd(a, m_) != 1)
    throw Error(ErrorCode::BadGaloisIndex, "gcd(" + std::to_string(a) + ", " + std::to_string(m_) + ") != 1");
  Element r = zero();
  for (std::size_t i = 0; i < degree(); ++i) {
    if (sgn(x[i]) == 0) continue;
    const auto term = root_power(static_cast<std::int64_t>((a % m_) * i % m_));
    for (std::size_t j = 0; j < degree(); ++j) r[j] += x[i] * term[j];
  }
  return r;
}

Rational CyclotomicRing::trace(const Element& x) const {
  Element sum = zero();
  for (std::uint64_t a = 1; a <= m_; ++a)
    if (std::gcd(a, m_) == 1) sum = add(sum, galois(a % m_ == 0 ? m_ : a, x));
  return to_rational(sum);
}

bool CyclotomicRing::is_rational(const Element& x) const {
  for (std::size_t i = 1; i < x.size(); ++i)
    if (sgn(x[i]) != 0) return false;
  return true;
}

Rational CyclotomicRing::to_rational(const Element& x) const {
  if (!is_rational(x)) throw Error(ErrorCode::Violation, "cyclotomic element is not rational");
  return x.empty() ? Rational(0) : x[0];
}

}  // namespace tsring
