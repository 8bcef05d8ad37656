#pragma once

// Exact scalar domains. Each domain is a small value object that knows how to
// do arithmetic on its value_type; algorithms are templated on the domain.

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "tsring/error.hpp"

namespace tsring {

using Integer = mpz_class;
using Rational = mpq_class;

bool is_prime(std::uint64_t n) noexcept;

// The ring Z. Not a field: no inv().
class IntegerRing {
 public:
  using value_type = Integer;
  static constexpr bool is_field = false;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_integer(const Integer& v) const { return v; }
  value_type from_rational(const Rational& v) const;
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  std::uint64_t characteristic() const { return 0; }
  std::string name() const { return "Z"; }
  std::string format(const value_type& a) const { return a.get_str(); }

  friend bool operator==(const IntegerRing&, const IntegerRing&) { return true; }
};

// The field Q. Values are kept canonical (reduced, positive denominator).
class RationalField {
 public:
  using value_type = Rational;
  static constexpr bool is_field = true;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_integer(const Integer& v) const { return Rational(v); }
  value_type from_rational(const Rational& v) const {
    Rational r(v);
    r.canonicalize();
    return r;
  }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const;
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  std::uint64_t characteristic() const { return 0; }
  std::string name() const { return "Q"; }
  // Always "num/den", also for integral values.
  std::string format(const value_type& a) const;

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

// The prime field F_q with representatives in [0, q).
class PrimeField {
 public:
  using value_type = std::uint64_t;
  static constexpr bool is_field = true;

  explicit PrimeField(std::uint64_t q);

  std::uint64_t modulus() const { return q_; }
  value_type zero() const { return 0; }
  value_type one() const { return 1 % q_; }
  value_type from_integer(const Integer& v) const;
  value_type from_int(std::int64_t v) const;
  value_type from_rational(const Rational& v) const;
  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + q_ - b; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((static_cast<unsigned __int128>(a) * b) % q_);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : q_ - a; }
  value_type inv(value_type a) const;
  value_type pow(value_type a, std::uint64_t k) const;
  bool is_zero(value_type a) const { return a == 0; }
  std::uint64_t characteristic() const { return q_; }
  std::string name() const { return "F" + std::to_string(q_); }
  std::string format(value_type a) const { return std::to_string(a); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.q_ == b.q_; }

 private:
  std::uint64_t q_;
};

// A field given on the command line: "Q" or "F<q>" with q prime.
struct FieldSpec {
  std::uint64_t characteristic = 0;  // 0 means Q

  static FieldSpec parse(const std::string& text);
  std::string name() const;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

}  // namespace tsring
