#include "tsring/scalar.hpp"

#include <string>

namespace tsring {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::BadOrder: return "BadOrder";
    case ErrorCode::TwoBlocked: return "TwoBlocked";
    case ErrorCode::BadLevel: return "BadLevel";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::BadGaloisIndex: return "BadGaloisIndex";
    case ErrorCode::ParamsMismatch: return "ParamsMismatch";
    case ErrorCode::ScalarMismatch: return "ScalarMismatch";
    case ErrorCode::CharacterIllDefined: return "CharacterIllDefined";
    case ErrorCode::UnrecognizedShape: return "UnrecognizedShape";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::CharIsP: return "CharIsP";
    case ErrorCode::ScanTooLarge: return "ScanTooLarge";
    case ErrorCode::Violation: return "Violation";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

IntegerRing::value_type IntegerRing::from_rational(const Rational& v) const {
  Rational r(v);
  r.canonicalize();
  if (r.get_den() != 1) throw Error(ErrorCode::ScalarMismatch, "non-integral rational " + r.get_str());
  return r.get_num();
}

RationalField::value_type RationalField::inv(const value_type& a) const {
  if (sgn(a) == 0) throw Error(ErrorCode::NotInvertible, "division by zero in Q");
  Rational r = 1 / a;
  r.canonicalize();
  return r;
}

std::string RationalField::format(const value_type& a) const {
  return a.get_num().get_str() + "/" + a.get_den().get_str();
}

PrimeField::PrimeField(std::uint64_t q) : q_(q) {
  if (!is_prime(q)) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not prime");
  if (q >= (std::uint64_t{1} << 62)) throw Error(ErrorCode::BadInput, "prime too large");
}

PrimeField::value_type PrimeField::from_integer(const Integer& v) const {
  mpz_class r;
  mpz_class mod(static_cast<unsigned long>(q_));
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
  return r.get_ui();
}

PrimeField::value_type PrimeField::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(q_);
  if (r < 0) r += static_cast<std::int64_t>(q_);
  return static_cast<value_type>(r);
}

PrimeField::value_type PrimeField::from_rational(const Rational& v) const {
  const auto den = from_integer(v.get_den());
  if (den == 0)
    throw Error(ErrorCode::NotInvertible, "denominator of " + v.get_str() + " vanishes in " + name());
  return mul(from_integer(v.get_num()), inv(den));
}

PrimeField::value_type PrimeField::pow(value_type a, std::uint64_t k) const {
  value_type result = one();
  while (k > 0) {
    if (k & 1) result = mul(result, a);
    a = mul(a, a);
    k >>= 1;
  }
  return result;
}

PrimeField::value_type PrimeField::inv(value_type a) const {
  if (a % q_ == 0) throw Error(ErrorCode::NotInvertible, "division by zero in " + name());
  return pow(a, q_ - 2);
}

FieldSpec FieldSpec::parse(const std::string& text) {
  if (text == "Q" || text == "0") return FieldSpec{0};
  std::string digits = text;
  if (!digits.empty() && (digits[0] == 'F' || digits[0] == 'f')) digits = digits.substr(1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw Error(ErrorCode::BadInput, "field must be Q or F<q>, got '" + text + "'");
  const auto q = std::stoull(digits);
  if (!is_prime(q)) throw Error(ErrorCode::NotPrime, "field characteristic " + digits + " is not prime");
  return FieldSpec{q};
}

std::string FieldSpec::name() const {
  return characteristic == 0 ? std::string("Q") : "F" + std::to_string(characteristic);
}

}  // namespace tsring
