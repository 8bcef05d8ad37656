#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "tsring/cyclotomic.hpp"
#include "tsring/matrix.hpp"
#include "tsring/snf.hpp"

using namespace tsring;

namespace {

// Elementary divisors from determinantal divisors: s_k = d_k / d_{k-1}, d_k = gcd of k x k minors.
std::vector<Integer> divisors_by_minors(const IntMatrix& a) {
  const std::size_t n = a.rows(), m = a.cols();
  std::vector<Integer> d{Integer(1)};
  for (std::size_t k = 1; k <= std::min(n, m); ++k) {
    Integer g = 0;
    std::vector<bool> rsel(n, false), csel(m, false);
    std::fill(rsel.begin(), rsel.begin() + k, true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + k, true);
      do {
        IntMatrix minor(k, k, Integer(0));
        std::size_t ri = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (!rsel[i]) continue;
          std::size_t ci = 0;
          for (std::size_t j = 0; j < m; ++j)
            if (csel[j]) minor(ri, ci++) = a(i, j);
          ++ri;
        }
        Integer det = determinant(minor);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    d.push_back(g);
  }
  std::vector<Integer> s;
  for (std::size_t k = 1; k < d.size(); ++k) s.push_back(sgn(d[k - 1]) == 0 ? Integer(0) : Integer(d[k] / d[k - 1]));
  return s;
}

IntMatrix random_spd(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> dist(-4, 4);
  IntMatrix b(n, n, Integer(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = dist(rng);
  IntMatrix c = multiply(transpose(b), b);
  for (std::size_t i = 0; i < n; ++i) c(i, i) += 1;
  return c;
}

}  // namespace

TEST_CASE("integer and rational domains") {
  IntegerRing z;
  CHECK(z.from_rational(Rational(6, 3)) == 2);
  CHECK_THROWS_AS(z.from_rational(Rational(1, 3)), Error);
  RationalField q;
  CHECK(q.format(Rational(2)) == "2/1");
  CHECK(q.format(q.from_rational(Rational(-4, 6))) == "-2/3");
  CHECK(q.mul(q.inv(Rational(3, 7)), Rational(3, 7)) == 1);
}

TEST_CASE("prime field arithmetic") {
  PrimeField f(7);
  CHECK(f.from_int(-1) == 6);
  CHECK(f.mul(f.inv(3), 3) == 1);
  CHECK(f.from_rational(Rational(1, 3)) == 5);
  CHECK(f.pow(3, 6) == 1);
  try {
    f.from_rational(Rational(1, 14));
    FAIL("expected NotInvertible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInvertible);
  }
  CHECK_THROWS(PrimeField(9));
}

TEST_CASE("field specs") {
  CHECK(FieldSpec::parse("Q").characteristic == 0);
  CHECK(FieldSpec::parse("F13").characteristic == 13);
  CHECK(FieldSpec::parse("F5").name() == "F5");
  try {
    FieldSpec::parse("F9");
    FAIL("F9 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPrime);
  }
  CHECK_THROWS(FieldSpec::parse("R"));
}

TEST_CASE("determinant, rank and inverse") {
  const IntMatrix a = int_matrix({{5, 4}, {4, 5}});
  CHECK(determinant(a) == 9);
  const RationalField q;
  const auto inv = inverse(q, map_matrix(q, a));
  CHECK(inv(0, 0) == Rational(5, 9));
  CHECK(inv(0, 1) == Rational(-4, 9));
  CHECK(rank(PrimeField(3), map_matrix(PrimeField(3), a)) == 1);
  CHECK_THROWS_AS(inverse(PrimeField(3), map_matrix(PrimeField(3), a)), Error);
  CHECK(unimodular_inverse(int_matrix({{2, 1}, {1, 1}})) == int_matrix({{1, -1}, {-1, 2}}));
  CHECK_THROWS_AS(unimodular_inverse(a), Error);

  const IntMatrix sing = int_matrix({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(determinant(sing) == 0);
  CHECK(rational_rank(sing) == 2);
  const auto ker = nullspace(q, map_matrix(q, sing));
  REQUIRE(ker.size() == 1);
  const Matrix<Rational> col(3, 1, ker[0]);
  CHECK(is_zero_matrix(q, multiply(q, map_matrix(q, sing), col)));
}

TEST_CASE("Bareiss determinant agrees with field elimination") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> dist(-9, 9);
  const RationalField q;
  for (int t = 0; t < 30; ++t) {
    IntMatrix a(4, 4, Integer(0));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) a(i, j) = dist(rng);
    CHECK(Rational(determinant(a)) == determinant(q, map_matrix(q, a)));
  }
}

TEST_CASE("Smith form of the cyclic-block Cartan matrices") {
  for (long m : {1L, 2L, 4L, 8L}) {
    for (std::size_t l : {1U, 2U, 3U, 4U}) {
      IntMatrix c(l, l, Integer(m));
      for (std::size_t i = 0; i < l; ++i) c(i, i) += 1;
      const auto r = snf(c);
      CHECK(verify_snf(c, r));
      const auto diag = r.diagonal();
      for (std::size_t i = 0; i + 1 < l; ++i) CHECK(diag[i] == 1);
      CHECK(diag.back() == Integer(static_cast<long>(l) * m + 1));
    }
  }
  const auto r = snf(int_matrix({{3}}));
  CHECK(r.diagonal() == std::vector<Integer>{3});
}

TEST_CASE("Smith form matches determinantal divisors on random SPD matrices") {
  std::mt19937_64 rng(20240611);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = t % 2 == 0 ? 3 : 4;
    const IntMatrix c = random_spd(rng, n);
    const auto r = snf(c);
    REQUIRE(verify_snf(c, r));
    CHECK(r.diagonal() == divisors_by_minors(c));
  }
}

TEST_CASE("Smith form of rectangular and singular input") {
  const IntMatrix a = int_matrix({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  const auto r = snf(a);
  CHECK(verify_snf(a, r));
  CHECK(r.diagonal() == std::vector<Integer>{2, 6, 12});

  const IntMatrix b = int_matrix({{0, 0, 0}, {0, 4, 6}});
  const auto rb = snf(b);
  CHECK(verify_snf(b, rb));
  CHECK(rb.diagonal() == divisors_by_minors(b));
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<Integer>{-1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<Integer>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<Integer>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12).size() == 5);
  CHECK(cyclotomic_polynomial(42).size() == 13);
}

TEST_CASE("cyclotomic ring") {
  const CyclotomicRing c(12);
  CHECK(c.degree() == 4);
  const auto z = c.root_power(1);
  auto p = c.one();
  for (int i = 0; i < 12; ++i) p = c.mul(p, z);
  CHECK(p == c.one());
  CHECK(c.root_power(-1) == c.root_power(11));

  // sum of all 12th roots of unity is zero, of primitive ones is mu(12) = 0
  auto s = c.zero();
  for (int i = 0; i < 12; ++i) s = c.add(s, c.root_power(i));
  CHECK(c.to_rational(s) == 0);
  CHECK(c.trace(z) == 0);
  CHECK(c.trace(c.one()) == 4);
  CHECK(CyclotomicRing(5).trace(CyclotomicRing(5).root_power(1)) == -1);

  CHECK(c.galois(5, c.galois(5, z)) == z);
  CHECK_THROWS_AS(c.galois(4, z), Error);
  CHECK_FALSE(c.is_rational(z));
  CHECK_THROWS_AS(c.to_rational(z), Error);
}
