#include "tsring/matrix.hpp"

namespace tsring {

IntMatrix int_matrix(const std::vector<std::vector<long>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  IntMatrix m(r, c, Integer(0));
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(ErrorCode::ShapeMismatch, "ragged matrix literal");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  return multiply(IntegerRing{}, a, b);
}

Integer determinant(const IntMatrix& input) {
  if (!input.square()) throw Error(ErrorCode::ShapeMismatch, "determinant of non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix a = input;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && sgn(a(piv, k)) == 0) ++piv;
      if (piv == n) return 0;
      a.swap_rows(k, piv);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return Integer(sign * a(n - 1, n - 1));
}

std::size_t rational_rank(const IntMatrix& a) {
  return rank(RationalField{}, map_matrix(RationalField{}, a));
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  const Integer det = determinant(a);
  if (abs(det) != 1) throw Error(ErrorCode::NotUnit, "determinant " + det.get_str() + " is not a unit in Z");
  const RationalField q;
  const auto inv = inverse(q, map_matrix(q, a));
  IntMatrix out(a.rows(), a.cols(), Integer(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = IntegerRing{}.from_rational(inv(i, j));
  return out;
}

}  // namespace tsring
