#include "tsring/snf.hpp"

#include <algorithm>
#include <optional>

namespace tsring {

namespace {

// Elementary operations applied simultaneously to the working matrix and to
// the accumulated transform (rows: u, columns: v).
struct Workspace {
  IntMatrix a;
  IntMatrix u;
  IntMatrix v;

  void swap_rows(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    u.swap_rows(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    v.swap_cols(i, j);
  }
  // row_dst -= q * row_src
  void row_axpy(std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t j = 0; j < a.cols(); ++j) a(dst, j) -= q * a(src, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u(dst, j) -= q * u(src, j);
  }
  // col_dst -= q * col_src
  void col_axpy(std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, dst) -= q * a(i, src);
    for (std::size_t i = 0; i < v.rows(); ++i) v(i, dst) -= q * v(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = -a(i, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u(i, j) = -u(i, j);
  }
};

// Quotient rounded toward the nearest integer, so remainders stay small.
Integer nearest_quotient(const Integer& num, const Integer& den) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  Integer r = num - q * den;
  // floor division leaves r with the sign of den; stepping q by one flips it
  if (2 * abs(r) > abs(den)) q += 1;
  return q;
}

std::optional<std::pair<std::size_t, std::size_t>> min_pivot(const IntMatrix& a, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      Integer v = abs(a(i, j));
      if (!best || v < best_abs) {
        best = {i, j};
        best_abs = v;
      }
    }
  return best;
}

}  // namespace

std::vector<Integer> SnfResult::diagonal() const {
  std::vector<Integer> diag;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) diag.push_back(d(i, i));
  return diag;
}

SnfResult snf(const IntMatrix& c) {
  Workspace w{c, identity_matrix(IntegerRing{}, c.rows()), identity_matrix(IntegerRing{}, c.cols())};
  const std::size_t steps = std::min(c.rows(), c.cols());
  for (std::size_t t = 0; t < steps; ++t) {
    while (true) {
      const auto pivot = min_pivot(w.a, t);
      if (!pivot) break;
      w.swap_rows(t, pivot->first);
      w.swap_cols(t, pivot->second);
      const Integer p = w.a(t, t);

      bool clean = true;
      for (std::size_t i = t + 1; i < w.a.rows(); ++i) {
        if (sgn(w.a(i, t)) == 0) continue;
        w.row_axpy(i, t, nearest_quotient(w.a(i, t), p));
        if (sgn(w.a(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < w.a.cols(); ++j) {
        if (sgn(w.a(t, j)) == 0) continue;
        w.col_axpy(j, t, nearest_quotient(w.a(t, j), p));
        if (sgn(w.a(t, j)) != 0) clean = false;
      }
      if (!clean) continue;  // a smaller remainder exists; pick it as the next pivot

      // Pivot row and column are clear. Enforce divisibility of the rest.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < w.a.rows() && !offender; ++i)
        for (std::size_t j = t + 1; j < w.a.cols(); ++j)
          if (!mpz_divisible_p(w.a(i, j).get_mpz_t(), p.get_mpz_t())) {
            offender = i;
            break;
          }
      if (!offender) break;
      w.row_axpy(t, *offender, Integer(-1));  // row_t += row_offender
    }
    if (sgn(w.a(t, t)) < 0) w.negate_row(t);
  }
  return SnfResult{std::move(w.a), std::move(w.u), std::move(w.v)};
}

bool verify_snf(const IntMatrix& c, const SnfResult& r) {
  if (!r.u.square() || !r.v.square() || r.u.rows() != c.rows() || r.v.rows() != c.cols()) return false;
  if (multiply(multiply(r.u, c), r.v) != r.d) return false;
  if (abs(determinant(r.u)) != 1 || abs(determinant(r.v)) != 1) return false;
  for (std::size_t i = 0; i < r.d.rows(); ++i)
    for (std::size_t j = 0; j < r.d.cols(); ++j)
      if (i != j && sgn(r.d(i, j)) != 0) return false;
  const auto diag = r.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (sgn(diag[i]) < 0) return false;
    if (i + 1 < diag.size()) {
      if (sgn(diag[i]) == 0) {
        if (sgn(diag[i + 1]) != 0) return false;  // zeros must trail
      } else if (!mpz_divisible_p(diag[i + 1].get_mpz_t(), diag[i].get_mpz_t())) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace tsring
