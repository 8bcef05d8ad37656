#pragma once

// Twisted matrix rings Mat_l(R)_c (product a . c . b), the Cartan-matrix model
// of Pr(B,B), and the idempotent constructions built on the Smith normal form.

#include <optional>
#include <vector>

#include "tsring/matrix.hpp"
#include "tsring/snf.hpp"
#include "tsring/tring.hpp"

namespace tsring {

template <class K>
class TwistedMatRing {
 public:
  using value_type = typename K::value_type;
  using Mat = Matrix<value_type>;

  TwistedMatRing(K k, Mat c) : k_(std::move(k)), c_(std::move(c)) {
    if (!c_.square()) throw Error(ErrorCode::ShapeMismatch, "twist must be square");
  }

  const K& scalars() const { return k_; }
  const Mat& twist() const { return c_; }
  std::size_t size() const { return c_.rows(); }

  Mat mult(const Mat& a, const Mat& b) const {
    if (a.rows() != size() || a.cols() != size() || b.rows() != size() || b.cols() != size())
      throw Error(ErrorCode::ShapeMismatch, "operand size differs from twist size");
    return multiply(k_, multiply(k_, a, c_), b);
  }

  Mat unit_matrix(std::size_t i, std::size_t j) const {
    Mat m(size(), size(), k_.zero());
    m(i, j) = k_.one();
    return m;
  }

 private:
  K k_;
  Mat c_;
};

template <class K>
Matrix<typename K::value_type> twisted_mult(const TwistedMatRing<K>& ring, const Matrix<typename K::value_type>& a,
                                            const Matrix<typename K::value_type>& b) {
  return ring.mult(a, b);
}

namespace detail {

template <class K>
Matrix<typename K::value_type> checked_inverse(const K& k, const Matrix<typename K::value_type>& a) {
  if constexpr (K::is_field) {
    try {
      return inverse(k, a);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotInvertible) throw Error(ErrorCode::NotUnit, "matrix is not invertible");
      throw;
    }
  } else {
    return unimodular_inverse(a);
  }
}

}  // namespace detail

// r -> v r u from R_c to R_d where c = u d v.
template <class K>
class RcIso {
 public:
  using Mat = Matrix<typename K::value_type>;

  // NotUnit if u or v is not invertible over K.
  RcIso(K k, Mat c, Mat u, Mat v)
      : k_(std::move(k)), c_(std::move(c)), u_(std::move(u)), v_(std::move(v)) {
    u_inv_ = detail::checked_inverse(k_, u_);
    v_inv_ = detail::checked_inverse(k_, v_);
    d_ = multiply(k_, multiply(k_, u_inv_, c_), v_inv_);
  }

  const Mat& source_twist() const { return c_; }
  const Mat& target_twist() const { return d_; }

  Mat apply(const Mat& r) const { return multiply(k_, multiply(k_, v_, r), u_); }
  Mat unapply(const Mat& s) const { return multiply(k_, multiply(k_, v_inv_, s), u_inv_); }

  // f(a ._c b) = f(a) ._d f(b) and f^{-1}(f(a)) = a for every pair of samples.
  bool verify(const std::vector<Mat>& samples) const {
    TwistedMatRing<K> src(k_, c_), dst(k_, d_);
    for (const auto& a : samples) {
      if (unapply(apply(a)) != a) return false;
      for (const auto& b : samples)
        if (apply(src.mult(a, b)) != dst.mult(apply(a), apply(b))) return false;
    }
    return true;
  }

 private:
  K k_;
  Mat c_, u_, v_, u_inv_, v_inv_, d_;
};

template <class K>
RcIso<K> rc_iso(const K& k, const Matrix<typename K::value_type>& c, const Matrix<typename K::value_type>& u,
                const Matrix<typename K::value_type>& v) {
  return RcIso<K>(k, c, u, v);
}

// All unit matrices E_ij of size l over K.
template <class K>
std::vector<Matrix<typename K::value_type>> unit_matrices(const K& k, std::size_t l) {
  std::vector<Matrix<typename K::value_type>> out;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      Matrix<typename K::value_type> m(l, l, k.zero());
      m(i, j) = k.one();
      out.push_back(std::move(m));
    }
  return out;
}

// C = I + m J of size e with m = (p^n - 1)/e.
IntMatrix cartan_matrix(const ModelParams& params);

struct IdempotentCertificate {
  IntMatrix element;  // coordinates on the [P_ab]
  bool idempotent = false;
  std::vector<std::size_t> orthogonal_to;  // positions in the family annihilated on both sides
  std::optional<bool> rank_one_corner;     // rank of {x ._C E_ab ._C x} is 1
};

// Certifies a family of elements of Mat_l(Z)_C against each other.
std::vector<IdempotentCertificate> certify_idempotents(const IntMatrix& c, const std::vector<IntMatrix>& family);

// True iff every member is idempotent, orthogonal to all others and has a rank-one corner.
bool certificates_pass(const std::vector<IdempotentCertificate>& certs);

struct TheoremAResult {
  SnfResult snf;
  std::size_t r = 0;  // multiplicity of the elementary divisor 1
  std::vector<IdempotentCertificate> idempotents;
  bool snf_verified = false;
  bool images_are_units = false;  // rc_iso images are exactly the E_ii with d_i = 1
};

// e~_i = V E_ii U for each i with d_i = 1, where D = U C V is the Smith form.
TheoremAResult theorem_a_idempotents(const IntMatrix& c);

// eps_i = [P_ii] - [P_li], i < l.
std::vector<IntMatrix> example_epsilons(std::size_t l);

// Rank of c over F_q.
std::size_t rank_mod(const IntMatrix& c, std::uint64_t q);

// C^{-1} has integer entries (the identity of Pr lies in Pr itself).
bool pr_identity_integral(const IntMatrix& c);

template <class K>
Matrix<typename K::value_type> pr_identity_over_k(const IntMatrix& c, const K& k) {
  return inverse(k, map_matrix(k, c));
}

// eps_i = sum_j c'_ij [P_ij], the rows of C^{-1}.
template <class K>
std::vector<Matrix<typename K::value_type>> pr_primitive_decomposition_over_k(const IntMatrix& c, const K& k) {
  const auto inv = pr_identity_over_k(c, k);
  std::vector<Matrix<typename K::value_type>> out;
  for (std::size_t i = 0; i < inv.rows(); ++i) {
    Matrix<typename K::value_type> row(inv.rows(), inv.cols(), k.zero());
    for (std::size_t j = 0; j < inv.cols(); ++j) row(i, j) = inv(i, j);
    out.push_back(std::move(row));
  }
  return out;
}

// [P_{lambda,mu}] <-> E_{lambda,mu}.
template <class K>
RingElement<K> pr_element(const RingPtr& ring, const K& k, const Matrix<typename K::value_type>& x) {
  RingElement<K> out(ring, k);
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      out.add_term(ring->index_of(ProjPair{static_cast<Character>(i), static_cast<Character>(j)}), x(i, j));
  return out;
}

// Inverse of pr_element; BadInput if x has support outside Pr.
template <class K>
Matrix<typename K::value_type> pr_matrix(const RingElement<K>& x) {
  const std::size_t l = x.tring().params().e();
  Matrix<typename K::value_type> m(l, l, x.scalars().zero());
  for (const auto& [idx, v] : x.coeffs()) {
    const auto* pp = std::get_if<ProjPair>(&x.tring().element(idx));
    if (!pp) throw Error(ErrorCode::BadInput, "element is not supported on projectives");
    m(pp->lambda, pp->mu) = v;
  }
  return m;
}

// The identity of kPr commutes with every basis element of kT.
template <class K>
bool centrality_check_pr_identity(const RingPtr& ring, const K& k) {
  const auto one_pr = pr_element(ring, k, pr_identity_over_k(cartan_matrix(ring->params()), k));
  for (std::size_t b = 0; b < ring->dim(); ++b) {
    const auto x = basis_element(ring, k, b);
    if (mult(one_pr, x) != mult(x, one_pr)) return false;
  }
  return true;
}

}  // namespace tsring
