#pragma once

// The ring T^Delta(FG, FG) for G = D x| E: canonical basis, sparse elements
// over a scalar domain, the closed-form structure constants, the graded ideals
// T_{<=i}, quotients, centre and the regular trace form.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "tsring/groupmodel.hpp"
#include "tsring/matrix.hpp"
#include "tsring/scalar.hpp"

namespace tsring {

// [P_{lambda,mu}]
struct ProjPair {
  Character lambda = 0;
  Character mu = 0;
  auto operator<=>(const ProjPair&) const = default;
};

// [M_{i,alpha,lambda}], alpha the least representative of its coset in Aut(D_i)/pi_i(E).
struct NonProj {
  unsigned level = 1;
  std::uint64_t alpha = 1;
  Character lambda = 0;
  auto operator<=>(const NonProj&) const = default;
};

// Variant order puts every ProjPair before every NonProj.
using BasisElement = std::variant<ProjPair, NonProj>;

std::string to_string(const BasisElement& b);
// Vertex level: 0 for projectives, i for M(i,.,.).
unsigned vertex_level(const BasisElement& b);
bool is_projective(const BasisElement& b);

std::vector<BasisElement> basis(const ModelParams& params);

struct Term {
  std::size_t index = 0;
  std::int64_t coeff = 0;
  friend bool operator==(const Term&, const Term&) = default;
};

// Structure constants of one product, as (basis element, coefficient) pairs in canonical order.
using BasisCombination = std::vector<std::pair<BasisElement, std::int64_t>>;

// Closed-form product of two basis elements. ParamsMismatch if either element
// is not a canonical basis element for params.
BasisCombination mult_basis(const ModelParams& params, const BasisElement& a, const BasisElement& b);

class TRing {
 public:
  explicit TRing(ModelParams params);

  const ModelParams& params() const { return params_; }
  const std::vector<BasisElement>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  const BasisElement& element(std::size_t index) const { return basis_.at(index); }
  std::size_t index_of(const BasisElement& b) const;
  unsigned level(std::size_t index) const { return vertex_level(basis_.at(index)); }
  std::size_t identity_index() const { return identity_; }

  // Cached structure constants b_a * b_b.
  const std::vector<Term>& product(std::size_t a, std::size_t b) const { return table_[a * basis_.size() + b]; }

  // Indices spanning T_{<=i} (vertex order at most p^i) and T_i (exactly p^i). BadLevel unless 0 <= i <= n.
  std::vector<std::size_t> ideal_le(unsigned i) const;
  std::vector<std::size_t> level_basis(unsigned i) const;
  bool in_ideal_le(std::size_t index, unsigned i) const { return level(index) <= i; }

 private:
  ModelParams params_;
  std::vector<BasisElement> basis_;
  std::map<BasisElement, std::size_t> index_;
  std::vector<std::vector<Term>> table_;
  std::size_t identity_ = 0;
};

using RingPtr = std::shared_ptr<const TRing>;

RingPtr make_ring(const ModelParams& params);

template <class K>
typename K::value_type scalar_from_int(const K& k, std::int64_t v) {
  return k.from_integer(Integer(static_cast<long>(v)));
}

// A k-linear combination of basis elements; zero coefficients are never stored.
template <class K>
class RingElement {
 public:
  using value_type = typename K::value_type;

  RingElement(RingPtr ring, K k) : ring_(std::move(ring)), k_(std::move(k)) {}

  const RingPtr& ring() const { return ring_; }
  const TRing& tring() const { return *ring_; }
  const K& scalars() const { return k_; }
  const std::map<std::size_t, value_type>& coeffs() const { return coeffs_; }

  value_type coeff(std::size_t index) const {
    const auto it = coeffs_.find(index);
    return it == coeffs_.end() ? k_.zero() : it->second;
  }
  void add_term(std::size_t index, const value_type& v) {
    if (k_.is_zero(v)) return;
    auto it = coeffs_.find(index);
    if (it == coeffs_.end()) {
      coeffs_.emplace(index, v);
      return;
    }
    it->second = k_.add(it->second, v);
    if (k_.is_zero(it->second)) coeffs_.erase(it);
  }
  void set(std::size_t index, const value_type& v) {
    coeffs_.erase(index);
    add_term(index, v);
  }
  bool is_zero() const { return coeffs_.empty(); }

  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.ring_->params() == b.ring_->params() && a.k_ == b.k_ && a.coeffs_ == b.coeffs_;
  }

 private:
  RingPtr ring_;
  K k_;
  std::map<std::size_t, value_type> coeffs_;
};

template <class K>
RingElement<K> basis_element(const RingPtr& ring, const K& k, std::size_t index) {
  RingElement<K> x(ring, k);
  x.add_term(index, k.one());
  return x;
}

template <class K>
RingElement<K> ring_one(const RingPtr& ring, const K& k) {
  return basis_element(ring, k, ring->identity_index());
}

template <class K>
void check_compatible(const RingElement<K>& x, const RingElement<K>& y) {
  if (!(x.tring().params() == y.tring().params()))
    throw Error(ErrorCode::ParamsMismatch, x.tring().params().to_string() + " vs " + y.tring().params().to_string());
  if (!(x.scalars() == y.scalars()))
    throw Error(ErrorCode::ScalarMismatch, x.scalars().name() + " vs " + y.scalars().name());
}

template <class K>
RingElement<K> add(const RingElement<K>& x, const RingElement<K>& y) {
  check_compatible(x, y);
  RingElement<K> r = x;
  for (const auto& [i, v] : y.coeffs()) r.add_term(i, v);
  return r;
}

template <class K>
RingElement<K> scale(const typename K::value_type& s, const RingElement<K>& x) {
  RingElement<K> r(x.ring(), x.scalars());
  for (const auto& [i, v] : x.coeffs()) r.add_term(i, x.scalars().mul(s, v));
  return r;
}

template <class K>
RingElement<K> neg(const RingElement<K>& x) {
  return scale(x.scalars().neg(x.scalars().one()), x);
}

template <class K>
RingElement<K> sub(const RingElement<K>& x, const RingElement<K>& y) {
  return add(x, neg(y));
}

template <class K>
RingElement<K> mult(const RingElement<K>& x, const RingElement<K>& y) {
  check_compatible(x, y);
  const K& k = x.scalars();
  const TRing& ring = x.tring();
  std::map<std::size_t, typename K::value_type> acc;
  for (const auto& [a, va] : x.coeffs())
    for (const auto& [b, vb] : y.coeffs()) {
      const auto vab = k.mul(va, vb);
      for (const Term& t : ring.product(a, b)) {
        auto contrib = k.mul(vab, scalar_from_int(k, t.coeff));
        auto it = acc.find(t.index);
        if (it == acc.end())
          acc.emplace(t.index, std::move(contrib));
        else
          it->second = k.add(it->second, contrib);
      }
    }
  RingElement<K> r(x.ring(), k);
  for (const auto& [i, v] : acc) r.add_term(i, v);
  return r;
}

template <class K>
RingElement<K> commutator(const RingElement<K>& x, const RingElement<K>& y) {
  return sub(mult(x, y), mult(y, x));
}

// Image of an integral element in k (k is any domain).
template <class K>
RingElement<K> lift(const K& k, const RingElement<IntegerRing>& x) {
  RingElement<K> r(x.ring(), k);
  for (const auto& [i, v] : x.coeffs()) r.add_term(i, k.from_integer(v));
  return r;
}

template <class K>
std::vector<typename K::value_type> to_vector(const RingElement<K>& x) {
  std::vector<typename K::value_type> v(x.tring().dim(), x.scalars().zero());
  for (const auto& [i, c] : x.coeffs()) v[i] = c;
  return v;
}

template <class K>
RingElement<K> from_vector(const RingPtr& ring, const K& k, const std::vector<typename K::value_type>& v) {
  RingElement<K> r(ring, k);
  for (std::size_t i = 0; i < v.size(); ++i) r.add_term(i, v[i]);
  return r;
}

// True iff every coefficient of x sits on a basis element of T_{<=i}.
template <class K>
bool supported_in_ideal(const RingElement<K>& x, unsigned i) {
  for (const auto& [idx, v] : x.coeffs())
    if (!x.tring().in_ideal_le(idx, i)) return false;
  return true;
}

// Products of the T_{<=i} basis with the full basis, on both sides, stay in T_{<=i}.
bool verify_two_sided_ideal(const TRing& ring, unsigned i);

// Product in T / T_{<=i}: mult(x, y) with the T_{<=i} components removed.
// BadLevel unless 0 <= i <= n; BadInput if x or y has support inside T_{<=i}.
template <class K>
RingElement<K> quotient_mult(unsigned i, const RingElement<K>& x, const RingElement<K>& y) {
  if (i > x.tring().params().n()) throw Error(ErrorCode::BadLevel, "quotient level " + std::to_string(i));
  for (const auto* z : {&x, &y})
    for (const auto& [idx, v] : z->coeffs())
      if (z->tring().in_ideal_le(idx, i))
        throw Error(ErrorCode::BadInput, "quotient operand supported in T_{<=" + std::to_string(i) + "}");
  RingElement<K> full = mult(x, y);
  RingElement<K> r(full.ring(), full.scalars());
  for (const auto& [idx, v] : full.coeffs())
    if (!full.tring().in_ideal_le(idx, i)) r.add_term(idx, v);
  return r;
}

// Basis of the centre over the field k.
template <class K>
std::vector<RingElement<K>> center_basis(const RingPtr& ring, const K& k) {
  static_assert(K::is_field);
  const std::size_t n = ring->dim();
  // Row (b, t): coefficient of basis t in x*b - b*x, as a linear form in x.
  Matrix<typename K::value_type> sys(n * n, n, k.zero());
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t a = 0; a < n; ++a) {
      for (const Term& t : ring->product(a, b)) {
        auto& cell = sys(b * n + t.index, a);
        cell = k.add(cell, scalar_from_int(k, t.coeff));
      }
      for (const Term& t : ring->product(b, a)) {
        auto& cell = sys(b * n + t.index, a);
        cell = k.sub(cell, scalar_from_int(k, t.coeff));
      }
    }
  std::vector<RingElement<K>> out;
  for (const auto& v : nullspace(k, std::move(sys))) out.push_back(from_vector(ring, k, v));
  return out;
}

// t_k = trace of left multiplication by basis element k.
std::vector<Integer> regular_traces(const TRing& ring);

// Gram(a, b) = Tr(L_{ab}) over Z; reduce with map_matrix for a field.
IntMatrix trace_form_gram(const TRing& ring);

template <class K>
Matrix<typename K::value_type> trace_form_gram(const TRing& ring, const K& k) {
  return map_matrix(k, trace_form_gram(ring));
}

}  // namespace tsring
