#pragma once

// The chain idempotents e_0, ..., e_n, the central decomposition by
// f_i = e_i - e_{i-1}, block isomorphisms onto Mat_e(k) and k[Gamma_i], the
// integral central-idempotent scan over Q and the semisimplicity decision.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsring/cartan.hpp"
#include "tsring/tring.hpp"

namespace tsring {

// Gamma_i = Aut(D_i)/pi_i(E) x Hom(E, F^x). Element j corresponds to the j-th
// basis element of T_i: (coset rep, character) in lexicographic order.
class GammaGroup {
 public:
  GammaGroup(const ModelParams& params, unsigned i);

  unsigned level() const { return level_; }
  std::size_t order() const { return elements_.size(); }
  const std::pair<std::uint64_t, Character>& element(std::size_t j) const { return elements_.at(j); }
  std::size_t index(std::uint64_t coset_rep, Character lambda) const;
  std::size_t identity() const { return 0; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * order() + b]; }
  std::size_t inv(std::size_t a) const;
  std::size_t element_order(std::size_t a) const;
  std::uint64_t exponent() const;

 private:
  ModelParams params_;
  unsigned level_;
  std::vector<std::pair<std::uint64_t, Character>> elements_;
  std::vector<std::size_t> table_;
};

// Characters of an abelian group as exponent vectors: chi(g) = zeta_M^{values[g]}, M = exponent().
std::vector<std::vector<std::uint64_t>> group_characters(const GammaGroup& g);

// Dense element of k[Gamma].
template <class K>
using GroupAlgebraElement = std::vector<typename K::value_type>;

template <class K>
GroupAlgebraElement<K> ga_unit(const GammaGroup& g, const K& k, std::size_t j) {
  GroupAlgebraElement<K> x(g.order(), k.zero());
  x[j] = k.one();
  return x;
}

template <class K>
GroupAlgebraElement<K> ga_mult(const GammaGroup& g, const K& k, const GroupAlgebraElement<K>& a,
                               const GroupAlgebraElement<K>& b) {
  GroupAlgebraElement<K> out(g.order(), k.zero());
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (k.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < g.order(); ++j) {
      if (k.is_zero(b[j])) continue;
      auto& cell = out[g.mul(i, j)];
      cell = k.add(cell, k.mul(a[i], b[j]));
    }
  }
  return out;
}

// Sum over the subgroup {(1, lambda)} of Gamma_i.
template <class K>
GroupAlgebraElement<K> ga_character_sum(const GammaGroup& g, const K& k, const ModelParams& params) {
  GroupAlgebraElement<K> x(g.order(), k.zero());
  for (Character l = 0; l < params.e(); ++l) x[g.index(1, l)] = k.one();
  return x;
}

namespace detail {

template <class K>
void require_char_not_p(const ModelParams& params, const K& k) {
  if (k.characteristic() == params.p())
    throw Error(ErrorCode::CharIsP, "characteristic " + std::to_string(params.p()) + " divides |D|");
}

inline void violation(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::Violation, what);
}

template <class K>
typename K::value_type ratio(const K& k, std::int64_t num, std::uint64_t den) {
  return k.from_rational(Rational(Integer(static_cast<long>(num)), Integer(static_cast<unsigned long>(den))));
}

}  // namespace detail

// c_i = (1,0) + m_i sum_lambda (1,lambda) and its inverse d_i = (1,0) - m_i p^{-(n-i)} sum_lambda (1,lambda).
template <class K>
GroupAlgebraElement<K> twist_unit(const GammaGroup& g, const K& k, const ModelParams& params) {
  auto c = ga_character_sum(g, k, params);
  const auto mi = scalar_from_int(k, static_cast<std::int64_t>(params.m_level(g.level())));
  for (auto& v : c) v = k.mul(v, mi);
  c[g.identity()] = k.add(c[g.identity()], k.one());
  return c;
}

template <class K>
GroupAlgebraElement<K> twist_unit_inverse(const GammaGroup& g, const K& k, const ModelParams& params) {
  detail::require_char_not_p(params, k);
  auto d = ga_character_sum(g, k, params);
  const auto coef = detail::ratio(k, -static_cast<std::int64_t>(params.m_level(g.level())),
                                  params.p_pow(params.n() - g.level()));
  for (auto& v : d) v = k.mul(v, coef);
  d[g.identity()] = k.add(d[g.identity()], k.one());
  return d;
}

// e_0 = sum_l P(l,l) - (m/p^n) sum P(l,m); e_i = M(i,1,0) + m'_i sum_l M(i,1,l), m'_i = -m_i/p^{n-i}.
template <class K>
RingElement<K> chain_idempotent(const RingPtr& ring, const K& k, unsigned i) {
  const auto& params = ring->params();
  if (i > params.n()) throw Error(ErrorCode::BadLevel, "chain level " + std::to_string(i));
  detail::require_char_not_p(params, k);
  RingElement<K> out(ring, k);
  const auto e = params.e();
  if (i == 0) {
    const auto coef = detail::ratio(k, -static_cast<std::int64_t>(params.m()), params.order_d());
    for (Character l = 0; l < e; ++l)
      for (Character m = 0; m < e; ++m) {
        const auto idx = ring->index_of(ProjPair{l, m});
        out.add_term(idx, coef);
        if (l == m) out.add_term(idx, k.one());
      }
    return out;
  }
  const auto coef =
      detail::ratio(k, -static_cast<std::int64_t>(params.m_level(i)), params.p_pow(params.n() - i));
  for (Character l = 0; l < e; ++l) {
    const auto idx = ring->index_of(NonProj{i, 1, l});
    out.add_term(idx, coef);
    if (l == 0) out.add_term(idx, k.one());
  }
  return out;
}

// m_i - m_i/p^{n-i} - m_i^2 e / p^{n-i} = 0 for every level.
bool level_index_identity_holds(const ModelParams& params);

template <class K>
bool is_central(const RingElement<K>& x) {
  const auto& ring = x.ring();
  for (std::size_t b = 0; b < ring->dim(); ++b) {
    const auto y = basis_element(ring, x.scalars(), b);
    if (mult(x, y) != mult(y, x)) return false;
  }
  return true;
}

// Dimension over k of the left ideal kT * x.
template <class K>
std::size_t left_ideal_dim(const RingElement<K>& x) {
  const auto& ring = x.ring();
  const K& k = x.scalars();
  Matrix<typename K::value_type> rows(ring->dim(), ring->dim(), k.zero());
  for (std::size_t b = 0; b < ring->dim(); ++b) {
    const auto y = mult(basis_element(ring, k, b), x);
    for (const auto& [idx, v] : y.coeffs()) rows(b, idx) = v;
  }
  return rank(k, std::move(rows));
}

template <class K>
struct BlockDecomposition {
  K scalars;
  std::vector<RingElement<K>> e_list;
  std::vector<RingElement<K>> f_list;
  std::vector<std::size_t> dims;           // dim kT f_i, computed by rank
  std::vector<std::size_t> expected_dims;  // e^2, p^0(p-1), ..., p^{n-1}(p-1)
};

// Every check either passes or throws Violation naming the failed identity.
template <class K>
BlockDecomposition<K> central_decomposition(const RingPtr& ring, const K& k) {
  const auto& params = ring->params();
  detail::require_char_not_p(params, k);
  const unsigned n = params.n();
  BlockDecomposition<K> dec{k, {}, {}, {}, {}};
  for (unsigned i = 0; i <= n; ++i) dec.e_list.push_back(chain_idempotent(ring, k, i));

  detail::violation(level_index_identity_holds(params), "level index identity");
  detail::violation(dec.e_list[n] == ring_one(ring, k), "e_n is not the identity");
  for (unsigned i = 0; i <= n; ++i) {
    const auto& ei = dec.e_list[i];
    const std::string tag = "e_" + std::to_string(i);
    detail::violation(mult(ei, ei) == ei, tag + " is not idempotent");
    detail::violation(is_central(ei), tag + " is not central");
    for (auto b : ring->ideal_le(i)) {
      const auto x = basis_element(ring, k, b);
      detail::violation(mult(ei, x) == x && mult(x, ei) == x,
                        tag + " is not an identity on " + to_string(ring->element(b)));
    }
    for (unsigned j = 0; j <= n; ++j)
      detail::violation(mult(ei, dec.e_list[j]) == dec.e_list[std::min(i, j)],
                        tag + " * e_" + std::to_string(j) + " != e_min");
  }

  RingElement<K> total(ring, k);
  for (unsigned i = 0; i <= n; ++i) {
    dec.f_list.push_back(i == 0 ? dec.e_list[0] : sub(dec.e_list[i], dec.e_list[i - 1]));
    total = add(total, dec.f_list.back());
  }
  detail::violation(total == ring_one(ring, k), "sum of f_i is not 1");
  for (unsigned i = 0; i <= n; ++i) {
    const auto& fi = dec.f_list[i];
    const std::string tag = "f_" + std::to_string(i);
    detail::violation(mult(fi, fi) == fi, tag + " is not idempotent");
    detail::violation(is_central(fi), tag + " is not central");
    for (unsigned j = 0; j <= n; ++j)
      if (j != i)
        detail::violation(mult(fi, dec.f_list[j]).is_zero(), tag + " * f_" + std::to_string(j) + " != 0");
    dec.dims.push_back(left_ideal_dim(fi));
    dec.expected_dims.push_back(i == 0 ? std::size_t{params.e()} * params.e() : params.aut_order(i));
    detail::violation(dec.dims.back() == dec.expected_dims.back(), "dimension of block " + std::to_string(i));
  }
  return dec;
}

// Element of kT_i with coordinates given on Gamma_i (the labeling M(i,a,l) <-> (a,l)).
template <class K>
RingElement<K> label_inverse(const RingPtr& ring, const K& k, const GammaGroup& g, const GroupAlgebraElement<K>& x) {
  RingElement<K> out(ring, k);
  for (std::size_t j = 0; j < g.order(); ++j) {
    const auto& [rep, l] = g.element(j);
    out.add_term(ring->index_of(NonProj{g.level(), rep, l}), x[j]);
  }
  return out;
}

template <class K>
GroupAlgebraElement<K> label(const GammaGroup& g, const RingElement<K>& x) {
  GroupAlgebraElement<K> out(g.order(), x.scalars().zero());
  for (const auto& [idx, v] : x.coeffs()) {
    const auto* np = std::get_if<NonProj>(&x.tring().element(idx));
    if (!np || np->level != g.level()) throw Error(ErrorCode::BadInput, "element is not supported on T_i");
    out[g.index(np->alpha, np->lambda)] = v;
  }
  return out;
}

// k[Gamma_i] -> kT f_i, x -> (label^{-1}(x d_i)) f_i.
template <class K>
RingElement<K> gamma_to_block(const RingPtr& ring, const K& k, const GammaGroup& g, const GroupAlgebraElement<K>& x,
                              const RingElement<K>& fi) {
  const auto d = twist_unit_inverse(g, k, ring->params());
  return mult(label_inverse(ring, k, g, ga_mult(g, k, x, d)), fi);
}

struct BlockIsoCertificate {
  unsigned level = 0;
  std::size_t dim = 0;
  bool multiplicative = false;   // on every pair of block-basis elements
  bool bijective = false;        // exact rank equals dim
  bool identity_preserved = false;
  bool unit_inverse = false;     // c_i d_i = 1 in k[Gamma_i] (levels >= 1)
  bool group_multiplicative = false;  // k[Gamma_i] -> kT f_i on every pair of group elements
};

template <class K>
BlockIsoCertificate block_iso_i(const RingPtr& ring, const K& k, unsigned i, const BlockDecomposition<K>& dec) {
  const auto& params = ring->params();
  if (i < 1 || i > params.n()) throw Error(ErrorCode::BadLevel, "block level " + std::to_string(i));
  detail::require_char_not_p(params, k);
  const GammaGroup g(params, i);
  const auto& fi = dec.f_list.at(i);
  const auto level = ring->level_basis(i);

  BlockIsoCertificate cert;
  cert.level = i;
  cert.dim = level.size();

  // a -> a f_i on kT_i, whose product is that of kT (T_i T_i lies in T_i) with identity e_i.
  std::vector<RingElement<K>> images;
  for (auto b : level) images.push_back(mult(basis_element(ring, k, b), fi));
  cert.multiplicative = true;
  for (std::size_t a = 0; a < level.size() && cert.multiplicative; ++a)
    for (std::size_t b = 0; b < level.size(); ++b) {
      const auto ab = mult(basis_element(ring, k, level[a]), basis_element(ring, k, level[b]));
      if (mult(ab, fi) != mult(images[a], images[b])) {
        cert.multiplicative = false;
        break;
      }
    }
  Matrix<typename K::value_type> rows(level.size(), ring->dim(), k.zero());
  for (std::size_t a = 0; a < level.size(); ++a)
    for (const auto& [idx, v] : images[a].coeffs()) rows(a, idx) = v;
  cert.bijective = rank(k, std::move(rows)) == level.size() && level.size() == dec.dims.at(i);
  cert.identity_preserved = mult(dec.e_list.at(i), fi) == fi;

  const auto c = twist_unit(g, k, params);
  const auto d = twist_unit_inverse(g, k, params);
  cert.unit_inverse = ga_mult(g, k, c, d) == ga_unit(g, k, g.identity());

  std::vector<RingElement<K>> gimages;
  for (std::size_t a = 0; a < g.order(); ++a) gimages.push_back(gamma_to_block(ring, k, g, ga_unit(g, k, a), fi));
  cert.group_multiplicative = gimages[g.identity()] == fi;
  for (std::size_t a = 0; a < g.order() && cert.group_multiplicative; ++a)
    for (std::size_t b = 0; b < g.order(); ++b)
      if (gimages[g.mul(a, b)] != mult(gimages[a], gimages[b])) {
        cert.group_multiplicative = false;
        break;
      }
  return cert;
}

// kT f_0 = kPr -> Mat_e(k), X -> X C; inverse M -> M C^{-1}.
template <class K>
BlockIsoCertificate block_iso_0(const RingPtr& ring, const K& k, const BlockDecomposition<K>& dec) {
  const auto& params = ring->params();
  detail::require_char_not_p(params, k);
  const auto c = map_matrix(k, cartan_matrix(params));
  const auto cinv = inverse(k, c);
  const std::size_t l = params.e();
  BlockIsoCertificate cert;
  cert.dim = l * l;
  const auto forward = [&](const RingElement<K>& x) { return multiply(k, pr_matrix(x), c); };
  const auto units = unit_matrices(k, l);

  cert.multiplicative = true;
  std::vector<RingElement<K>> elems;
  for (const auto& u : units) elems.push_back(pr_element(ring, k, u));
  for (std::size_t a = 0; a < elems.size() && cert.multiplicative; ++a) {
    if (pr_element(ring, k, multiply(k, forward(elems[a]), cinv)) != elems[a]) cert.multiplicative = false;
    for (std::size_t b = 0; b < elems.size(); ++b)
      if (forward(mult(elems[a], elems[b])) != multiply(k, forward(elems[a]), forward(elems[b]))) {
        cert.multiplicative = false;
        break;
      }
  }
  Matrix<typename K::value_type> rows(elems.size(), l * l, k.zero());
  for (std::size_t a = 0; a < elems.size(); ++a) {
    const auto img = forward(elems[a]);
    for (std::size_t t = 0; t < img.data().size(); ++t) rows(a, t) = img.data()[t];
  }
  cert.bijective = rank(k, std::move(rows)) == l * l && dec.dims.at(0) == l * l;
  cert.identity_preserved = forward(dec.f_list.at(0)) == identity_matrix(k, l);
  cert.unit_inverse = true;
  cert.group_multiplicative = true;
  return cert;
}

struct TheoremCResult {
  std::vector<RingElement<IntegerRing>> members;  // eps_1..eps_{l-1}, then the residual
  bool idempotent = false;
  bool orthogonal = false;
  bool sums_to_one = false;
  std::size_t outside_pr = 0;
  std::vector<bool> rank_one_corner;  // for the eps_i (the residual is not certified)
};

TheoremCResult theorem_c_decomposition(const RingPtr& ring);

struct CentralIdempotentScan {
  std::size_t primitive_count = 0;
  std::vector<std::size_t> per_block;  // primitive central idempotents per block
  std::uint64_t sums_checked = 0;
  std::vector<RingElement<IntegerRing>> integral;  // integral sums found, sorted (0 first)
  bool only_zero_and_one = false;
};

// Primitive central idempotents of Q T (f_0 plus the Galois-orbit idempotents of each Q[Gamma_i],
// pulled back), and all 2^k sums with integer coordinates. ScanTooLarge if k > bound.
CentralIdempotentScan rational_central_idempotent_scan(const RingPtr& ring, std::size_t bound = 20);

enum class Decision { Semisimple, NotSemisimple, Inconclusive };
const char* to_string(Decision d) noexcept;

struct SemisimplicityResult {
  Decision decision = Decision::Inconclusive;
  std::uint64_t characteristic = 0;
  std::string method;                    // gram, central-nilpotent, frobenius-quotient, trace-radical
  std::size_t dim = 0;
  std::size_t gram_rank = 0;
  std::vector<std::string> witness;      // coordinates of the nilpotent witness on the basis
  std::size_t nilpotency_index = 0;
  bool expected = false;                 // p^{n-1}(p-1) invertible in the field
};

SemisimplicityResult semisimplicity_decide(const RingPtr& ring, std::uint64_t q);

}  // namespace tsring
