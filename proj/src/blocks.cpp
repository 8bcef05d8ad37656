#include "tsring/blocks.hpp"

#include <algorithm>
#include <numeric>

#include "tsring/cyclotomic.hpp"

namespace tsring {

GammaGroup::GammaGroup(const ModelParams& params, unsigned i) : params_(params), level_(i) {
  if (i < 1 || i > params.n()) throw Error(ErrorCode::BadLevel, "Gamma level " + std::to_string(i));
  for (const auto& coset : aut_cosets(params, i))
    for (Character l = 0; l < params.e(); ++l) elements_.emplace_back(coset.rep, l);
  const std::uint64_t mod = params.p_pow(i);
  table_.resize(order() * order());
  for (std::size_t a = 0; a < order(); ++a)
    for (std::size_t b = 0; b < order(); ++b) {
      const auto rep = canonical_coset(params, i, elements_[a].first * elements_[b].first % mod).rep;
      table_[a * order() + b] = index(rep, (elements_[a].second + elements_[b].second) % params.e());
    }
}

std::size_t GammaGroup::index(std::uint64_t coset_rep, Character lambda) const {
  const auto key = std::make_pair(coset_rep, lambda);
  const auto it = std::lower_bound(elements_.begin(), elements_.end(), key);
  if (it == elements_.end() || *it != key) throw Error(ErrorCode::BadInput, "not an element of Gamma");
  return static_cast<std::size_t>(it - elements_.begin());
}

std::size_t GammaGroup::inv(std::size_t a) const {
  for (std::size_t b = 0; b < order(); ++b)
    if (mul(a, b) == identity()) return b;
  throw Error(ErrorCode::Violation, "Gamma element without inverse");
}

std::size_t GammaGroup::element_order(std::size_t a) const {
  std::size_t k = 1;
  for (std::size_t x = a; x != identity(); x = mul(x, a)) ++k;
  return k;
}

std::uint64_t GammaGroup::exponent() const {
  std::uint64_t m = 1;
  for (std::size_t a = 0; a < order(); ++a) m = std::lcm(m, static_cast<std::uint64_t>(element_order(a)));
  return m;
}

std::vector<std::vector<std::uint64_t>> group_characters(const GammaGroup& g) {
  const std::uint64_t m = g.exponent();
  std::vector<bool> in_h(g.order(), false);
  std::vector<std::size_t> h{g.identity()};
  in_h[g.identity()] = true;
  std::vector<std::vector<std::uint64_t>> chars{std::vector<std::uint64_t>(g.order(), 0)};

  while (h.size() < g.order()) {
    const auto gen = static_cast<std::size_t>(std::find(in_h.begin(), in_h.end(), false) - in_h.begin());
    std::uint64_t o = 1;
    std::size_t power = gen;
    while (!in_h[power]) {
      power = g.mul(power, gen);
      ++o;
    }
    // Extend each character by a value v on gen with o * v = chi(gen^o).
    std::vector<std::size_t> new_h;
    std::vector<std::vector<std::uint64_t>> next;
    for (const auto& chi : chars)
      for (std::uint64_t v = 0; v < m; ++v) {
        if (o * v % m != chi[power]) continue;
        auto ext = chi;
        std::size_t shift = g.identity();
        for (std::uint64_t s = 0; s < o; ++s) {
          for (auto x : h) ext[g.mul(x, shift)] = (chi[x] + s * v) % m;
          shift = g.mul(shift, gen);
        }
        next.push_back(std::move(ext));
      }
    std::size_t shift = g.identity();
    for (std::uint64_t s = 0; s < o; ++s) {
      for (auto x : h) new_h.push_back(g.mul(x, shift));
      shift = g.mul(shift, gen);
    }
    h = std::move(new_h);
    for (auto x : h) in_h[x] = true;
    chars = std::move(next);
  }
  std::sort(chars.begin(), chars.end());
  if (chars.size() != g.order()) throw Error(ErrorCode::Violation, "character count differs from group order");
  return chars;
}

bool level_index_identity_holds(const ModelParams& params) {
  for (unsigned i = 1; i <= params.n(); ++i) {
    const Rational mi(Integer(static_cast<unsigned long>(params.m_level(i))));
    const Rational q(Integer(static_cast<unsigned long>(params.p_pow(params.n() - i))));
    const Rational e(Integer(static_cast<unsigned long>(params.e())));
    if (sgn(Rational(mi - mi / q - mi * mi * e / q)) != 0) return false;
  }
  return true;
}

TheoremCResult theorem_c_decomposition(const RingPtr& ring) {
  const IntegerRing z;
  const auto l = ring->params().e();
  TheoremCResult res;
  RingElement<IntegerRing> rest = ring_one(ring, z);
  for (Character i = 0; i + 1 < l; ++i) {
    RingElement<IntegerRing> eps(ring, z);
    eps.add_term(ring->index_of(ProjPair{i, i}), 1);
    eps.add_term(ring->index_of(ProjPair{l - 1, i}), -1);
    rest = sub(rest, eps);
    res.members.push_back(std::move(eps));
  }
  res.members.push_back(rest);

  res.idempotent = std::all_of(res.members.begin(), res.members.end(),
                               [](const auto& x) { return mult(x, x) == x; });
  res.orthogonal = true;
  RingElement<IntegerRing> total(ring, z);
  for (std::size_t a = 0; a < res.members.size(); ++a) {
    total = add(total, res.members[a]);
    for (std::size_t b = 0; b < res.members.size(); ++b)
      if (a != b && !mult(res.members[a], res.members[b]).is_zero()) res.orthogonal = false;
    if (!supported_in_ideal(res.members[a], 0)) ++res.outside_pr;
  }
  res.sums_to_one = total == ring_one(ring, z);

  for (std::size_t a = 0; a + 1 < res.members.size(); ++a) {
    const auto& eps = res.members[a];
    IntMatrix corner(ring->dim(), ring->dim(), Integer(0));
    for (std::size_t b = 0; b < ring->dim(); ++b) {
      const auto v = mult(mult(eps, basis_element(ring, z, b)), eps);
      for (const auto& [idx, c] : v.coeffs()) corner(b, idx) = c;
    }
    res.rank_one_corner.push_back(rational_rank(corner) == 1);
  }
  return res;
}

namespace {

// Primitive idempotents of Q[Gamma], one per Galois orbit of characters.
std::vector<GroupAlgebraElement<RationalField>> rational_primitive_idempotents(const GammaGroup& g) {
  const auto chars = group_characters(g);
  const std::uint64_t m = g.exponent();
  const CyclotomicRing cyc(m);
  std::vector<bool> used(chars.size(), false);
  std::vector<GroupAlgebraElement<RationalField>> out;
  const Rational inv_order(1, static_cast<unsigned long>(g.order()));
  for (std::size_t c = 0; c < chars.size(); ++c) {
    if (used[c]) continue;
    std::vector<std::size_t> orbit;
    for (std::uint64_t a = 1; a <= m; ++a) {
      if (std::gcd(a, m) != 1) continue;
      std::vector<std::uint64_t> image(chars[c].size());
      for (std::size_t x = 0; x < image.size(); ++x) image[x] = chars[c][x] * a % m;
      const auto pos = static_cast<std::size_t>(std::lower_bound(chars.begin(), chars.end(), image) - chars.begin());
      if (!used[pos]) {
        used[pos] = true;
        orbit.push_back(pos);
      }
    }
    GroupAlgebraElement<RationalField> idem(g.order(), Rational(0));
    for (std::size_t x = 0; x < g.order(); ++x) {
      auto sum = cyc.zero();
      for (auto chi : orbit) sum = cyc.add(sum, cyc.root_power(-static_cast<std::int64_t>(chars[chi][x])));
      idem[x] = cyc.to_rational(sum) * inv_order;
    }
    out.push_back(std::move(idem));
  }
  return out;
}

bool integral(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.get_den() == 1; });
}

}  // namespace

CentralIdempotentScan rational_central_idempotent_scan(const RingPtr& ring, std::size_t bound) {
  const RationalField q;
  const auto& params = ring->params();
  CentralIdempotentScan scan;

  std::vector<GammaGroup> groups;
  std::vector<std::vector<GroupAlgebraElement<RationalField>>> block_idems;
  scan.per_block.push_back(1);
  for (unsigned i = 1; i <= params.n(); ++i) {
    groups.emplace_back(params, i);
    block_idems.push_back(rational_primitive_idempotents(groups.back()));
    scan.per_block.push_back(block_idems.back().size());
  }
  scan.primitive_count = std::accumulate(scan.per_block.begin(), scan.per_block.end(), std::size_t{0});
  if (scan.primitive_count > bound)
    throw Error(ErrorCode::ScanTooLarge, std::to_string(scan.primitive_count) + " primitive central idempotents exceed bound " +
                                             std::to_string(bound));

  const auto dec = central_decomposition(ring, q);
  std::vector<std::vector<Rational>> prims{to_vector(dec.f_list[0])};
  for (unsigned i = 1; i <= params.n(); ++i)
    for (const auto& idem : block_idems[i - 1])
      prims.push_back(to_vector(gamma_to_block(ring, q, groups[i - 1], idem, dec.f_list[i])));

  const std::size_t k = prims.size();
  std::vector<Rational> sum(ring->dim(), Rational(0));
  std::vector<std::uint64_t> masks{0};
  std::uint64_t gray = 0;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << k); ++s) {
    const auto bit = static_cast<std::size_t>(__builtin_ctzll(s));
    gray ^= std::uint64_t{1} << bit;
    const bool adding = (gray >> bit) & 1;
    for (std::size_t t = 0; t < sum.size(); ++t) {
      if (adding)
        sum[t] += prims[bit][t];
      else
        sum[t] -= prims[bit][t];
    }
    if (integral(sum)) masks.push_back(gray);
  }
  scan.sums_checked = std::uint64_t{1} << k;
  std::sort(masks.begin(), masks.end());
  const IntegerRing z;
  for (auto mask : masks) {
    std::vector<Rational> v(ring->dim(), Rational(0));
    for (std::size_t b = 0; b < k; ++b)
      if ((mask >> b) & 1)
        for (std::size_t t = 0; t < v.size(); ++t) v[t] += prims[b][t];
    RingElement<IntegerRing> x(ring, z);
    for (std::size_t t = 0; t < v.size(); ++t) x.add_term(t, z.from_rational(v[t]));
    scan.integral.push_back(std::move(x));
  }
  const std::uint64_t full = (std::uint64_t{1} << k) - 1;
  scan.only_zero_and_one = masks == std::vector<std::uint64_t>{0, full} && scan.integral[0].is_zero() &&
                           scan.integral[1] == ring_one(ring, z);
  return scan;
}

const char* to_string(Decision d) noexcept {
  switch (d) {
    case Decision::Semisimple: return "Semisimple";
    case Decision::NotSemisimple: return "NotSemisimple";
    case Decision::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

namespace {

template <class K>
std::vector<std::string> format_vector(const K& k, const std::vector<typename K::value_type>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(k.format(x));
  return out;
}

template <class K>
bool in_span(const K& k, const std::vector<std::vector<typename K::value_type>>& span, std::size_t span_rank,
             const std::vector<typename K::value_type>& v) {
  Matrix<typename K::value_type> m(span.size() + 1, v.size(), k.zero());
  for (std::size_t i = 0; i < span.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = span[i][j];
  for (std::size_t j = 0; j < v.size(); ++j) m(span.size(), j) = v[j];
  return rank(k, std::move(m)) == span_rank;
}

template <class K>
std::vector<std::vector<typename K::value_type>> span_basis(const K& k,
                                                            const std::vector<std::vector<typename K::value_type>>& vs,
                                                            std::size_t dim) {
  if (vs.empty()) return {};
  Matrix<typename K::value_type> m(vs.size(), dim, k.zero());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = vs[i][j];
  const auto pivots = row_reduce(k, m);
  std::vector<std::vector<typename K::value_type>> out;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    std::vector<typename K::value_type> row(dim);
    for (std::size_t j = 0; j < dim; ++j) row[j] = m(i, j);
    out.push_back(std::move(row));
  }
  return out;
}

// Kernel of the trace form: if it is a nilpotent two-sided ideal, the algebra is not semisimple.
template <class K>
bool trace_radical_step(const RingPtr& ring, const K& k, const Matrix<typename K::value_type>& gram,
                        SemisimplicityResult& res) {
  const auto kernel = nullspace(k, gram);
  if (kernel.empty()) return false;
  const std::size_t dim = ring->dim();
  const auto basis_k = span_basis(k, kernel, dim);
  for (const auto& v : basis_k) {
    const auto x = from_vector(ring, k, v);
    for (std::size_t b = 0; b < dim; ++b) {
      const auto y = basis_element(ring, k, b);
      if (!in_span(k, basis_k, basis_k.size(), to_vector(mult(x, y))) ||
          !in_span(k, basis_k, basis_k.size(), to_vector(mult(y, x))))
        return false;
    }
  }
  auto power = basis_k;
  std::size_t index = 1;
  while (!power.empty()) {
    std::vector<std::vector<typename K::value_type>> products;
    for (const auto& a : power)
      for (const auto& b : basis_k) products.push_back(to_vector(mult(from_vector(ring, k, a), from_vector(ring, k, b))));
    auto next = span_basis(k, products, dim);
    if (next.size() >= power.size()) return false;
    power = std::move(next);
    ++index;
  }
  res.decision = Decision::NotSemisimple;
  res.method = "trace-radical";
  res.witness = format_vector(k, basis_k.front());
  res.nilpotency_index = index;
  return true;
}

// N = {x in I : xI = 0 = Ix} for the ideal I = T_{<=i}. N is an ideal of kT (I is one) and N^2 = 0.
template <class K>
bool annihilator_step(const RingPtr& ring, const K& k, SemisimplicityResult& res) {
  const std::size_t dim = ring->dim();
  for (unsigned i = 0; i <= ring->params().n(); ++i) {
    const auto ideal = ring->ideal_le(i);
    Matrix<typename K::value_type> sys(2 * ideal.size() * dim, ideal.size(), k.zero());
    for (std::size_t c = 0; c < ideal.size(); ++c)
      for (std::size_t a = 0; a < ideal.size(); ++a) {
        for (const Term& t : ring->product(ideal[a], ideal[c])) {
          auto& cell = sys(c * dim + t.index, a);
          cell = k.add(cell, scalar_from_int(k, t.coeff));
        }
        for (const Term& t : ring->product(ideal[c], ideal[a])) {
          auto& cell = sys((ideal.size() + c) * dim + t.index, a);
          cell = k.add(cell, scalar_from_int(k, t.coeff));
        }
      }
    const auto kernel = nullspace(k, std::move(sys));
    if (kernel.empty()) continue;
    RingElement<K> x(ring, k);
    for (std::size_t a = 0; a < ideal.size(); ++a) x.add_term(ideal[a], kernel.front()[a]);
    bool annihilates = !x.is_zero();
    for (std::size_t c = 0; c < ideal.size() && annihilates; ++c) {
      const auto y = basis_element(ring, k, ideal[c]);
      annihilates = mult(x, y).is_zero() && mult(y, x).is_zero();
    }
    if (!annihilates) continue;
    res.decision = Decision::NotSemisimple;
    res.method = "annihilator-ideal";
    res.witness = format_vector(k, to_vector(x));
    res.nilpotency_index = 2;
    return true;
  }
  return false;
}

// Sum of Gamma_i pulled back to kT: a nonzero central element with square zero when q | |Gamma_i|.
template <class K>
bool central_nilpotent_step(const RingPtr& ring, const K& k, SemisimplicityResult& res) {
  const auto& params = ring->params();
  const auto dec = central_decomposition(ring, k);
  for (unsigned i = 1; i <= params.n(); ++i) {
    const GammaGroup g(params, i);
    if (g.order() % k.characteristic() != 0) continue;
    const GroupAlgebraElement<K> all(g.order(), k.one());
    const auto z = gamma_to_block(ring, k, g, all, dec.f_list[i]);
    if (z.is_zero() || !is_central(z) || !mult(z, z).is_zero()) continue;
    res.decision = Decision::NotSemisimple;
    res.method = "central-nilpotent";
    res.witness = format_vector(k, to_vector(z));
    res.nilpotency_index = 2;
    return true;
  }
  return false;
}

// In char p, kT / kT_{<=n-1} is commutative and x -> x^{p^s} is F_p-linear; a kernel vector is nilpotent.
bool frobenius_quotient_step(const RingPtr& ring, const PrimeField& k, SemisimplicityResult& res) {
  const auto& params = ring->params();
  const unsigned below = params.n() - 1;
  const auto top = ring->level_basis(params.n());
  std::uint64_t ps = params.p();
  while (ps < top.size()) ps *= params.p();

  const auto power = [&](const RingElement<PrimeField>& x, std::uint64_t exp) {
    RingElement<PrimeField> acc = x;
    for (std::uint64_t t = 1; t < exp && !acc.is_zero(); ++t) acc = quotient_mult(below, acc, x);
    return acc;
  };
  const auto frob = [&](const RingElement<PrimeField>& x) {
    RingElement<PrimeField> acc = x;
    for (std::uint64_t t = params.p(); t <= ps && !acc.is_zero(); t *= params.p()) acc = power(acc, params.p());
    return acc;
  };

  Matrix<std::uint64_t> f(top.size(), top.size(), 0);
  for (std::size_t j = 0; j < top.size(); ++j) {
    const auto img = frob(basis_element(ring, k, top[j]));
    for (std::size_t i = 0; i < top.size(); ++i) f(i, j) = img.coeff(top[i]);
  }
  const auto kernel = nullspace(k, f);
  if (kernel.empty()) return false;
  RingElement<PrimeField> x(ring, k);
  for (std::size_t j = 0; j < top.size(); ++j) x.add_term(top[j], kernel.front()[j]);
  if (x.is_zero()) return false;
  std::size_t index = 1;
  for (RingElement<PrimeField> acc = x; !acc.is_zero(); acc = quotient_mult(below, acc, x)) {
    if (++index > ps + 1) return false;
  }
  res.decision = Decision::NotSemisimple;
  res.method = "frobenius-quotient";
  res.witness = format_vector(k, to_vector(x));
  res.nilpotency_index = index;
  return true;
}

}  // namespace

SemisimplicityResult semisimplicity_decide(const RingPtr& ring, std::uint64_t q) {
  const auto& params = ring->params();
  SemisimplicityResult res;
  res.characteristic = q;
  res.dim = ring->dim();
  res.expected = q == 0 || params.aut_order(params.n()) % q != 0;
  const IntMatrix gram = trace_form_gram(*ring);

  if (q == 0) {
    res.gram_rank = rational_rank(gram);
    if (res.gram_rank == res.dim) {
      res.decision = Decision::Semisimple;
      res.method = "gram";
    }
    return res;
  }
  if (!is_prime(q)) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not prime");
  const PrimeField k(q);
  const auto gram_k = map_matrix(k, gram);
  res.gram_rank = rank(k, gram_k);
  if (res.gram_rank == res.dim) {
    res.decision = Decision::Semisimple;
    res.method = "gram";
    return res;
  }
  if (q != params.p()) {
    if (central_nilpotent_step(ring, k, res)) return res;
  } else if (frobenius_quotient_step(ring, k, res)) {
    return res;
  }
  if (annihilator_step(ring, k, res)) return res;
  trace_radical_step(ring, k, gram_k, res);
  return res;
}

}  // namespace tsring
