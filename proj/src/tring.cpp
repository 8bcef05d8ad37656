#include "tsring/tring.hpp"

#include <algorithm>

namespace tsring {

namespace {

void validate(const ModelParams& params, const BasisElement& b) {
  const auto e = params.e();
  if (const auto* pp = std::get_if<ProjPair>(&b)) {
    if (pp->lambda >= e || pp->mu >= e)
      throw Error(ErrorCode::ParamsMismatch, to_string(b) + " is not a basis element for " + params.to_string());
    return;
  }
  const auto& np = std::get<NonProj>(b);
  if (np.level < 1 || np.level > params.n() || np.lambda >= e || np.alpha % params.p() == 0 ||
      np.alpha >= params.p_pow(np.level) || canonical_coset(params, np.level, np.alpha).rep != np.alpha)
    throw Error(ErrorCode::ParamsMismatch, to_string(b) + " is not a basis element for " + params.to_string());
}

Character char_add(const ModelParams& params, Character a, Character b) { return (a + b) % params.e(); }
Character char_sub(const ModelParams& params, Character a, Character b) {
  return (a + params.e() - b) % params.e();
}

// Collects terms; coefficients add up on repeated keys.
class Accumulator {
 public:
  void add(const BasisElement& b, std::int64_t c) {
    if (c != 0) terms_[b] += c;
  }
  BasisCombination finish() const {
    BasisCombination out;
    for (const auto& [b, c] : terms_)
      if (c != 0) out.emplace_back(b, c);
    return out;
  }

 private:
  std::map<BasisElement, std::int64_t> terms_;
};

}  // namespace

std::string to_string(const BasisElement& b) {
  if (const auto* pp = std::get_if<ProjPair>(&b))
    return "P(" + std::to_string(pp->lambda) + "," + std::to_string(pp->mu) + ")";
  const auto& np = std::get<NonProj>(b);
  return "M(" + std::to_string(np.level) + "," + std::to_string(np.alpha) + "," + std::to_string(np.lambda) + ")";
}

unsigned vertex_level(const BasisElement& b) {
  if (std::holds_alternative<ProjPair>(b)) return 0;
  return std::get<NonProj>(b).level;
}

bool is_projective(const BasisElement& b) { return std::holds_alternative<ProjPair>(b); }

std::vector<BasisElement> basis(const ModelParams& params) {
  std::vector<BasisElement> out;
  const auto e = params.e();
  for (Character l = 0; l < e; ++l)
    for (Character m = 0; m < e; ++m) out.emplace_back(ProjPair{l, m});
  for (unsigned i = 1; i <= params.n(); ++i)
    for (const auto& coset : aut_cosets(params, i))
      for (Character l = 0; l < e; ++l) out.emplace_back(NonProj{i, coset.rep, l});
  return out;
}

BasisCombination mult_basis(const ModelParams& params, const BasisElement& a, const BasisElement& b) {
  validate(params, a);
  validate(params, b);
  const auto e = params.e();
  const auto m = static_cast<std::int64_t>(params.m());
  Accumulator acc;

  const auto* pa = std::get_if<ProjPair>(&a);
  const auto* pb = std::get_if<ProjPair>(&b);
  if (pa && pb) {
    acc.add(ProjPair{pa->lambda, pb->mu}, pa->mu == pb->lambda ? m + 1 : m);
  } else if (pa) {
    const auto& mb = std::get<NonProj>(b);
    const auto mj = static_cast<std::int64_t>(params.m_level(mb.level));
    acc.add(ProjPair{pa->lambda, char_sub(params, pa->mu, mb.lambda)}, 1);
    for (Character nu = 0; nu < e; ++nu) acc.add(ProjPair{pa->lambda, nu}, mj);
  } else if (pb) {
    const auto& ma = std::get<NonProj>(a);
    const auto mi = static_cast<std::int64_t>(params.m_level(ma.level));
    acc.add(ProjPair{char_add(params, ma.lambda, pb->lambda), pb->mu}, 1);
    for (Character nu = 0; nu < e; ++nu) acc.add(ProjPair{nu, pb->mu}, mi);
  } else {
    const auto& ma = std::get<NonProj>(a);
    const auto& mb = std::get<NonProj>(b);
    const unsigned k = std::min(ma.level, mb.level);
    const unsigned l = std::max(ma.level, mb.level);
    const std::uint64_t mod = params.p_pow(k);
    const std::uint64_t alpha = canonical_coset(params, k, (ma.alpha % mod) * (mb.alpha % mod) % mod).rep;
    const auto ml = static_cast<std::int64_t>(params.m_level(l));
    acc.add(NonProj{k, alpha, char_add(params, ma.lambda, mb.lambda)}, 1);
    for (Character nu = 0; nu < e; ++nu) acc.add(NonProj{k, alpha, nu}, ml);
  }
  return acc.finish();
}

TRing::TRing(ModelParams params) : params_(std::move(params)), basis_(tsring::basis(params_)) {
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
  identity_ = index_of(NonProj{params_.n(), 1, 0});
  const std::size_t n = basis_.size();
  table_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto& row = table_[a * n + b];
      for (const auto& [be, c] : mult_basis(params_, basis_[a], basis_[b])) row.push_back(Term{index_of(be), c});
      std::sort(row.begin(), row.end(), [](const Term& x, const Term& y) { return x.index < y.index; });
    }
}

std::size_t TRing::index_of(const BasisElement& b) const {
  const auto it = index_.find(b);
  if (it == index_.end()) throw Error(ErrorCode::BadInput, to_string(b) + " is not a basis element");
  return it->second;
}

std::vector<std::size_t> TRing::ideal_le(unsigned i) const {
  if (i > params_.n()) throw Error(ErrorCode::BadLevel, "ideal level " + std::to_string(i));
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < basis_.size(); ++k)
    if (level(k) <= i) out.push_back(k);
  return out;
}

std::vector<std::size_t> TRing::level_basis(unsigned i) const {
  if (i > params_.n()) throw Error(ErrorCode::BadLevel, "level " + std::to_string(i));
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < basis_.size(); ++k)
    if (level(k) == i) out.push_back(k);
  return out;
}

RingPtr make_ring(const ModelParams& params) { return std::make_shared<const TRing>(params); }

bool verify_two_sided_ideal(const TRing& ring, unsigned i) {
  for (auto b : ring.ideal_le(i))
    for (std::size_t x = 0; x < ring.dim(); ++x) {
      for (const Term& t : ring.product(x, b))
        if (!ring.in_ideal_le(t.index, i)) return false;
      for (const Term& t : ring.product(b, x))
        if (!ring.in_ideal_le(t.index, i)) return false;
    }
  return true;
}

std::vector<Integer> regular_traces(const TRing& ring) {
  std::vector<Integer> t(ring.dim(), Integer(0));
  for (std::size_t k = 0; k < ring.dim(); ++k)
    for (std::size_t j = 0; j < ring.dim(); ++j)
      for (const Term& term : ring.product(k, j))
        if (term.index == j) t[k] += static_cast<long>(term.coeff);
  return t;
}

IntMatrix trace_form_gram(const TRing& ring) {
  const auto t = regular_traces(ring);
  const std::size_t n = ring.dim();
  IntMatrix g(n, n, Integer(0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (const Term& term : ring.product(a, b)) g(a, b) += static_cast<long>(term.coeff) * t[term.index];
  return g;
}

}  // namespace tsring
