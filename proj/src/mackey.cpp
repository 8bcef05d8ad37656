#include "tsring/mackey.hpp"

#include <algorithm>

namespace tsring {

namespace {

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t mod) {
  std::int64_t t = 0, new_t = 1;
  auto r = static_cast<std::int64_t>(mod), new_r = static_cast<std::int64_t>(a % mod);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r != 1) throw Error(ErrorCode::NotInvertible, std::to_string(a) + " mod " + std::to_string(mod));
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(mod) : t);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % mod);
}

// The a in D with (a,1) (x,rho) (a,1)^{-1} = (0,rho), for rho != 1.
std::uint64_t complement_shift(const ModelParams& params, const GElement& h) {
  const std::uint64_t pn = params.order_d();
  const std::uint64_t one_minus = (1 + pn - h.r % pn) % pn;
  const std::uint64_t a = mul_mod(h.x, inv_mod(one_minus, pn), pn);
  return (pn - a) % pn;
}

// An element of z whose first and second E-components are (r1, r2); nullopt if none.
std::optional<std::pair<GElement, GElement>> find_with_e_parts(const ModelGroup& g, const SubgroupGG& z,
                                                               std::uint64_t r1, std::uint64_t r2) {
  for (auto code : z.elements) {
    const GElement a = g.element(g.first(code));
    const GElement b = g.element(g.second(code));
    if (a.r == r1 && b.r == r2) return std::make_pair(a, b);
  }
  return std::nullopt;
}

Character char_at(const SubgroupGG& z, std::uint64_t code) {
  const auto v = z.character_at(code);
  if (!v) throw Error(ErrorCode::UnrecognizedShape, "character missing at a required element");
  return *v;
}

void accumulate(std::map<BasisElement, std::int64_t>& acc, const BasisCombination& terms) {
  for (const auto& [b, c] : terms) acc[b] += c;
}

BasisCombination finish(const std::map<BasisElement, std::int64_t>& acc) {
  BasisCombination out;
  for (const auto& [b, c] : acc)
    if (c != 0) out.emplace_back(b, c);
  return out;
}

}  // namespace

SubgroupGG subgroup_of_basis(const ModelGroup& g, const BasisElement& b) {
  const auto& params = g.params();
  const auto e = params.e();
  SubgroupGG x;
  std::vector<Character> chars;
  if (const auto* pp = std::get_if<ProjPair>(&b)) {
    x = e_times_e(g);
    for (auto code : x.elements) {
      const auto rho = g.element(g.first(code)).r;
      const auto sigma = g.element(g.second(code)).r;
      chars.push_back((params.eval(pp->lambda, rho) + e - params.eval(pp->mu, sigma)) % e);
    }
  } else {
    const auto& np = std::get<NonProj>(b);
    x = twisted_diag_pe(g, np.level, np.alpha);
    for (auto code : x.elements) chars.push_back(params.eval(np.lambda, g.element(g.second(code)).r));
  }
  x.character = std::move(chars);
  return x;
}

BasisCombination classify_induced(const ModelGroup& g, const SubgroupGG& z) {
  const auto& params = g.params();
  const auto e = params.e();
  if (!z.character) throw Error(ErrorCode::UnrecognizedShape, "subgroup without character");
  const Shape shape = recognize_shape(g, z.elements);
  const std::uint64_t gen = g.index(GElement{0, params.e_generator()});
  const auto neg = [e](Character c) { return static_cast<Character>((e - c) % e); };

  BasisCombination out;
  switch (shape.tag) {
    case ShapeTag::ExE:
      out.emplace_back(ProjPair{char_at(z, g.pair(gen, 0)), neg(char_at(z, g.pair(0, gen)))}, 1);
      break;
    case ShapeTag::ExOne: {
      const Character l = char_at(z, g.pair(gen, 0));
      for (Character nu = 0; nu < e; ++nu) out.emplace_back(ProjPair{l, nu}, 1);
      break;
    }
    case ShapeTag::OneE: {
      const Character mu = neg(char_at(z, g.pair(0, gen)));
      for (Character nu = 0; nu < e; ++nu) out.emplace_back(ProjPair{nu, mu}, 1);
      break;
    }
    case ShapeTag::TwistedDiagPE:
    case ShapeTag::TwistedDiagP: {
      if (canonical_coset(params, shape.level, shape.alpha).rep != shape.alpha)
        throw Error(ErrorCode::UnrecognizedShape, "twist " + std::to_string(shape.alpha) + " is not canonical");
      if (shape.tag == ShapeTag::TwistedDiagPE) {
        out.emplace_back(NonProj{shape.level, shape.alpha, char_at(z, g.pair(gen, gen))}, 1);
      } else {
        for (auto c : *z.character)
          if (c != 0) throw Error(ErrorCode::UnrecognizedShape, "nontrivial character on a p-group");
        for (Character nu = 0; nu < e; ++nu) out.emplace_back(NonProj{shape.level, shape.alpha, nu}, 1);
      }
      break;
    }
    case ShapeTag::Explicit:
      throw Error(ErrorCode::UnrecognizedShape, "subgroup of order " + std::to_string(z.size()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

MackeyOracle::MackeyOracle(ModelParams params, OracleOptions options)
    : group_(std::move(params)), options_(options) {}

const std::vector<DoubleCoset>& MackeyOracle::double_cosets_for(const SubgroupGG& x, const SubgroupGG& y) {
  auto key = std::make_pair(p2(group_, x), p1(group_, y));
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    auto cosets = double_coset_decomposition(group_, key.first, key.second);
    it = cache_.emplace(std::move(key), std::move(cosets)).first;
  }
  return it->second;
}

SubgroupGG MackeyOracle::canonicalize(const SubgroupGG& z) const {
  const ModelGroup& g = group_;
  const auto& params = g.params();
  const std::uint64_t gen = params.e_generator();
  const GElement one{0, 1};

  std::size_t p_order = 0;
  for (auto code : z.elements)
    if (g.element(g.first(code)).r == 1 && g.element(g.second(code)).r == 1) ++p_order;

  auto accept = [&](const SubgroupGG& c) -> std::optional<SubgroupGG> {
    const Shape s = recognize_shape(g, c.elements);
    if (s.tag == ShapeTag::Explicit) return std::nullopt;
    if ((s.tag == ShapeTag::TwistedDiagP || s.tag == ShapeTag::TwistedDiagPE) &&
        canonical_coset(params, s.level, s.alpha).rep != s.alpha)
      return std::nullopt;
    return c;
  };

  std::optional<SubgroupGG> result;
  if (p_order == 1) {
    // A subgroup of E^a x E^b for complements E^a, E^b; move both to E.
    std::uint64_t a = 0, b = 0;
    if (params.e() > 1) {
      if (auto h = find_with_e_parts(g, z, gen, gen)) {
        a = complement_shift(params, h->first);
        b = complement_shift(params, h->second);
      } else {
        auto h1 = find_with_e_parts(g, z, gen, 1);
        auto h2 = find_with_e_parts(g, z, 1, gen);
        if (h1) a = complement_shift(params, h1->first);
        if (h2) b = complement_shift(params, h2->second);
      }
    }
    result = accept(conj(g, GElement{a, 1}, GElement{b, 1}, z));
  } else {
    // p-part is a twisted diagonal of D_k; move the E-part to Delta(E), then fix the twist by (tau, 1).
    SubgroupGG c = z;
    if (params.e() > 1 && z.size() > p_order) {
      if (auto h = find_with_e_parts(g, z, gen, gen))
        c = conj(g, GElement{complement_shift(params, h->first), 1}, GElement{complement_shift(params, h->second), 1}, z);
    }
    const Shape s = recognize_shape(g, c.elements);
    if (s.tag == ShapeTag::TwistedDiagP || s.tag == ShapeTag::TwistedDiagPE) {
      const std::uint64_t mod = params.p_pow(s.level);
      const std::uint64_t target = canonical_coset(params, s.level, s.alpha).rep;
      for (auto tau : params.e_units())
        if (mul_mod(tau % mod, s.alpha, mod) == target) {
          c = conj(g, GElement{0, tau}, one, c);
          break;
        }
      result = accept(c);
    }
  }
  if (result) return *result;
  if (options_.brute_force_fallback) return brute_force(z);
  throw Error(ErrorCode::UnrecognizedShape,
              "no standard conjugate found for a subgroup of order " + std::to_string(z.size()));
}

SubgroupGG MackeyOracle::brute_force(const SubgroupGG& z) const {
  ++fallback_uses_;
  const ModelGroup& g = group_;
  SubgroupGG plain = z;
  plain.shape = Shape{};
  for (std::uint64_t ai = 0; ai < g.order(); ++ai)
    for (std::uint64_t bi = 0; bi < g.order(); ++bi) {
      SubgroupGG c = conj(g, g.element(ai), g.element(bi), plain);
      const Shape s = recognize_shape(g, c.elements);
      if (s.tag == ShapeTag::Explicit) continue;
      if ((s.tag == ShapeTag::TwistedDiagP || s.tag == ShapeTag::TwistedDiagPE) &&
          canonical_coset(g.params(), s.level, s.alpha).rep != s.alpha)
        continue;
      return c;
    }
  throw Error(ErrorCode::UnrecognizedShape, "no conjugate in G x G has a standard shape");
}

BasisCombination MackeyOracle::term(const SubgroupGG& x, const SubgroupGG& y, const GElement& t) {
  const ModelGroup& g = group_;
  const auto e = g.params().e();
  SubgroupGG plain_y = y;
  plain_y.shape = Shape{};
  const SubgroupGG yt = conj(g, t, GElement{0, 1}, plain_y);

  // M (x)_{k(X,Y)} N is zero unless the two characters cancel on k_2(X) cap k_1(tY).
  const auto kx = k2(g, x);
  const auto ky = k1(g, yt);
  std::vector<std::uint64_t> common;
  std::set_intersection(kx.begin(), kx.end(), ky.begin(), ky.end(), std::back_inserter(common));
  for (auto u : common) {
    const Character cx = char_at(x, g.pair(0, u));
    const Character cy = char_at(yt, g.pair(u, 0));
    if ((cx + cy) % e != 0) {
      ++vanished_;
      return {};
    }
  }
  return classify_induced(g, canonicalize(star(g, x, yt)));
}

BasisCombination MackeyOracle::mult(const BasisElement& a, const BasisElement& b) {
  const SubgroupGG x = subgroup_of_basis(group_, a);
  const SubgroupGG y = subgroup_of_basis(group_, b);
  std::map<BasisElement, std::int64_t> acc;
  for (const auto& dc : double_cosets_for(x, y)) accumulate(acc, term(x, y, dc.rep));
  return finish(acc);
}

BasisCombination oracle_mult(const ModelParams& params, const BasisElement& a, const BasisElement& b) {
  MackeyOracle oracle(params);
  return oracle.mult(a, b);
}

}  // namespace tsring
