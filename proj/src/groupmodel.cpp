#include "tsring/groupmodel.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "tsring/scalar.hpp"

namespace tsring {

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t k, std::uint64_t mod) {
  unsigned __int128 result = 1 % mod;
  unsigned __int128 base = b % mod;
  while (k > 0) {
    if (k & 1) result = result * base % mod;
    base = base * base % mod;
    k >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d != 0) continue;
    out.push_back(d);
    while (v % d == 0) v /= d;
  }
  if (v > 1) out.push_back(v);
  return out;
}

std::uint64_t ipow(std::uint64_t b, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) r *= b;
  return r;
}

// Least element of the set {unit * s : s in pi_i(E)} mod p^i.
std::uint64_t least_in_coset(const ModelParams& params, unsigned i, std::uint64_t unit) {
  const std::uint64_t mod = params.p_pow(i);
  std::uint64_t best = mod;
  for (auto rho : params.e_units()) {
    const auto v = static_cast<std::uint64_t>(static_cast<unsigned __int128>(unit % mod) * (rho % mod) % mod);
    best = std::min(best, v);
  }
  return best;
}

std::vector<std::uint64_t> sorted_unique(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::uint64_t ModelParams::p_pow(unsigned i) const {
  if (i > impl_->n) throw Error(ErrorCode::BadLevel, "level " + std::to_string(i) + " exceeds n");
  return ipow(impl_->p, i);
}

std::uint64_t ModelParams::m_level(unsigned i) const {
  if (i < 1 || i > impl_->n) throw Error(ErrorCode::BadLevel, "level " + std::to_string(i) + " out of range");
  return (p_pow(impl_->n - i) - 1) / impl_->e;
}

std::uint64_t ModelParams::aut_order(unsigned i) const {
  if (i < 1 || i > impl_->n) throw Error(ErrorCode::BadLevel, "level " + std::to_string(i) + " out of range");
  return p_pow(i - 1) * (impl_->p - 1);
}

std::uint32_t ModelParams::e_log(std::uint64_t unit) const {
  const auto it = impl_->log.find(unit % impl_->pn);
  if (it == impl_->log.end()) throw Error(ErrorCode::BadInput, std::to_string(unit) + " is not in E");
  return it->second;
}

Character ModelParams::eval(Character lambda, std::uint64_t rho) const {
  return static_cast<Character>((static_cast<std::uint64_t>(lambda) * e_log(rho)) % impl_->e);
}

std::string ModelParams::to_string() const {
  return "(" + std::to_string(p()) + "," + std::to_string(n()) + "," + std::to_string(e()) + ")";
}

std::uint64_t primitive_root(std::uint64_t p, unsigned n) {
  const std::uint64_t mod = ipow(p, n);
  const std::uint64_t phi = mod / p * (p - 1);
  const auto factors = prime_factors(phi);
  for (std::uint64_t g = 2; g < mod; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (auto q : factors)
      if (pow_mod(g, phi / q, mod) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  return 1;  // only reached for mod = 2
}

ModelParams make_params(std::uint32_t p, std::uint32_t n, std::uint32_t e) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (n < 1) throw Error(ErrorCode::BadLevel, "n must be at least 1");
  if (p == 2 && e > 1) throw Error(ErrorCode::TwoBlocked, "E must be trivial for p = 2");
  if (e < 1 || (p - 1) % e != 0)
    throw Error(ErrorCode::BadOrder, std::to_string(e) + " does not divide p-1 = " + std::to_string(p - 1));
  std::uint64_t pn = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    pn *= p;
    if (pn > (std::uint64_t{1} << 31)) throw Error(ErrorCode::BadInput, "p^n too large");
  }

  auto impl = std::make_shared<ModelParams::Impl>();
  impl->p = p;
  impl->n = n;
  impl->e = e;
  impl->pn = pn;
  std::uint64_t gen = 1;
  if (e > 1) {
    const std::uint64_t phi = pn / p * (p - 1);
    gen = pow_mod(primitive_root(p, n), phi / e, pn);
  }
  std::uint64_t cur = 1;
  for (std::uint32_t k = 0; k < e; ++k) {
    impl->e_units.push_back(cur);
    impl->log.emplace(cur, k);
    cur = static_cast<std::uint64_t>(static_cast<unsigned __int128>(cur) * gen % pn);
  }
  if (cur != 1 || impl->log.size() != e) throw Error(ErrorCode::Violation, "E generator has wrong order");
  return ModelParams(std::move(impl));
}

std::uint64_t pi(const ModelParams& params, unsigned i, unsigned j, std::uint64_t unit) {
  if (i < 1 || i > j || j > params.n())
    throw Error(ErrorCode::BadLevel, "pi_" + std::to_string(i) + " from level " + std::to_string(j));
  if (unit % params.p() == 0) throw Error(ErrorCode::BadInput, std::to_string(unit) + " is not a unit");
  return unit % params.p_pow(i);
}

std::vector<std::uint64_t> pi_e(const ModelParams& params, unsigned i) {
  std::vector<std::uint64_t> out;
  for (auto rho : params.e_units()) out.push_back(pi(params, i, params.n(), rho));
  return sorted_unique(std::move(out));
}

AutCoset canonical_coset(const ModelParams& params, unsigned i, std::uint64_t unit) {
  if (i < 1 || i > params.n()) throw Error(ErrorCode::BadLevel, "coset level " + std::to_string(i));
  if (unit % params.p() == 0) throw Error(ErrorCode::BadInput, std::to_string(unit) + " is not a unit");
  return AutCoset{i, least_in_coset(params, i, unit)};
}

std::vector<AutCoset> aut_cosets(const ModelParams& params, unsigned i) {
  if (i < 1 || i > params.n()) throw Error(ErrorCode::BadLevel, "coset level " + std::to_string(i));
  std::vector<AutCoset> out;
  const std::uint64_t mod = params.p_pow(i);
  for (std::uint64_t u = 1; u < mod; ++u) {
    if (u % params.p() == 0) continue;
    if (least_in_coset(params, i, u) == u) out.push_back(AutCoset{i, u});
  }
  return out;
}

// ---------------------------------------------------------------------------

ModelGroup::ModelGroup(ModelParams params) : params_(std::move(params)), order_(params_.group_order()) {}

GElement ModelGroup::element(std::uint64_t index) const {
  const std::uint64_t pn = params_.order_d();
  return GElement{index % pn, params_.e_units()[index / pn]};
}

std::uint64_t ModelGroup::index(const GElement& g) const {
  return static_cast<std::uint64_t>(params_.e_log(g.r)) * params_.order_d() + g.x % params_.order_d();
}

GElement ModelGroup::mul(const GElement& a, const GElement& b) const {
  const std::uint64_t pn = params_.order_d();
  const auto ry = static_cast<std::uint64_t>(static_cast<unsigned __int128>(a.r) * b.x % pn);
  return GElement{(a.x + ry) % pn, static_cast<std::uint64_t>(static_cast<unsigned __int128>(a.r) * b.r % pn)};
}

GElement ModelGroup::inv(const GElement& a) const {
  // (x, r)^{-1} = (-r^{-1} x, r^{-1})
  const std::uint64_t pn = params_.order_d();
  const auto& units = params_.e_units();
  const std::uint32_t k = params_.e_log(a.r);
  const std::uint64_t rinv = units[(params_.e() - k) % params_.e()];
  const auto y = static_cast<std::uint64_t>(static_cast<unsigned __int128>(rinv) * a.x % pn);
  return GElement{(pn - y) % pn, rinv};
}

std::vector<std::uint64_t> ModelGroup::d_level(unsigned i) const {
  const std::uint64_t step = params_.p_pow(params_.n() - i);
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < params_.order_d(); x += step) out.push_back(index(GElement{x, 1}));
  return sorted_unique(std::move(out));
}

std::vector<std::uint64_t> ModelGroup::e_subgroup() const {
  std::vector<std::uint64_t> out;
  for (auto rho : params_.e_units()) out.push_back(index(GElement{0, rho}));
  return sorted_unique(std::move(out));
}

std::vector<std::uint64_t> ModelGroup::d_level_e(unsigned i) const {
  const std::uint64_t step = params_.p_pow(params_.n() - i);
  std::vector<std::uint64_t> out;
  for (auto rho : params_.e_units())
    for (std::uint64_t x = 0; x < params_.order_d(); x += step) out.push_back(index(GElement{x, rho}));
  return sorted_unique(std::move(out));
}

// ---------------------------------------------------------------------------

const char* to_string(ShapeTag tag) noexcept {
  switch (tag) {
    case ShapeTag::TwistedDiagP: return "TwistedDiagP";
    case ShapeTag::TwistedDiagPE: return "TwistedDiagPE";
    case ShapeTag::ExE: return "ExE";
    case ShapeTag::ExOne: return "ExOne";
    case ShapeTag::OneE: return "OneE";
    case ShapeTag::Explicit: return "Explicit";
  }
  return "Unknown";
}

bool SubgroupGG::contains(std::uint64_t code) const {
  return std::binary_search(elements.begin(), elements.end(), code);
}

std::optional<Character> SubgroupGG::character_at(std::uint64_t code) const {
  if (!character) return std::nullopt;
  const auto it = std::lower_bound(elements.begin(), elements.end(), code);
  if (it == elements.end() || *it != code) return std::nullopt;
  return (*character)[static_cast<std::size_t>(it - elements.begin())];
}

namespace {

void check_twist(const ModelGroup& g, unsigned i, std::uint64_t alpha) {
  const auto& params = g.params();
  if (i < 1 || i > params.n()) throw Error(ErrorCode::BadLevel, "twisted diagonal level " + std::to_string(i));
  if (alpha % params.p() == 0) throw Error(ErrorCode::BadInput, "twist " + std::to_string(alpha) + " is not a unit");
}

}  // namespace

SubgroupGG twisted_diag_p(const ModelGroup& g, unsigned i, std::uint64_t alpha) {
  check_twist(g, i, alpha);
  const std::uint64_t pn = g.params().order_d();
  alpha %= g.params().p_pow(i);
  std::vector<std::uint64_t> codes;
  for (auto idx : g.d_level(i)) {
    const GElement y = g.element(idx);
    const GElement ay{static_cast<std::uint64_t>(static_cast<unsigned __int128>(alpha) * y.x % pn), 1};
    codes.push_back(g.pair(g.index(ay), idx));
  }
  return SubgroupGG{Shape{ShapeTag::TwistedDiagP, i, alpha}, sorted_unique(std::move(codes)), std::nullopt};
}

SubgroupGG twisted_diag_pe(const ModelGroup& g, unsigned i, std::uint64_t alpha) {
  check_twist(g, i, alpha);
  const std::uint64_t pn = g.params().order_d();
  alpha %= g.params().p_pow(i);
  std::vector<std::uint64_t> codes;
  for (auto idx : g.d_level_e(i)) {
    const GElement y = g.element(idx);
    const GElement ay{static_cast<std::uint64_t>(static_cast<unsigned __int128>(alpha) * y.x % pn), y.r};
    codes.push_back(g.pair(g.index(ay), idx));
  }
  return SubgroupGG{Shape{ShapeTag::TwistedDiagPE, i, alpha}, sorted_unique(std::move(codes)), std::nullopt};
}

SubgroupGG e_times_e(const ModelGroup& g) {
  std::vector<std::uint64_t> codes;
  const auto e = g.e_subgroup();
  for (auto a : e)
    for (auto b : e) codes.push_back(g.pair(a, b));
  return SubgroupGG{Shape{ShapeTag::ExE, 0, 0}, sorted_unique(std::move(codes)), std::nullopt};
}

SubgroupGG e_times_one(const ModelGroup& g) {
  std::vector<std::uint64_t> codes;
  for (auto a : g.e_subgroup()) codes.push_back(g.pair(a, 0));
  return SubgroupGG{Shape{ShapeTag::ExOne, 0, 0}, sorted_unique(std::move(codes)), std::nullopt};
}

SubgroupGG one_times_e(const ModelGroup& g) {
  std::vector<std::uint64_t> codes;
  for (auto b : g.e_subgroup()) codes.push_back(g.pair(0, b));
  return SubgroupGG{Shape{ShapeTag::OneE, 0, 0}, sorted_unique(std::move(codes)), std::nullopt};
}

Shape recognize_shape(const ModelGroup& g, const std::vector<std::uint64_t>& elements) {
  const auto& params = g.params();
  const std::uint64_t e = params.e();
  if (elements.size() == e * e && elements == e_times_e(g).elements) return Shape{ShapeTag::ExE, 0, 0};
  if (elements.size() == e) {
    if (elements == e_times_one(g).elements) return Shape{ShapeTag::ExOne, 0, 0};
    if (elements == one_times_e(g).elements) return Shape{ShapeTag::OneE, 0, 0};
  }

  // p-part: elements lying in D x D.
  std::vector<std::uint64_t> ppart;
  for (auto code : elements)
    if (g.element(g.first(code)).r == 1 && g.element(g.second(code)).r == 1) ppart.push_back(code);
  unsigned k = 0;
  std::uint64_t size = 1;
  while (size < ppart.size() && k < params.n()) {
    size *= params.p();
    ++k;
  }
  if (k == 0 || size != ppart.size()) return Shape{};

  const std::uint64_t gen = params.p_pow(params.n() - k);
  const std::uint64_t gen_idx = g.index(GElement{gen, 1});
  std::optional<std::uint64_t> alpha;
  for (auto code : ppart)
    if (g.second(code) == gen_idx) {
      const std::uint64_t a = g.element(g.first(code)).x;
      if (a % gen != 0) return Shape{};
      alpha = (a / gen) % params.p_pow(k);
      break;
    }
  if (!alpha || *alpha % params.p() == 0) return Shape{};

  if (elements.size() == size * e && elements == twisted_diag_pe(g, k, *alpha).elements)
    return Shape{ShapeTag::TwistedDiagPE, k, *alpha};
  if (elements.size() == size && elements == twisted_diag_p(g, k, *alpha).elements)
    return Shape{ShapeTag::TwistedDiagP, k, *alpha};
  return Shape{};
}

bool is_subgroup(const ModelGroup& g, const std::vector<std::uint64_t>& elements) {
  if (!std::binary_search(elements.begin(), elements.end(), g.pair(0, 0))) return false;
  auto has = [&](std::uint64_t c) { return std::binary_search(elements.begin(), elements.end(), c); };
  for (auto a : elements) {
    if (!has(g.pair(g.inv(g.first(a)), g.inv(g.second(a))))) return false;
    for (auto b : elements)
      if (!has(g.pair(g.mul(g.first(a), g.first(b)), g.mul(g.second(a), g.second(b))))) return false;
  }
  return true;
}

bool character_is_homomorphism(const ModelGroup& g, const SubgroupGG& s) {
  if (!s.character) return true;
  const auto e = g.params().e();
  for (std::size_t i = 0; i < s.elements.size(); ++i)
    for (std::size_t j = 0; j < s.elements.size(); ++j) {
      const auto a = s.elements[i];
      const auto b = s.elements[j];
      const auto ab = g.pair(g.mul(g.first(a), g.first(b)), g.mul(g.second(a), g.second(b)));
      const auto v = s.character_at(ab);
      if (!v || *v != ((*s.character)[i] + (*s.character)[j]) % e) return false;
    }
  return true;
}

std::vector<std::uint64_t> p1(const ModelGroup& g, const SubgroupGG& s) {
  std::vector<std::uint64_t> out;
  for (auto c : s.elements) out.push_back(g.first(c));
  return sorted_unique(std::move(out));
}

std::vector<std::uint64_t> p2(const ModelGroup& g, const SubgroupGG& s) {
  std::vector<std::uint64_t> out;
  for (auto c : s.elements) out.push_back(g.second(c));
  return sorted_unique(std::move(out));
}

std::vector<std::uint64_t> k1(const ModelGroup& g, const SubgroupGG& s) {
  std::vector<std::uint64_t> out;
  for (auto c : s.elements)
    if (g.second(c) == 0) out.push_back(g.first(c));
  return sorted_unique(std::move(out));
}

std::vector<std::uint64_t> k2(const ModelGroup& g, const SubgroupGG& s) {
  std::vector<std::uint64_t> out;
  for (auto c : s.elements)
    if (g.first(c) == 0) out.push_back(g.second(c));
  return sorted_unique(std::move(out));
}

SubgroupGG star(const ModelGroup& g, const SubgroupGG& x, const SubgroupGG& y) {
  const bool with_char = x.character.has_value() && y.character.has_value();
  const auto e = g.params().e();
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_first;
  for (std::size_t j = 0; j < y.elements.size(); ++j) by_first[g.first(y.elements[j])].push_back(j);

  std::vector<std::pair<std::uint64_t, Character>> out;
  for (std::size_t i = 0; i < x.elements.size(); ++i) {
    const auto it = by_first.find(g.second(x.elements[i]));
    if (it == by_first.end()) continue;
    for (auto j : it->second) {
      const auto code = g.pair(g.first(x.elements[i]), g.second(y.elements[j]));
      const Character v = with_char ? ((*x.character)[i] + (*y.character)[j]) % e : 0;
      out.emplace_back(code, v);
    }
  }
  std::sort(out.begin(), out.end());
  SubgroupGG result;
  std::vector<Character> chars;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i > 0 && out[i].first == out[i - 1].first) {
      if (with_char && out[i].second != out[i - 1].second)
        throw Error(ErrorCode::CharacterIllDefined, "connecting elements give different character values");
      continue;
    }
    result.elements.push_back(out[i].first);
    chars.push_back(out[i].second);
  }
  if (with_char) result.character = std::move(chars);
  result.shape = recognize_shape(g, result.elements);
  return result;
}

SubgroupGG conj(const ModelGroup& g, const GElement& a, const GElement& b, const SubgroupGG& x) {
  const auto ai = g.index(a);
  const auto bi = g.index(b);
  std::vector<std::pair<std::uint64_t, Character>> out;
  for (std::size_t i = 0; i < x.elements.size(); ++i) {
    const auto code = g.pair(g.conj(ai, g.first(x.elements[i])), g.conj(bi, g.second(x.elements[i])));
    out.emplace_back(code, x.character ? (*x.character)[i] : 0);
  }
  std::sort(out.begin(), out.end());
  SubgroupGG result;
  std::vector<Character> chars;
  for (const auto& [code, v] : out) {
    result.elements.push_back(code);
    chars.push_back(v);
  }
  if (x.character) result.character = std::move(chars);
  result.shape = recognize_shape(g, result.elements);

  if (x.shape.tag == ShapeTag::TwistedDiagP) {
    // Conjugating Delta(D_i, alpha, D_i) by (x rho, y sigma) twists alpha to rho alpha sigma^{-1}.
    const auto& params = g.params();
    const std::uint64_t mod = params.p_pow(x.shape.level);
    const std::uint64_t sigma_inv = g.inv(b).r;
    const auto twisted = static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a.r % mod) * x.shape.alpha % mod * (sigma_inv % mod) % mod);
    const Shape predicted{ShapeTag::TwistedDiagP, x.shape.level, twisted};
    if (!(result.shape == predicted))
      throw Error(ErrorCode::Violation, "conjugate of a twisted diagonal has unexpected twist");
  }
  return result;
}

std::vector<DoubleCoset> double_coset_decomposition(const ModelGroup& g, const std::vector<std::uint64_t>& h,
                                                    const std::vector<std::uint64_t>& k) {
  std::vector<GElement> all;
  all.reserve(g.order());
  for (std::uint64_t i = 0; i < g.order(); ++i) all.push_back(g.element(i));
  std::sort(all.begin(), all.end());

  std::vector<bool> seen(g.order(), false);
  std::vector<DoubleCoset> out;
  for (const auto& rep : all) {
    const auto ri = g.index(rep);
    if (seen[ri]) continue;
    DoubleCoset dc{rep, {}};
    for (auto a : h) {
      const auto ar = g.mul(a, ri);
      for (auto b : k) {
        const auto v = g.mul(ar, b);
        if (!seen[v]) {
          seen[v] = true;
          dc.elements.push_back(v);
        }
      }
    }
    std::sort(dc.elements.begin(), dc.elements.end());
    out.push_back(std::move(dc));
  }
  return out;
}

std::vector<GElement> double_cosets(const ModelGroup& g, unsigned i, unsigned j) {
  if (i > g.params().n() || j > g.params().n()) throw Error(ErrorCode::BadLevel, "double coset level");
  std::vector<GElement> reps;
  for (const auto& dc : double_coset_decomposition(g, g.d_level_e(i), g.d_level_e(j))) reps.push_back(dc.rep);
  return reps;
}

}  // namespace tsring
