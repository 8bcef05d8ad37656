#pragma once

// The model group G = D x| E with D = Z/p^n (written additively) and E the
// subgroup of order e of Aut(D) = (Z/p^n)^x, together with the subgroup
// calculus of G x G used by the Mackey oracle.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tsring/error.hpp"

namespace tsring {

// Elements of the character group Hom(E, F^x) ~ Z/e, written additively.
using Character = std::uint32_t;

class ModelParams {
 public:
  std::uint32_t p() const { return impl_->p; }
  std::uint32_t n() const { return impl_->n; }
  std::uint32_t e() const { return impl_->e; }

  // p^i for 0 <= i <= n.
  std::uint64_t p_pow(unsigned i) const;
  std::uint64_t order_d() const { return impl_->pn; }
  std::uint64_t group_order() const { return impl_->pn * impl_->e; }
  // m = (p^n - 1) / e
  std::uint64_t m() const { return (impl_->pn - 1) / impl_->e; }
  // m_i = (p^{n-i} - 1) / e
  std::uint64_t m_level(unsigned i) const;
  // |Aut(D_i)| = p^{i-1}(p-1)
  std::uint64_t aut_order(unsigned i) const;

  // E as units mod p^n: e_units()[k] = g^k for the generator g.
  const std::vector<std::uint64_t>& e_units() const { return impl_->e_units; }
  std::uint64_t e_generator() const { return impl_->e_units.size() > 1 ? impl_->e_units[1] : 1; }
  bool in_e(std::uint64_t unit) const { return impl_->log.count(unit) != 0; }
  // Discrete log of a unit of E with respect to e_generator().
  std::uint32_t e_log(std::uint64_t unit) const;
  // lambda(rho) for a character lambda and rho in E.
  Character eval(Character lambda, std::uint64_t rho) const;

  std::string to_string() const;

  friend bool operator==(const ModelParams& a, const ModelParams& b) {
    return a.p() == b.p() && a.n() == b.n() && a.e() == b.e();
  }

 private:
  struct Impl {
    std::uint32_t p = 0, n = 0, e = 0;
    std::uint64_t pn = 0;
    std::vector<std::uint64_t> e_units;
    std::unordered_map<std::uint64_t, std::uint32_t> log;
  };
  explicit ModelParams(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;

  friend ModelParams make_params(std::uint32_t p, std::uint32_t n, std::uint32_t e);
};

// Errors: NotPrime, BadOrder (e does not divide p-1), TwoBlocked (p = 2, e > 1).
ModelParams make_params(std::uint32_t p, std::uint32_t n, std::uint32_t e);

// Smallest primitive root modulo p^n (p odd).
std::uint64_t primitive_root(std::uint64_t p, unsigned n);

// Restriction pi_i of a unit mod p^j to a unit mod p^i. BadLevel unless 1 <= i <= j <= n.
std::uint64_t pi(const ModelParams& params, unsigned i, unsigned j, std::uint64_t unit);

// pi_i(E) as a sorted set of units mod p^i.
std::vector<std::uint64_t> pi_e(const ModelParams& params, unsigned i);

// A coset alpha * pi_i(E) in Aut(D_i), stored by its least positive member.
struct AutCoset {
  unsigned level = 0;
  std::uint64_t rep = 1;
  auto operator<=>(const AutCoset&) const = default;
};

AutCoset canonical_coset(const ModelParams& params, unsigned i, std::uint64_t unit);
// All cosets of Aut(D_i)/pi_i(E), ordered by representative.
std::vector<AutCoset> aut_cosets(const ModelParams& params, unsigned i);

// x + r where x in D (residue mod p^n) and r in E (unit mod p^n).
struct GElement {
  std::uint64_t x = 0;
  std::uint64_t r = 1;
  auto operator<=>(const GElement&) const = default;
};

// Indexed view of G; element indices are log(r) * p^n + x.
class ModelGroup {
 public:
  explicit ModelGroup(ModelParams params);

  const ModelParams& params() const { return params_; }
  std::uint64_t order() const { return order_; }

  GElement element(std::uint64_t index) const;
  std::uint64_t index(const GElement& g) const;
  GElement mul(const GElement& a, const GElement& b) const;
  GElement inv(const GElement& a) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return index(mul(element(a), element(b))); }
  std::uint64_t inv(std::uint64_t a) const { return index(inv(element(a))); }
  std::uint64_t conj(std::uint64_t g, std::uint64_t a) const { return mul(mul(g, a), inv(g)); }

  // Element indices of D_i, E and D_i E (sorted).
  std::vector<std::uint64_t> d_level(unsigned i) const;
  std::vector<std::uint64_t> e_subgroup() const;
  std::vector<std::uint64_t> d_level_e(unsigned i) const;

  // Codes for elements of G x G.
  std::uint64_t pair(std::uint64_t a, std::uint64_t b) const { return a * order_ + b; }
  std::uint64_t first(std::uint64_t code) const { return code / order_; }
  std::uint64_t second(std::uint64_t code) const { return code % order_; }

 private:
  ModelParams params_;
  std::uint64_t order_;
};

// Subgroups of G x G.

enum class ShapeTag { TwistedDiagP, TwistedDiagPE, ExE, ExOne, OneE, Explicit };

const char* to_string(ShapeTag tag) noexcept;

// Structural tag. For the twisted diagonals, level is i and alpha a unit mod
// p^i: TwistedDiagP = Delta(D_i, alpha, D_i), TwistedDiagPE = Delta(D_i E, alpha~, D_i E).
struct Shape {
  ShapeTag tag = ShapeTag::Explicit;
  unsigned level = 0;
  std::uint64_t alpha = 0;
  friend bool operator==(const Shape&, const Shape&) = default;
};

struct SubgroupGG {
  Shape shape;
  std::vector<std::uint64_t> elements;  // sorted pair codes
  // Linear character as values in Z/e, aligned with elements.
  std::optional<std::vector<Character>> character;

  std::size_t size() const { return elements.size(); }
  bool contains(std::uint64_t code) const;
  // Character value at an element; nullopt if absent or no character.
  std::optional<Character> character_at(std::uint64_t code) const;
};

SubgroupGG twisted_diag_p(const ModelGroup& g, unsigned i, std::uint64_t alpha);
SubgroupGG twisted_diag_pe(const ModelGroup& g, unsigned i, std::uint64_t alpha);
SubgroupGG e_times_e(const ModelGroup& g);
SubgroupGG e_times_one(const ModelGroup& g);
SubgroupGG one_times_e(const ModelGroup& g);

// Exact (not up to conjugacy) recognition of the standard shapes.
Shape recognize_shape(const ModelGroup& g, const std::vector<std::uint64_t>& elements);

bool is_subgroup(const ModelGroup& g, const std::vector<std::uint64_t>& elements);
bool character_is_homomorphism(const ModelGroup& g, const SubgroupGG& s);

// Projections p_1, p_2 and kernels k_1, k_2 (sorted element indices of G).
std::vector<std::uint64_t> p1(const ModelGroup& g, const SubgroupGG& s);
std::vector<std::uint64_t> p2(const ModelGroup& g, const SubgroupGG& s);
std::vector<std::uint64_t> k1(const ModelGroup& g, const SubgroupGG& s);
std::vector<std::uint64_t> k2(const ModelGroup& g, const SubgroupGG& s);

// X * Y = {(g,k) : (g,h) in X, (h,k) in Y for some h}. When both carry a
// character the result carries (g,k) -> chi_X(g,h) + chi_Y(h,k); throws
// CharacterIllDefined if two connecting elements disagree.
SubgroupGG star(const ModelGroup& g, const SubgroupGG& x, const SubgroupGG& y);

// (a,b) X (a,b)^{-1}, character transported.
SubgroupGG conj(const ModelGroup& g, const GElement& a, const GElement& b, const SubgroupGG& x);

struct DoubleCoset {
  GElement rep;                         // lexicographically least member
  std::vector<std::uint64_t> elements;  // sorted
};

// H\G/K, ordered by representative (the trivial coset comes first).
std::vector<DoubleCoset> double_coset_decomposition(const ModelGroup& g, const std::vector<std::uint64_t>& h,
                                                    const std::vector<std::uint64_t>& k);

// Representatives of D_i E \ G / D_j E.
std::vector<GElement> double_cosets(const ModelGroup& g, unsigned i, unsigned j);

}  // namespace tsring
