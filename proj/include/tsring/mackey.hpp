#pragma once

// Independent multiplication oracle: products of basis elements recomputed
// from the tensor-product Mackey formula over explicit double cosets and star
// products. Nothing here uses the closed-form coefficient counts.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "tsring/groupmodel.hpp"
#include "tsring/tring.hpp"

namespace tsring {

struct InducedModule {
  SubgroupGG subgroup;  // carries its character
  std::uint64_t multiplicity = 1;
};

// P(l,m) -> (E x E, (rho,sigma) -> l(rho) - m(sigma));
// M(i,a,l) -> (Delta(D_i E, a~, D_i E), (a~(x rho), x rho) -> l(rho)).
SubgroupGG subgroup_of_basis(const ModelGroup& g, const BasisElement& b);

// z must already be exactly one of the standard shapes (ExE, ExOne, OneE,
// TwistedDiagPE, TwistedDiagP with canonical twist); UnrecognizedShape otherwise.
BasisCombination classify_induced(const ModelGroup& g, const SubgroupGG& z);

struct OracleOptions {
  // Search all of G x G for a conjugator when the direct D x D / E route fails.
  bool brute_force_fallback = false;
};

class MackeyOracle {
 public:
  explicit MackeyOracle(ModelParams params, OracleOptions options = {});

  const ModelGroup& group() const { return group_; }

  BasisCombination mult(const BasisElement& a, const BasisElement& b);

  // Contribution of the double coset of t to Ind_X(chi_X) (x) Ind_Y(chi_Y);
  // empty when the characters disagree on k_2(X) cap k_1(tY).
  BasisCombination term(const SubgroupGG& x, const SubgroupGG& y, const GElement& t);

  // A conjugate of z (character transported) that is exactly a standard shape.
  SubgroupGG canonicalize(const SubgroupGG& z) const;

  const std::vector<DoubleCoset>& double_cosets_for(const SubgroupGG& x, const SubgroupGG& y);

  std::uint64_t vanished_terms() const { return vanished_; }
  std::uint64_t fallback_uses() const { return fallback_uses_; }

 private:
  SubgroupGG brute_force(const SubgroupGG& z) const;

  ModelGroup group_;
  OracleOptions options_;
  std::map<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>, std::vector<DoubleCoset>> cache_;
  std::uint64_t vanished_ = 0;
  mutable std::uint64_t fallback_uses_ = 0;
};

BasisCombination oracle_mult(const ModelParams& params, const BasisElement& a, const BasisElement& b);

}  // namespace tsring
