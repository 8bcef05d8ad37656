#pragma once

// Brute-force checks of the structural laws of G = D x| E and its twisted
// diagonals. Everything is enumerated from GElement arithmetic alone.

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "tsring/groupmodel.hpp"

namespace laws {

using namespace tsring;

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& what) {
    if (ok) detail = what;
    ok = false;
  }
};

inline std::vector<std::uint64_t> units_mod(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t u = 1; u < m; ++u)
    if (std::gcd(u, m) == 1) out.push_back(u);
  if (m == 1) out.push_back(0);
  return out;
}

// {(alpha*y, y) : y in D_i} as sorted pair codes.
inline std::vector<std::uint64_t> twisted_diagonal(const ModelGroup& g, unsigned i, std::uint64_t alpha) {
  const auto& pr = g.params();
  const std::uint64_t pn = pr.order_d(), step = pn / pr.p_pow(i);
  std::vector<std::uint64_t> out;
  for (std::uint64_t y = 0; y < pn; y += step)
    out.push_back(g.pair(g.index(GElement{alpha * y % pn, 1}), g.index(GElement{y, 1})));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::uint64_t> conjugate(const ModelGroup& g, std::uint64_t a, std::uint64_t b,
                                            const std::vector<std::uint64_t>& set) {
  std::vector<std::uint64_t> out;
  out.reserve(set.size());
  for (auto c : set) out.push_back(g.pair(g.conj(a, g.first(c)), g.conj(b, g.second(c))));
  std::sort(out.begin(), out.end());
  return out;
}

inline Outcome frobenius_action(const ModelParams& pr) {
  Outcome out;
  const std::uint64_t pn = pr.order_d();
  for (auto rho : pr.e_units()) {
    if (rho == 1) continue;
    for (std::uint64_t x = 1; x < pn; ++x)
      if (rho * x % pn == x) out.fail("rho=" + std::to_string(rho) + " fixes x=" + std::to_string(x));
  }
  return out;
}

// N(Delta(D_i, alpha, D_i)) = (D x D) Delta(E) for every i >= 1 and every alpha.
inline Outcome normalizer_law(const ModelParams& pr) {
  Outcome out;
  const ModelGroup g(pr);
  const std::uint64_t order = g.order();
  std::vector<std::uint64_t> expected;
  for (std::uint64_t a = 0; a < order; ++a)
    for (std::uint64_t b = 0; b < order; ++b)
      if (g.element(a).r == g.element(b).r) expected.push_back(g.pair(a, b));
  for (unsigned i = 1; i <= pr.n(); ++i)
    for (auto alpha : units_mod(pr.p_pow(i))) {
      const auto x = twisted_diagonal(g, i, alpha);
      std::vector<std::uint64_t> normalizer;
      for (std::uint64_t a = 0; a < order; ++a)
        for (std::uint64_t b = 0; b < order; ++b)
          if (conjugate(g, a, b, x) == x) normalizer.push_back(g.pair(a, b));
      if (normalizer != expected)
        out.fail("normalizer of Delta(D_" + std::to_string(i) + "," + std::to_string(alpha) + ") has order " +
                 std::to_string(normalizer.size()) + ", expected " + std::to_string(expected.size()));
    }
  return out;
}

// Delta(D_i,alpha,D_i) ~ Delta(D_j,beta,D_j) iff i = j and alpha in beta pi_i(E).
inline Outcome conjugacy_law(const ModelParams& pr) {
  Outcome out;
  const ModelGroup g(pr);
  const std::uint64_t order = g.order();
  for (unsigned i = 1; i <= pr.n(); ++i) {
    const std::uint64_t pi_mod = pr.p_pow(i);
    std::set<std::uint64_t> pi_e;
    for (auto rho : pr.e_units()) pi_e.insert(rho % pi_mod);
    for (auto beta : units_mod(pi_mod)) {
      const auto y = twisted_diagonal(g, i, beta);
      std::set<std::vector<std::uint64_t>> orbit;
      for (std::uint64_t a = 0; a < order; ++a)
        for (std::uint64_t b = 0; b < order; ++b) orbit.insert(conjugate(g, a, b, y));
      for (unsigned j = 1; j <= pr.n(); ++j)
        for (auto alpha : units_mod(pr.p_pow(j))) {
          bool predicted = false;
          if (j == i)
            for (auto s : pi_e) predicted = predicted || (beta * s % pi_mod == alpha);
          const bool found = orbit.count(twisted_diagonal(g, j, alpha)) != 0;
          if (found != predicted)
            out.fail("Delta(D_" + std::to_string(j) + "," + std::to_string(alpha) + ") vs Delta(D_" +
                     std::to_string(i) + "," + std::to_string(beta) + ")");
        }
    }
  }
  return out;
}

// D_iE \ G / D_jE: the coset of 1 is D_lE, every other coset has p^l e^2 elements,
// and there are (p^{n-l}-1)/e of them.
inline Outcome double_coset_law(const ModelParams& pr) {
  Outcome out;
  const ModelGroup g(pr);
  for (unsigned i = 0; i <= pr.n(); ++i)
    for (unsigned j = 0; j <= pr.n(); ++j) {
      const unsigned l = std::max(i, j);
      const auto h = g.d_level_e(i), k = g.d_level_e(j), dle = g.d_level_e(l);
      std::vector<bool> seen(g.order(), false);
      std::size_t nontrivial = 0;
      for (std::uint64_t t = 0; t < g.order(); ++t) {
        if (seen[t]) continue;
        std::set<std::uint64_t> coset;
        for (auto a : h)
          for (auto b : k) coset.insert(g.mul(g.mul(a, t), b));
        for (auto c : coset) seen[c] = true;
        const bool trivial = std::binary_search(dle.begin(), dle.end(), t);
        const std::string where = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
        if (trivial) {
          if (std::vector<std::uint64_t>(coset.begin(), coset.end()) != dle) out.fail("trivial coset at " + where);
        } else {
          ++nontrivial;
          if (coset.size() != pr.p_pow(l) * pr.e() * pr.e()) out.fail("coset size at " + where);
        }
      }
      if (nontrivial != (pr.p_pow(pr.n() - l) - 1) / pr.e()) out.fail("coset count at " + std::to_string(i) + "," + std::to_string(j));
    }
  return out;
}

}  // namespace laws
