// One line per acceptance criterion over the instance set; exit status 1 if any fails.

#include <array>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "group_laws.hpp"
#include "tsring/blocks.hpp"
#include "tsring/cartan.hpp"
#include "tsring/mackey.hpp"
#include "tsring/report.hpp"
#include "tsring/snf.hpp"

using namespace tsring;

namespace {

const std::vector<std::array<std::uint32_t, 3>> kInstances = {
    {3, 1, 1}, {2, 2, 1}, {2, 3, 1}, {3, 2, 2}, {5, 1, 2}, {5, 1, 4}, {5, 2, 4}, {7, 1, 6}, {7, 2, 3}, {13, 1, 4}};

struct Result {
  bool ok = true;
  std::vector<std::string> notes;
  std::vector<std::string> failures;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      failures.push_back(what);
    }
  }
};

std::string name(const ModelParams& pr) { return pr.to_string(); }

std::map<BasisElement, std::int64_t> collect(const BasisCombination& c) {
  std::map<BasisElement, std::int64_t> out;
  for (const auto& [b, v] : c) out[b] += v;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

std::vector<std::uint64_t> other_primes(std::uint32_t p, std::initializer_list<std::uint64_t> qs) {
  std::vector<std::uint64_t> out;
  for (auto q : qs)
    if (q != p) out.push_back(q);
  return out;
}

Result oracle_equivalence() {
  Result r;
  std::size_t products = 0;
  double slowest = 0;
  for (const auto& [p, n, e] : kInstances) {
    const auto pr = make_params(p, n, e);
    const auto t0 = std::chrono::steady_clock::now();
    MackeyOracle oracle(pr);
    const auto bs = basis(pr);
    std::size_t bad = 0;
    for (const auto& a : bs)
      for (const auto& b : bs) {
        ++products;
        if (collect(oracle.mult(a, b)) != collect(mult_basis(pr, a, b))) ++bad;
      }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    slowest = std::max(slowest, secs);
    r.require(bad == 0, name(pr) + ": " + std::to_string(bad) + " mismatched products");
    r.require(secs < 60, name(pr) + ": oracle took more than 60 s");
  }
  r.notes.push_back(std::to_string(products) + " products");
  std::ostringstream s;
  s.precision(2);
  s << std::fixed << "slowest instance " << slowest << " s";
  r.notes.push_back(s.str());
  return r;
}

Result ring_axioms() {
  Result r;
  std::size_t triples = 0;
  for (const auto& [p, n, e] : kInstances) {
    const auto ring = make_ring(make_params(p, n, e));
    const std::size_t d = ring->dim(), one = ring->identity_index();
    r.require(ring->element(one) == BasisElement{NonProj{n, 1, 0}}, name(ring->params()) + ": identity index");
    for (std::size_t a = 0; a < d; ++a) {
      const std::vector<Term> unit{Term{a, 1}};
      r.require(ring->product(one, a) == unit && ring->product(a, one) == unit,
                name(ring->params()) + ": identity law at " + to_string(ring->element(a)));
      for (std::size_t b = 0; b < d; ++b)
        for (const Term& t : ring->product(a, b)) r.require(t.coeff > 0, name(ring->params()) + ": negative coefficient");
    }
    if (d > 20) continue;
    const IntegerRing z;
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        const auto ab = mult(basis_element(ring, z, a), basis_element(ring, z, b));
        for (std::size_t c = 0; c < d; ++c) {
          ++triples;
          const auto bc = mult(basis_element(ring, z, b), basis_element(ring, z, c));
          r.require(mult(ab, basis_element(ring, z, c)) == mult(basis_element(ring, z, a), bc),
                    name(ring->params()) + ": associativity");
        }
      }
  }
  r.notes.push_back(std::to_string(triples) + " triples");
  return r;
}

Result grading() {
  Result r;
  for (const auto& [p, n, e] : kInstances) {
    const auto ring = make_ring(make_params(p, n, e));
    const auto tag = name(ring->params());
    for (unsigned i = 0; i <= n; ++i) r.require(verify_two_sided_ideal(*ring, i), tag + ": T_<=" + std::to_string(i));
    const IntegerRing z;
    for (std::size_t a = 0; a < ring->dim(); ++a)
      for (std::size_t b = 0; b < ring->dim(); ++b) {
        if (ring->level(a) == 0 || ring->level(b) == 0) continue;
        const unsigned k = std::min(ring->level(a), ring->level(b));
        bool on_level = !ring->product(a, b).empty();
        for (const Term& t : ring->product(a, b)) on_level = on_level && ring->level(t.index) == k;
        r.require(on_level, tag + ": level of " + to_string(ring->element(a)) + "*" + to_string(ring->element(b)));
        r.require(ring->product(a, b) == ring->product(b, a), tag + ": NonProj commutator");
        const auto x = basis_element(ring, z, a), y = basis_element(ring, z, b);
        r.require(sub(quotient_mult(0, x, y), quotient_mult(0, y, x)).is_zero(), tag + ": quotient commutator");
      }
  }
  return r;
}

Result smith_forms() {
  Result r;
  for (const auto& [p, n, e] : kInstances) {
    const auto pr = make_params(p, n, e);
    const auto c = cartan_matrix(pr);
    const auto s = snf(c);
    std::vector<Integer> want(e, Integer(1));
    want.back() = Integer(static_cast<unsigned long>(pr.order_d()));
    r.require(verify_snf(c, s) && s.diagonal() == want, name(pr) + ": Smith form of the Cartan matrix");
  }
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> dist(-4, 4);
  for (int t = 0; t < 100; ++t) {
    const std::size_t l = t % 2 == 0 ? 3 : 4;
    IntMatrix b(l, l, Integer(0));
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < l; ++j) b(i, j) = dist(rng);
    IntMatrix c = multiply(transpose(b), b);
    for (std::size_t i = 0; i < l; ++i) c(i, i) += 1;
    r.require(verify_snf(c, snf(c)), "random SPD matrix " + std::to_string(t));
  }
  r.notes.push_back("100 random SPD matrices");
  return r;
}

Result theorem_a() {
  Result r;
  for (const auto& [p, n, e] : kInstances) {
    const auto pr = make_params(p, n, e);
    const auto c = cartan_matrix(pr);
    const auto res = theorem_a_idempotents(c);
    r.require(res.snf_verified, name(pr) + ": Smith certificate");
    r.require(res.r == e - 1, name(pr) + ": r = e-1");
    r.require(res.images_are_units, name(pr) + ": images are unit matrices");
    r.require(certificates_pass(res.idempotents), name(pr) + ": Smith-form idempotents");
    r.require(certificates_pass(certify_idempotents(c, example_epsilons(e))), name(pr) + ": explicit epsilons");
  }
  return r;
}

template <class K>
void theorem_b_over(Result& r, const RingPtr& ring, const K& k) {
  const auto& pr = ring->params();
  const std::string tag = name(pr) + " over " + k.name();
  const auto c = cartan_matrix(pr);
  const auto one = pr_element(ring, k, pr_identity_over_k(c, k));
  r.require(mult(one, one) == one, tag + ": identity of kPr is idempotent");
  for (std::size_t b = 0; b < ring->dim(); ++b) {
    const auto x = basis_element(ring, k, b);
    r.require(mult(one, x) == mult(x, one), tag + ": identity of kPr central against " + to_string(ring->element(b)));
  }
  // Pr -> Mat_e(k)_C -> Mat_e(k), r -> rC, on all e^4 pairs of unit matrices
  const auto kc = map_matrix(k, c);
  const auto iso = rc_iso(k, kc, kc, identity_matrix(k, pr.e()));
  const TwistedMatRing<K> twisted(k, kc);
  const auto units = unit_matrices(k, pr.e());
  r.require(iso.verify(units), tag + ": rC is multiplicative with exact inverse");
  for (const auto& a : units)
    for (const auto& b : units)
      r.require(pr_element(ring, k, twisted.mult(a, b)) == mult(pr_element(ring, k, a), pr_element(ring, k, b)),
                tag + ": Pr matches the twisted matrix ring");
}

Result theorem_b() {
  Result r;
  for (const auto& [p, n, e] : kInstances) {
    const auto ring = make_ring(make_params(p, n, e));
    theorem_b_over(r, ring, RationalField{});
    for (auto q : other_primes(p, {2, 5, 7})) theorem_b_over(r, ring, PrimeField(q));
  }
  return r;
}

Result theorem_c() {
  Result r;
  for (const auto& [p, n, e] : kInstances) {
    const auto ring = make_ring(make_params(p, n, e));
    const auto tag = name(ring->params());
    const auto res = theorem_c_decomposition(ring);
    r.require(res.members.size() == e, tag + ": l members");
    r.require(res.idempotent && res.orthogonal, tag + ": orthogonal idempotents");
    r.require(res.sums_to_one, tag + ": sum is 1");
    r.require(res.outside_pr <= 1, tag + ": at most one member outside Pr");
    try {
      const auto scan = rational_central_idempotent_scan(ring);
      r.require(scan.only_zero_and_one, tag + ": integral central idempotents other than 0, 1");
    } catch (const Error& err) {
      if (err.code() != ErrorCode::ScanTooLarge) throw;
      r.notes.push_back(tag + " scan beyond bound");
    }
  }
  r.notes.push_back("r <= l out of verification scope");
  return r;
}

template <class K>
void theorem_d_over(Result& r, const RingPtr& ring, const K& k) {
  const auto& pr = ring->params();
  const std::string tag = name(pr) + " over " + k.name();
  try {
    const auto dec = central_decomposition(ring, k);
    r.require(dec.dims == dec.expected_dims, tag + ": block dimensions");
    for (unsigned i = 1; i <= pr.n(); ++i) {
      const auto cert = block_iso_i(ring, k, i, dec);
      r.require(cert.multiplicative && cert.bijective && cert.identity_preserved && cert.group_multiplicative,
                tag + ": block isomorphism " + std::to_string(i));
      r.require(cert.unit_inverse, tag + ": c_i d_i = 1 at level " + std::to_string(i));
    }
    const auto cert0 = block_iso_0(ring, k, dec);
    r.require(cert0.multiplicative && cert0.bijective && cert0.identity_preserved, tag + ": block isomorphism 0");
  } catch (const Error& err) {
    r.require(false, tag + ": " + err.what());
  }
}

Result theorem_d() {
  Result r;
  for (const auto& [p, n, e] : kInstances) {
    const auto ring = make_ring(make_params(p, n, e));
    r.require(level_index_identity_holds(ring->params()), name(ring->params()) + ": level index identity");
    theorem_d_over(r, ring, RationalField{});
    for (auto q : other_primes(p, {2, 3, 5, 7, 11, 13})) theorem_d_over(r, ring, PrimeField(q));
  }
  return r;
}

Result semisimplicity_grid() {
  Result r;
  std::size_t cells = 0;
  for (const auto& [p, n, e] : kInstances) {
    const auto ring = make_ring(make_params(p, n, e));
    for (std::uint64_t q : std::set<std::uint64_t>{0, 2, 3, 5, 7, p}) {
      ++cells;
      const auto res = semisimplicity_decide(ring, q);
      const std::string cell = name(ring->params()) + " q=" + std::to_string(q);
      r.require(res.decision != Decision::Inconclusive, cell + ": inconclusive");
      if (res.decision == Decision::Inconclusive) continue;
      const bool semisimple = res.decision == Decision::Semisimple;
      r.require(semisimple == res.expected, cell + ": decided " + to_string(res.decision) + " by " + res.method +
                                                ", expected " + (res.expected ? "Semisimple" : "NotSemisimple"));
    }
  }
  r.notes.push_back(std::to_string(cells) + " cells");
  return r;
}

Result group_laws() {
  Result r;
  for (const auto& [p, n, e] : kInstances) {
    const auto pr = make_params(p, n, e);
    if (pr.group_order() > 150) continue;
    for (const auto& [label, check] : std::vector<std::pair<std::string, std::function<laws::Outcome(const ModelParams&)>>>{
             {"Frobenius action", laws::frobenius_action},
             {"normalizers", laws::normalizer_law},
             {"conjugacy", laws::conjugacy_law},
             {"double cosets", laws::double_coset_law}}) {
      const auto out = check(pr);
      r.require(out.ok, name(pr) + ": " + label + " " + out.detail);
    }
  }
  return r;
}

Result determinism() {
  Result r;
  VerifyOptions opts;
  opts.fields = parse_fields("Q,F2,F5");
  for (const auto& [p, n, e] : kInstances) {
    const auto a = cmd_verify(p, n, e, opts);
    const auto b = cmd_verify(p, n, e, opts);
    r.require(a.text == b.text && a.exit_code == b.exit_code, make_params(p, n, e).to_string() + ": reports differ");
  }
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"ring axioms", ring_axioms},
      {"grading and ideals", grading},
      {"Smith normal form", smith_forms},
      {"Smith-form idempotents of the twisted matrix ring", theorem_a},
      {"identity of kPr and the twisted matrix isomorphism", theorem_b},
      {"integral idempotent decomposition and central scan", theorem_c},
      {"central block decomposition", theorem_d},
      {"semisimplicity grid", semisimplicity_grid},
      {"group-model laws", group_laws},
      {"determinism", determinism},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result res;
    try {
      res = criteria[i].second();
    } catch (const std::exception& ex) {
      res.require(false, std::string("exception: ") + ex.what());
    }
    all = all && res.ok;
    std::cout << (res.ok ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first;
    if (!res.notes.empty()) {
      std::cout << " (";
      for (std::size_t k = 0; k < res.notes.size(); ++k) std::cout << (k ? "; " : "") << res.notes[k];
      std::cout << ")";
    }
    std::cout << "\n";
    const std::size_t shown = std::min<std::size_t>(res.failures.size(), 10);
    for (std::size_t k = 0; k < shown; ++k) std::cout << "      " << res.failures[k] << "\n";
    if (res.failures.size() > shown) std::cout << "      ... " << res.failures.size() - shown << " more\n";
    std::cout.flush();
  }
  return all ? 0 : 1;
}
