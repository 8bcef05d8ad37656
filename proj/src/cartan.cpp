#include "tsring/cartan.hpp"

namespace tsring {

IntMatrix cartan_matrix(const ModelParams& params) {
  const std::size_t l = params.e();
  const Integer m(static_cast<unsigned long>(params.m()));
  IntMatrix c(l, l, m);
  for (std::size_t i = 0; i < l; ++i) c(i, i) += 1;
  return c;
}

std::vector<IdempotentCertificate> certify_idempotents(const IntMatrix& c, const std::vector<IntMatrix>& family) {
  const IntegerRing z;
  const TwistedMatRing<IntegerRing> ring(z, c);
  const auto units = unit_matrices(z, c.rows());
  std::vector<IdempotentCertificate> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    IdempotentCertificate cert;
    cert.element = family[i];
    cert.idempotent = ring.mult(family[i], family[i]) == family[i];
    for (std::size_t j = 0; j < family.size(); ++j) {
      if (j == i) continue;
      if (is_zero_matrix(z, ring.mult(family[i], family[j])) && is_zero_matrix(z, ring.mult(family[j], family[i])))
        cert.orthogonal_to.push_back(j);
    }
    // Corner x R x, flattened row by row.
    IntMatrix corner(units.size(), c.rows() * c.cols(), Integer(0));
    for (std::size_t u = 0; u < units.size(); ++u) {
      const auto v = ring.mult(ring.mult(family[i], units[u]), family[i]);
      for (std::size_t t = 0; t < v.data().size(); ++t) corner(u, t) = v.data()[t];
    }
    cert.rank_one_corner = rational_rank(corner) == 1;
    out.push_back(std::move(cert));
  }
  return out;
}

bool certificates_pass(const std::vector<IdempotentCertificate>& certs) {
  for (const auto& cert : certs)
    if (!cert.idempotent || cert.orthogonal_to.size() + 1 != certs.size() || !cert.rank_one_corner.value_or(false))
      return false;
  return true;
}

TheoremAResult theorem_a_idempotents(const IntMatrix& c) {
  const IntegerRing z;
  TheoremAResult result;
  result.snf = snf(c);
  result.snf_verified = verify_snf(c, result.snf);
  const auto diag = result.snf.diagonal();
  const std::size_t l = c.rows();

  // D = U C V, so C = U^{-1} D V^{-1}: r -> V^{-1} r U^{-1} maps R_C onto R_D.
  const RcIso<IntegerRing> iso(z, c, unimodular_inverse(result.snf.u), unimodular_inverse(result.snf.v));
  std::vector<IntMatrix> family;
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < diag.size(); ++i)
    if (diag[i] == 1) {
      IntMatrix eii(l, l, Integer(0));
      eii(i, i) = 1;
      family.push_back(multiply(multiply(result.snf.v, eii), result.snf.u));
      positions.push_back(i);
    }
  result.r = family.size();
  result.images_are_units = iso.target_twist() == result.snf.d;
  for (std::size_t t = 0; t < family.size(); ++t) {
    IntMatrix eii(l, l, Integer(0));
    eii(positions[t], positions[t]) = 1;
    if (iso.apply(family[t]) != eii) result.images_are_units = false;
  }
  result.idempotents = certify_idempotents(c, family);
  return result;
}

std::vector<IntMatrix> example_epsilons(std::size_t l) {
  std::vector<IntMatrix> out;
  for (std::size_t i = 0; i + 1 < l; ++i) {
    IntMatrix m(l, l, Integer(0));
    m(i, i) = 1;
    m(l - 1, i) = -1;
    out.push_back(std::move(m));
  }
  return out;
}

std::size_t rank_mod(const IntMatrix& c, std::uint64_t q) {
  const PrimeField f(q);
  return rank(f, map_matrix(f, c));
}

bool pr_identity_integral(const IntMatrix& c) {
  const RationalField qf;
  const auto inv = inverse(qf, map_matrix(qf, c));
  for (const auto& v : inv.data())
    if (v.get_den() != 1) return false;
  return true;
}

}  // namespace tsring
