#include "tsring/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "tsring/blocks.hpp"
#include "tsring/cartan.hpp"
#include "tsring/mackey.hpp"
#include "tsring/serialize.hpp"

namespace tsring {

namespace {

constexpr std::size_t kMaxListedViolations = 20;

Json params_json(std::uint32_t p, std::uint32_t n, std::uint32_t e) {
  return Json{{"p", std::to_string(p)}, {"n", std::to_string(n)}, {"e", std::to_string(e)}};
}

Json base_report(const std::string& command, std::uint32_t p, std::uint32_t n, std::uint32_t e) {
  return Json{{"schema", "tsring/1"}, {"command", command}, {"params", params_json(p, n, e)}};
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

CommandOutput usage_error(const std::string& command, std::uint32_t p, std::uint32_t n, std::uint32_t e,
                          const Error& err) {
  Json r = base_report(command, p, n, e);
  r["status"] = "error";
  r["error"] = Json{{"code", to_string(err.code())}, {"message", err.what()}};
  return CommandOutput{render(r), kExitUsage};
}

bool is_usage_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::BadInput:
    case ErrorCode::NotPrime:
    case ErrorCode::BadOrder:
    case ErrorCode::TwoBlocked:
    case ErrorCode::BadLevel:
      return true;
    default:
      return false;
  }
}

// Collects violations for one check; status is derived at the end.
struct CheckLog {
  Json violations = Json::array();
  std::size_t violation_count = 0;
  bool inconclusive = false;

  void fail(const std::string& identity, const Json& lhs = nullptr, const Json& rhs = nullptr) {
    ++violation_count;
    if (violations.size() >= kMaxListedViolations) return;
    Json v{{"identity", identity}};
    if (!lhs.is_null()) v["lhs"] = lhs;
    if (!rhs.is_null()) v["rhs"] = rhs;
    violations.push_back(std::move(v));
  }
  void expect(bool ok, const std::string& identity) {
    if (!ok) fail(identity);
  }
  std::string status() const {
    if (violation_count > 0) return "violation";
    return inconclusive ? "inconclusive" : "ok";
  }
  void finish(Json& payload) const {
    payload["status"] = status();
    payload["violations"] = violations;
    payload["violation_count"] = std::to_string(violation_count);
  }
};

template <class F>
void with_field(const FieldSpec& spec, F&& f) {
  if (spec.characteristic == 0)
    f(RationalField{});
  else
    f(PrimeField(spec.characteristic));
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------------------

Json check_oracle(const RingPtr& ring, CheckLog& log) {
  MackeyOracle oracle(ring->params());
  std::uint64_t compared = 0;
  for (const auto& a : ring->basis())
    for (const auto& b : ring->basis()) {
      ++compared;
      const auto closed = mult_basis(ring->params(), a, b);
      try {
        const auto via_oracle = oracle.mult(a, b);
        if (via_oracle != closed)
          log.fail(to_string(a) + " * " + to_string(b), to_json(closed), to_json(via_oracle));
      } catch (const Error& err) {
        log.fail(to_string(a) + " * " + to_string(b), to_json(closed), std::string(err.what()));
      }
    }
  return Json{{"products_compared", std::to_string(compared)},
              {"vanished_terms", std::to_string(oracle.vanished_terms())}};
}

using Sparse = std::map<std::size_t, std::int64_t>;

Sparse times(const TRing& ring, const Sparse& x, std::size_t c, bool right) {
  Sparse out;
  for (const auto& [a, v] : x)
    for (const Term& t : right ? ring.product(a, c) : ring.product(c, a)) out[t.index] += v * t.coeff;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

Sparse to_sparse(const std::vector<Term>& terms) {
  Sparse s;
  for (const Term& t : terms) s[t.index] += t.coeff;
  return s;
}

Json check_ring_axioms(const RingPtr& ring, CheckLog& log) {
  const TRing& r = *ring;
  const std::size_t dim = r.dim();
  const auto& params = r.params();
  const auto label = [&](std::size_t i) { return to_string(r.element(i)); };

  std::uint64_t triples = 0;
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      const Sparse ab = to_sparse(r.product(a, b));
      for (std::size_t c = 0; c < dim; ++c) {
        ++triples;
        const Sparse left = times(r, ab, c, true);
        const Sparse right = times(r, to_sparse(r.product(b, c)), a, false);
        if (left != right) log.fail("(" + label(a) + " * " + label(b) + ") * " + label(c) + " = " + label(a) + " * (" +
                                    label(b) + " * " + label(c) + ")");
      }
    }

  const std::size_t one = r.identity_index();
  bool nonneg = true;
  for (std::size_t a = 0; a < dim; ++a) {
    const Sparse unit{{a, 1}};
    if (to_sparse(r.product(one, a)) != unit || to_sparse(r.product(a, one)) != unit)
      log.fail("1 * " + label(a) + " = " + label(a) + " = " + label(a) + " * 1");
    for (std::size_t b = 0; b < dim; ++b)
      for (const Term& t : r.product(a, b))
        if (t.coeff <= 0) nonneg = false;
  }
  log.expect(nonneg, "all structure constants are nonnegative integers");

  for (unsigned i = 0; i <= params.n(); ++i)
    log.expect(verify_two_sided_ideal(r, i), "T_{<=" + std::to_string(i) + "} is a two-sided ideal");

  const IntegerRing z;
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      const auto& prod = r.product(a, b);
      const unsigned la = r.level(a), lb = r.level(b);
      if (la == 0 || lb == 0) {
        for (const Term& t : prod)
          if (r.level(t.index) != 0) log.fail(label(a) + " * " + label(b) + " is supported on projectives");
        continue;
      }
      const unsigned k = std::min(la, lb);
      bool graded = !prod.empty();
      for (const Term& t : prod)
        if (r.level(t.index) != k) graded = false;
      log.expect(graded, label(a) + " * " + label(b) + " is supported on level " + std::to_string(k));
      if (to_sparse(prod) != to_sparse(r.product(b, a)))
        log.fail(label(a) + " * " + label(b) + " = " + label(b) + " * " + label(a));
      const auto x = basis_element(ring, z, a);
      const auto y = basis_element(ring, z, b);
      if (!sub(quotient_mult(0, x, y), quotient_mult(0, y, x)).is_zero())
        log.fail("[" + label(a) + ", " + label(b) + "] = 0 in T/Pr");
    }
  return Json{{"dimension", std::to_string(dim)},
              {"triples_checked", std::to_string(triples)},
              {"identity", to_json(r.element(one))}};
}

Json check_theorem_a(const RingPtr& ring, CheckLog& log) {
  const auto& params = ring->params();
  const IntMatrix c = cartan_matrix(params);
  const auto res = theorem_a_idempotents(c);
  const auto eps = certify_idempotents(c, example_epsilons(params.e()));

  log.expect(res.snf_verified, "D = U C V with unimodular U, V and a divisibility chain");
  const auto diag = res.snf.diagonal();
  bool special_form = !diag.empty();
  for (std::size_t i = 0; i < diag.size(); ++i)
    special_form = special_form && diag[i] == (i + 1 == diag.size() ? Integer(static_cast<unsigned long>(params.order_d())) : Integer(1));
  log.expect(special_form, "SNF(C) = diag(1, ..., 1, p^n)");
  log.expect(res.r + 1 == params.e(), "r = e - 1");
  log.expect(certificates_pass(res.idempotents), "Smith-form idempotents are orthogonal with rank-one corners");
  log.expect(res.images_are_units, "rc_iso images of the idempotents are the E_ii");
  log.expect(certificates_pass(eps), "eps_i = [P_ii] - [P_li] are orthogonal idempotents with rank-one corners");
  const std::size_t rank_p = rank_mod(c, params.p());
  log.expect(rank_p == res.r, "rank of C mod p equals r");
  const IntMatrix id = identity_matrix(IntegerRing{}, params.e());
  log.expect(pr_identity_integral(c) == (res.r == params.e()), "1_Pr integral iff all elementary divisors are 1");
  log.expect(pr_identity_integral(id), "1_Pr integral for C = I");

  Json idems = Json::array();
  for (const auto& cert : res.idempotents) idems.push_back(to_json(cert.element));
  Json epsj = Json::array();
  for (const auto& cert : eps) epsj.push_back(to_json(cert.element));
  Json diag_j = Json::array();
  for (const auto& d : diag) diag_j.push_back(d.get_str());
  return Json{{"cartan", to_json(c)},
              {"elementary_divisors", diag_j},
              {"u", to_json(res.snf.u)},
              {"v", to_json(res.snf.v)},
              {"r", std::to_string(res.r)},
              {"idempotents", idems},
              {"epsilons", epsj},
              {"rank_mod_p", std::to_string(rank_p)},
              {"maximality", "partial: rank of C mod p compared with r"}};
}

template <class K>
Json theorem_b_for(const RingPtr& ring, const K& k, CheckLog& log) {
  const auto& params = ring->params();
  const std::string tag = " over " + k.name();
  const IntMatrix c_int = cartan_matrix(params);
  const auto c = map_matrix(k, c_int);
  const auto one_m = pr_identity_over_k(c_int, k);
  const auto one = pr_element(ring, k, one_m);

  log.expect(mult(one, one) == one, "1_Pr idempotent" + tag);
  bool acts = true;
  for (Character l = 0; l < params.e(); ++l)
    for (Character m = 0; m < params.e(); ++m) {
      const auto x = basis_element(ring, k, ring->index_of(ProjPair{l, m}));
      acts = acts && mult(one, x) == x && mult(x, one) == x;
    }
  log.expect(acts, "1_Pr acts as identity on every [P_ij]" + tag);
  log.expect(centrality_check_pr_identity(ring, k), "1_Pr central in kT" + tag);

  // Example formula sum_i P_ii - (m/p^n) sum P_ij.
  RingElement<K> formula(ring, k);
  const auto coef = k.from_rational(Rational(-static_cast<long>(params.m()), static_cast<unsigned long>(params.order_d())));
  for (Character l = 0; l < params.e(); ++l)
    for (Character m = 0; m < params.e(); ++m) {
      formula.add_term(ring->index_of(ProjPair{l, m}), coef);
      if (l == m) formula.add_term(ring->index_of(ProjPair{l, m}), k.one());
    }
  if (formula != one) log.fail("1_Pr = sum P_ii - (m/|D|) sum P_ij" + tag, to_json(one), to_json(formula));

  const auto iso = rc_iso(k, c, c, identity_matrix(k, params.e()));
  const auto units = unit_matrices(k, params.e());
  log.expect(iso.verify(units), "r -> rC is multiplicative with exact inverse on all E_ij pairs" + tag);
  log.expect(iso.target_twist() == identity_matrix(k, params.e()), "r -> rC lands in the untwisted matrix ring" + tag);

  const auto parts = pr_primitive_decomposition_over_k(c_int, k);
  RingElement<K> total(ring, k);
  bool ok = parts.size() == params.e();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto x = pr_element(ring, k, parts[i]);
    total = add(total, x);
    ok = ok && mult(x, x) == x && rank(k, iso.apply(parts[i])) == 1;
    for (std::size_t j = 0; j < parts.size(); ++j)
      if (j != i) ok = ok && mult(x, pr_element(ring, k, parts[j])).is_zero();
  }
  log.expect(ok && total == one, "eps_i = rows of C^{-1} form a primitive decomposition of 1_Pr" + tag);

  Json dec = Json::array();
  for (const auto& m : parts) dec.push_back(to_json(pr_element(ring, k, m)));
  return Json{{"identity", to_json(one)}, {"primitive_decomposition", dec}, {"pairs_checked", std::to_string(units.size() * units.size())}};
}

Json check_theorem_c(const RingPtr& ring, std::size_t bound, CheckLog& log) {
  const auto res = theorem_c_decomposition(ring);
  log.expect(res.idempotent, "decomposition members are idempotent over Z");
  log.expect(res.orthogonal, "decomposition members are pairwise orthogonal over Z");
  log.expect(res.sums_to_one, "decomposition sums to 1");
  log.expect(res.outside_pr <= 1, "at most one member lies outside Pr");
  log.expect(res.members.size() == ring->params().e(), "decomposition has l = e members");
  for (std::size_t i = 0; i < res.rank_one_corner.size(); ++i)
    log.expect(res.rank_one_corner[i], "eps_" + std::to_string(i + 1) + " has a rank-one corner in T");

  Json members = Json::array();
  for (const auto& m : res.members) members.push_back(to_json(m));
  Json out{{"members", members},
           {"outside_pr", std::to_string(res.outside_pr)},
           {"out_of_scope", Json::array({"primitivity of the residual idempotent",
                                         "r <= l for arbitrary orthogonal families"})}};
  try {
    const auto scan = rational_central_idempotent_scan(ring, bound);
    log.expect(scan.only_zero_and_one, "the only integral central idempotents are 0 and 1");
    Json integral = Json::array();
    for (const auto& x : scan.integral) integral.push_back(to_json(x));
    Json per_block = Json::array();
    for (auto c : scan.per_block) per_block.push_back(std::to_string(c));
    out["scan"] = Json{{"status", "done"},
                       {"primitive_count", std::to_string(scan.primitive_count)},
                       {"per_block", per_block},
                       {"sums_checked", std::to_string(scan.sums_checked)},
                       {"integral", integral}};
  } catch (const Error& err) {
    if (err.code() != ErrorCode::ScanTooLarge) throw;
    log.inconclusive = true;
    out["scan"] = Json{{"status", "skipped"}, {"reason", err.what()}};
  }
  return out;
}

template <class K>
Json theorem_d_for(const RingPtr& ring, const K& k, CheckLog& log) {
  const std::string tag = " over " + k.name();
  Json out;
  try {
    const auto dec = central_decomposition(ring, k);
    Json dims = Json::array(), es = Json::array(), fs = Json::array(), blocks = Json::array();
    for (auto d : dec.dims) dims.push_back(std::to_string(d));
    for (const auto& e : dec.e_list) es.push_back(to_json(e));
    for (const auto& f : dec.f_list) fs.push_back(to_json(f));
    std::size_t total = 0;
    for (auto d : dec.dims) total += d;
    log.expect(total == ring->dim(), "block dimensions sum to dim T" + tag);

    const auto record = [&](const BlockIsoCertificate& cert, unsigned i) {
      const std::string b = "block " + std::to_string(i) + tag;
      log.expect(cert.multiplicative, b + ": isomorphism is multiplicative");
      log.expect(cert.bijective, b + ": isomorphism is bijective");
      log.expect(cert.identity_preserved, b + ": identity is preserved");
      log.expect(cert.unit_inverse, b + ": c_i d_i = 1 in k[Gamma_i]");
      log.expect(cert.group_multiplicative, b + ": k[Gamma_i] -> kT f_i is multiplicative");
      blocks.push_back(Json{{"level", std::to_string(i)},
                            {"dim", std::to_string(cert.dim)},
                            {"multiplicative", bool_str(cert.multiplicative)},
                            {"bijective", bool_str(cert.bijective)}});
    };
    record(block_iso_0(ring, k, dec), 0);
    for (unsigned i = 1; i <= ring->params().n(); ++i) record(block_iso_i(ring, k, i, dec), i);
    out = Json{{"dims", dims}, {"e", es}, {"f", fs}, {"blocks", blocks}};
  } catch (const Error& err) {
    if (err.code() != ErrorCode::Violation) throw;
    log.fail(std::string(err.what()) + tag);
    out = Json{{"aborted", err.what()}};
  }
  return out;
}

Json check_semisimple(const RingPtr& ring, const FieldSpec& field, CheckLog& log) {
  const auto res = semisimplicity_decide(ring, field.characteristic);
  const std::string decision = res.decision == Decision::Semisimple      ? "Yes"
                               : res.decision == Decision::NotSemisimple ? "No"
                                                                          : "Inconclusive";
  const std::string expected = res.expected ? "Yes" : "No";
  if (res.decision == Decision::Inconclusive)
    log.inconclusive = true;
  else if (decision != expected)
    log.fail("semisimple over " + field.name() + " iff |Aut(D)| invertible", decision, expected);
  Json witness = Json::array();
  for (const auto& w : res.witness) witness.push_back(w);
  return Json{{"decision", decision},
              {"expected", expected},
              {"method", res.method},
              {"dim", std::to_string(res.dim)},
              {"gram_rank", std::to_string(res.gram_rank)},
              {"witness", witness},
              {"nilpotency_index", std::to_string(res.nilpotency_index)}};
}

}  // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> checks{"oracle",    "assoc",     "theorem-a", "theorem-b",
                                               "theorem-c", "theorem-d", "semisimple"};
  return checks;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<FieldSpec> parse_fields(const std::string& text) {
  std::vector<FieldSpec> out;
  for (const auto& item : split_list(text)) out.push_back(FieldSpec::parse(item));
  if (out.empty()) throw Error(ErrorCode::BadInput, "empty field list");
  return out;
}

CommandOutput cmd_basis(std::uint32_t p, std::uint32_t n, std::uint32_t e) {
  try {
    const auto params = make_params(p, n, e);
    Json r = base_report("basis", p, n, e);
    Json list = Json::array();
    for (const auto& b : basis(params)) list.push_back(to_json(b));
    r["status"] = "ok";
    r["payload"] = Json{{"count", std::to_string(list.size())}, {"basis", list}};
    return CommandOutput{render(r), kExitOk};
  } catch (const Error& err) {
    if (!is_usage_code(err.code())) throw;
    return usage_error("basis", p, n, e, err);
  }
}

CommandOutput cmd_table(std::uint32_t p, std::uint32_t n, std::uint32_t e, const std::string& format) {
  try {
    if (format != "json" && format != "csv") throw Error(ErrorCode::BadInput, "format must be json or csv");
    const auto params = make_params(p, n, e);
    const auto b = basis(params);
    if (format == "csv") {
      std::string out = "a,b,product\n";
      for (const auto& x : b)
        for (const auto& y : b) {
          std::string prod;
          for (const auto& [be, c] : mult_basis(params, x, y)) {
            if (!prod.empty()) prod += ";";
            prod += std::to_string(c) + " " + csv_label(be);
          }
          out += csv_label(x) + "," + csv_label(y) + "," + prod + "\n";
        }
      return CommandOutput{out, kExitOk};
    }
    Json rows = Json::array();
    for (const auto& x : b)
      for (const auto& y : b)
        rows.push_back(Json{{"a", to_json(x)}, {"b", to_json(y)}, {"product", to_json(mult_basis(params, x, y))}});
    Json r = base_report("table", p, n, e);
    r["status"] = "ok";
    r["payload"] = Json{{"rows", rows}, {"row_count", std::to_string(rows.size())}};
    return CommandOutput{render(r), kExitOk};
  } catch (const Error& err) {
    if (!is_usage_code(err.code())) throw;
    return usage_error("table", p, n, e, err);
  }
}

CommandOutput cmd_verify(std::uint32_t p, std::uint32_t n, std::uint32_t e, const VerifyOptions& options) {
  RingPtr ring;
  std::vector<std::string> which = options.which.empty() ? known_checks() : options.which;
  try {
    for (const auto& w : which)
      if (std::find(known_checks().begin(), known_checks().end(), w) == known_checks().end())
        throw Error(ErrorCode::BadInput, "unknown check '" + w + "'");
    if (options.fields.empty()) throw Error(ErrorCode::BadInput, "empty field list");
    ring = make_ring(make_params(p, n, e));
  } catch (const Error& err) {
    if (!is_usage_code(err.code())) throw;
    return usage_error("verify", p, n, e, err);
  }
  std::sort(which.begin(), which.end());
  which.erase(std::unique(which.begin(), which.end()), which.end());

  Json checks = Json::object();
  Json timing = Json::object();
  bool any_violation = false, any_inconclusive = false;
  for (const auto& w : which) {
    const auto start = std::chrono::steady_clock::now();
    CheckLog log;
    Json payload;
    if (w == "oracle") {
      payload = check_oracle(ring, log);
    } else if (w == "assoc") {
      payload = check_ring_axioms(ring, log);
    } else if (w == "theorem-a") {
      payload = check_theorem_a(ring, log);
    } else if (w == "theorem-c") {
      payload = check_theorem_c(ring, options.scan_bound, log);
    } else {
      Json per_field = Json::object();
      for (const auto& field : options.fields) {
        const bool char_p = field.characteristic == p;
        if (w == "semisimple") {
          per_field[field.name()] = check_semisimple(ring, field, log);
        } else if (char_p) {
          per_field[field.name()] = Json{{"status", "skipped"}, {"reason", "characteristic equals p"}};
        } else {
          with_field(field, [&](const auto& k) {
            per_field[field.name()] = w == "theorem-b" ? theorem_b_for(ring, k, log) : theorem_d_for(ring, k, log);
          });
        }
      }
      payload = Json{{"fields", per_field}};
      if (w == "semisimple") {
        Json decisions = Json::array();
        for (const auto& field : options.fields) decisions.push_back(per_field[field.name()]["decision"]);
        payload["decisions"] = decisions;
      }
    }
    log.finish(payload);
    any_violation = any_violation || log.violation_count > 0;
    any_inconclusive = any_inconclusive || log.inconclusive;
    checks[w] = std::move(payload);
    if (options.timing) {
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", secs);
      timing[w] = buf;
    }
  }

  Json r = base_report("verify", p, n, e);
  r["status"] = any_violation ? "violation" : any_inconclusive ? "inconclusive" : "ok";
  Json fields = Json::array();
  for (const auto& f : options.fields) fields.push_back(f.name());
  r["payload"] = Json{{"checks", checks}, {"fields", fields}, {"scan_bound", std::to_string(options.scan_bound)}};
  if (options.timing) r["timing"] = timing;
  return CommandOutput{render(r), any_violation ? kExitViolation : any_inconclusive ? kExitInconclusive : kExitOk};
}

}  // namespace tsring
