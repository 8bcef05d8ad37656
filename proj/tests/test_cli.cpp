#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <sstream>

#include "tsring/report.hpp"
#include "tsring/serialize.hpp"

using namespace tsring;

namespace {

using Product = std::map<BasisElement, std::int64_t>;

Product to_product(const BasisCombination& c) {
  Product out;
  for (const auto& [b, v] : c) out[b] += v;
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, sep);) out.push_back(part);
  return out;
}

}  // namespace

TEST_CASE("list parsing") {
  CHECK(split_list("oracle,assoc") == std::vector<std::string>{"oracle", "assoc"});
  CHECK(split_list("") .empty());
  const auto fields = parse_fields("Q,F2,F7");
  REQUIRE(fields.size() == 3);
  CHECK(fields[0].characteristic == 0);
  CHECK(fields[2].characteristic == 7);
  CHECK_THROWS_AS(parse_fields("Q,F4"), Error);
}

TEST_CASE("basis labels round trip") {
  for (const auto& b : basis(make_params(7, 2, 3))) {
    CHECK(basis_from_json(to_json(b)) == b);
    CHECK(basis_from_csv_label(csv_label(b)) == b);
  }
  CHECK(csv_label(NonProj{2, 4, 0}) == "M:2:4:0");
  CHECK(to_json(ProjPair{0, 1}).dump() == R"({"lambda":"0","mu":"1","type":"P"})");
  CHECK_THROWS_AS(basis_from_csv_label("Q:1:2"), Error);
  CHECK_THROWS_AS(basis_from_csv_label("P:1:-2"), Error);
  CHECK_THROWS_AS(basis_from_json(Json{{"type", "M"}, {"i", 1}}), Error);
}

TEST_CASE("scalar formatting in reports") {
  const auto ring = make_ring(make_params(3, 1, 1));
  RingElement<RationalField> x(ring, RationalField{});
  x.add_term(0, Rational(1, 3));
  x.add_term(1, Rational(2));
  const auto j = to_json(x);
  CHECK(j[0]["coeff"] == "1/3");
  CHECK(j[1]["coeff"] == "2/1");
  CHECK(to_json(int_matrix({{5, 4}, {4, 5}})).dump() == R"([["5","4"],["4","5"]])");
}

TEST_CASE("basis command") {
  const auto out = cmd_basis(3, 2, 2);
  CHECK(out.exit_code == kExitOk);
  const auto j = Json::parse(out.text);
  CHECK(j["schema"] == "tsring/1");
  CHECK(j["status"] == "ok");
  CHECK(j["payload"]["count"] == "12");
  std::vector<BasisElement> parsed;
  for (const auto& b : j["payload"]["basis"]) parsed.push_back(basis_from_json(b));
  CHECK(parsed == basis(make_params(3, 2, 2)));

  const auto bad = cmd_basis(4, 1, 1);
  CHECK(bad.exit_code == kExitUsage);
  const auto jb = Json::parse(bad.text);
  CHECK(jb["status"] == "error");
  CHECK(jb["error"]["code"] == "NotPrime");
  CHECK(cmd_basis(3, 2, 4).exit_code == kExitUsage);
  CHECK(cmd_basis(2, 2, 2).exit_code == kExitUsage);
}

TEST_CASE("JSON and CSV tables agree with each other and with the ring") {
  for (const auto& [p, n, e] : std::vector<std::array<std::uint32_t, 3>>{{3, 1, 1}, {3, 2, 2}, {5, 1, 4}}) {
    const auto pr = make_params(p, n, e);
    const auto json_out = cmd_table(p, n, e, "json");
    const auto csv_out = cmd_table(p, n, e, "csv");
    REQUIRE(json_out.exit_code == kExitOk);
    REQUIRE(csv_out.exit_code == kExitOk);

    std::map<std::pair<BasisElement, BasisElement>, Product> from_json, from_csv;
    const auto table = Json::parse(json_out.text);
    for (const auto& row : table["payload"]["rows"]) {
      Product prod;
      for (const auto& t : row["product"]) prod[basis_from_json(t["basis"])] += std::stoll(t["coeff"].get<std::string>());
      from_json[{basis_from_json(row["a"]), basis_from_json(row["b"])}] = prod;
    }
    const auto lines = split(csv_out.text, '\n');
    REQUIRE(!lines.empty());
    CHECK(lines[0] == "a,b,product");
    for (std::size_t i = 1; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      const auto cells = split(lines[i], ',');
      REQUIRE(cells.size() == 3);
      Product prod;
      for (const auto& term : split(cells[2], ';')) {
        const auto parts = split(term, ' ');
        REQUIRE(parts.size() == 2);
        prod[basis_from_csv_label(parts[1])] += std::stoll(parts[0]);
      }
      from_csv[{basis_from_csv_label(cells[0]), basis_from_csv_label(cells[1])}] = prod;
    }
    const auto bs = basis(pr);
    CHECK(from_json.size() == bs.size() * bs.size());
    CHECK(from_json == from_csv);
    for (const auto& a : bs)
      for (const auto& b : bs) CHECK(from_json[{a, b}] == to_product(mult_basis(pr, a, b)));
  }
  CHECK(cmd_table(3, 1, 1, "xml").exit_code == kExitUsage);
}

TEST_CASE("verify reports") {
  VerifyOptions opts;
  opts.fields = parse_fields("Q,F2,F5,F7");
  const auto out = cmd_verify(3, 2, 2, opts);
  CHECK(out.exit_code == kExitOk);
  const auto j = Json::parse(out.text);
  CHECK(j["status"] == "ok");
  for (const auto& name : known_checks()) {
    CAPTURE(name);
    REQUIRE(j["payload"]["checks"].contains(name));
    CHECK(j["payload"]["checks"][name]["status"] == "ok");
    CHECK(j["payload"]["checks"][name]["violation_count"] == "0");
  }
  CHECK(j["payload"]["checks"]["semisimple"]["fields"]["F2"]["decision"] == "No");
  CHECK(j["payload"]["checks"]["semisimple"]["fields"]["F5"]["decision"] == "Yes");
  CHECK_FALSE(j.contains("timing"));
  CHECK(out.text.find("elapsed") == std::string::npos);
}

TEST_CASE("verify selects checks and rejects unknown ones") {
  VerifyOptions opts;
  opts.which = {"oracle", "assoc"};
  const auto j = Json::parse(cmd_verify(3, 1, 1, opts).text);
  CHECK(j["payload"]["checks"].size() == 2);

  opts.which = {"no-such-check"};
  CHECK(cmd_verify(3, 1, 1, opts).exit_code == kExitUsage);
}

TEST_CASE("scan bound exceeded is inconclusive") {
  VerifyOptions opts;
  opts.which = {"theorem-c"};
  opts.scan_bound = 2;
  const auto out = cmd_verify(3, 2, 2, opts);
  CHECK(out.exit_code == kExitInconclusive);
  CHECK(Json::parse(out.text)["status"] == "inconclusive");
}

TEST_CASE("characteristic p skips the char-free theorems") {
  VerifyOptions opts;
  opts.which = {"theorem-b", "theorem-d"};
  opts.fields = parse_fields("F3,Q");
  const auto out = cmd_verify(3, 2, 2, opts);
  CHECK(out.exit_code == kExitOk);
  const auto j = Json::parse(out.text);
  CHECK(j["payload"]["checks"]["theorem-d"]["fields"]["F3"]["status"] == "skipped");
  CHECK(j["payload"]["checks"]["theorem-b"]["fields"]["F3"]["status"] == "skipped");
}

TEST_CASE("verify is deterministic") {
  VerifyOptions opts;
  opts.fields = parse_fields("Q,F2,F7");
  const auto a = cmd_verify(5, 2, 4, opts);
  const auto b = cmd_verify(5, 2, 4, opts);
  CHECK(a.text == b.text);
  CHECK(a.exit_code == b.exit_code);
}
