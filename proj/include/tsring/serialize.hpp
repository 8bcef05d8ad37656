#pragma once

// JSON forms of basis elements, ring elements and matrices. Integers are
// written as decimal strings, rationals as "num/den", residues as decimal strings.

#include <string>
#include <vector>

#include <json.hpp>

#include "tsring/tring.hpp"

namespace tsring {

using Json = nlohmann::json;

Json to_json(const BasisElement& b);
BasisElement basis_from_json(const Json& j);

Json to_json(const BasisCombination& terms);

template <class K>
Json to_json(const RingElement<K>& x) {
  Json out = Json::array();
  for (const auto& [idx, v] : x.coeffs())
    out.push_back(Json{{"basis", to_json(x.tring().element(idx))}, {"coeff", x.scalars().format(v)}});
  return out;
}

template <class K>
Json to_json(const K& k, const Matrix<typename K::value_type>& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(k.format(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const IntMatrix& m);

// Compact label without commas, e.g. P:0:1 or M:2:4:0 (used by the CSV table).
std::string csv_label(const BasisElement& b);
BasisElement basis_from_csv_label(const std::string& label);

}  // namespace tsring
