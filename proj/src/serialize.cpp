#include "tsring/serialize.hpp"

#include <sstream>

namespace tsring {

namespace {

std::uint64_t parse_uint(const std::string& s) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadInput, "not an unsigned integer: '" + s + "'");
  }
  if (pos != s.size() || s.empty() || s[0] == '-') throw Error(ErrorCode::BadInput, "not an unsigned integer: '" + s + "'");
  return v;
}

std::uint64_t field_uint(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) throw Error(ErrorCode::BadInput, std::string("missing field ") + key);
  return parse_uint(j[key].get<std::string>());
}

}  // namespace

Json to_json(const BasisElement& b) {
  if (const auto* pp = std::get_if<ProjPair>(&b))
    return Json{{"type", "P"}, {"lambda", std::to_string(pp->lambda)}, {"mu", std::to_string(pp->mu)}};
  const auto& np = std::get<NonProj>(b);
  return Json{{"type", "M"},
              {"i", std::to_string(np.level)},
              {"alpha", std::to_string(np.alpha)},
              {"lambda", std::to_string(np.lambda)}};
}

BasisElement basis_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type")) throw Error(ErrorCode::BadInput, "basis element must be an object");
  const auto type = j["type"].get<std::string>();
  if (type == "P")
    return ProjPair{static_cast<Character>(field_uint(j, "lambda")), static_cast<Character>(field_uint(j, "mu"))};
  if (type == "M")
    return NonProj{static_cast<unsigned>(field_uint(j, "i")), field_uint(j, "alpha"),
                   static_cast<Character>(field_uint(j, "lambda"))};
  throw Error(ErrorCode::BadInput, "unknown basis type '" + type + "'");
}

Json to_json(const BasisCombination& terms) {
  Json out = Json::array();
  for (const auto& [b, c] : terms) out.push_back(Json{{"basis", to_json(b)}, {"coeff", std::to_string(c)}});
  return out;
}

Json to_json(const IntMatrix& m) { return to_json(IntegerRing{}, m); }

std::string csv_label(const BasisElement& b) {
  if (const auto* pp = std::get_if<ProjPair>(&b))
    return "P:" + std::to_string(pp->lambda) + ":" + std::to_string(pp->mu);
  const auto& np = std::get<NonProj>(b);
  return "M:" + std::to_string(np.level) + ":" + std::to_string(np.alpha) + ":" + std::to_string(np.lambda);
}

BasisElement basis_from_csv_label(const std::string& label) {
  std::vector<std::string> parts;
  std::stringstream ss(label);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() == 3 && parts[0] == "P")
    return ProjPair{static_cast<Character>(parse_uint(parts[1])), static_cast<Character>(parse_uint(parts[2]))};
  if (parts.size() == 4 && parts[0] == "M")
    return NonProj{static_cast<unsigned>(parse_uint(parts[1])), parse_uint(parts[2]),
                   static_cast<Character>(parse_uint(parts[3]))};
  throw Error(ErrorCode::BadInput, "bad basis label '" + label + "'");
}

}  // namespace tsring
