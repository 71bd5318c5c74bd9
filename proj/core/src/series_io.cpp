#include <nlohmann/json.hpp>

#include "tfp/laws.hpp"

namespace tfp {

std::string series_to_json(const Series<Rational>& s) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : s.coeffs()) j.push_back(to_string(c));
  return j.dump();
}

Series<Rational> series_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("series: ") + e.what());
  }
  if (j.is_object() && j.contains("moments")) j = j["moments"];
  if (!j.is_array() || j.empty()) throw IoError("series: expected a non-empty JSON array");
  std::vector<Rational> c;
  for (const auto& v : j) {
    if (v.is_string()) c.push_back(parse_rational(v.get<std::string>()));
    else if (v.is_number_integer()) c.emplace_back(v.get<long>());
    else throw IoError("series: entries must be \"num/den\" strings or integers");
  }
  return Series<Rational>(std::move(c));
}

}  // namespace tfp
