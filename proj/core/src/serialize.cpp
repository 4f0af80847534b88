#include "apfree/serialize.hpp"

#include <stdexcept>

#include <json.hpp>

namespace apfree {

std::string tensor_to_json(const Tensor& t) {
  nlohmann::ordered_json j;
  j["p"] = t.modulus();
  j["n"] = t.side();
  j["d"] = t.order();
  j["coeffs"] = std::vector<std::uint32_t>(t.coeffs().begin(), t.coeffs().end());
  return j.dump();
}

Tensor tensor_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const std::uint32_t p = j.at("p").get<std::uint32_t>();
  const std::uint32_t n = j.at("n").get<std::uint32_t>();
  const std::uint32_t d = j.at("d").get<std::uint32_t>();
  const auto coeffs = j.at("coeffs").get<std::vector<std::int64_t>>();

  Tensor t(p, n, d);
  if (coeffs.size() != t.size()) {
    throw std::invalid_argument("tensor_from_json: coefficient count mismatch");
  }
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] < 0 || coeffs[i] >= static_cast<std::int64_t>(p)) {
      throw std::invalid_argument("tensor_from_json: residue out of range");
    }
    t.set_flat(i, static_cast<std::uint32_t>(coeffs[i]));
  }
  return t;
}

}  // namespace apfree
