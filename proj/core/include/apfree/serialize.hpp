#pragma once

#include <string>

#include "apfree/tensor.hpp"

namespace apfree {

/// Flat JSON form {"p":..,"n":..,"d":..,"coeffs":[row-major residues]}.
/// Round-trips bit-exactly; parsing rejects out-of-range residues.
std::string tensor_to_json(const Tensor& t);
Tensor tensor_from_json(const std::string& text);

}  // namespace apfree
