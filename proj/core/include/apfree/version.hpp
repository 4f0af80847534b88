#pragma once

namespace apfree {

inline constexpr const char* kVersion = "0.1.0";

// Serialization contract: degree-d monomials are ordered by descending
// lexicographic exponent vector. Every file format and report embeds this
// tag; bump it if the coordinate convention ever changes.
inline constexpr const char* kMonomialOrderTag = "deglex-desc-1";

}  // namespace apfree
