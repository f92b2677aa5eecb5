#ifndef CFORGE_SPEC_DSL_HPP
#define CFORGE_SPEC_DSL_HPP

#include <string>
#include <string_view>

#include <cforge/product_spec.hpp>

namespace cforge
{

// Text form of a ProductSpec: '*'-separated factors
//
//   eta(d)^e   theta(a)^e   poch(m,d;a)^e   q^(num/den)   zeta^(num/den)   1
//
// "^e" is optional on eta/theta/poch (default 1); q and zeta exponents may be
// written bare when integral ("q^-1"). Repeated q/zeta prefactors add up.
//
// Throws ParseError (byte offset + expected tokens) on malformed text and
// SemanticError when a factor vanishes identically.
[[nodiscard]] ProductSpec parse_spec(std::string_view text);

// Canonical text: q and zeta prefactors first (omitted when zero), then the
// named factors, then the Pochhammer factors, each with an explicit exponent.
// The empty product prints as "1". parse_spec(format_spec(s)) == s.
[[nodiscard]] std::string format_spec(const ProductSpec &spec);

} // namespace cforge

#endif
