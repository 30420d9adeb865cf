#pragma once

#include <string_view>

#include "quadrica/poly.hpp"

namespace quadrica {

/// Parses a polynomial over `vars`.
///
/// Grammar:
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor (('*' factor) | ('/' nat))*
///   factor := base ('^' nat)?
///   base   := nat | var | '(' expr ')'
///
/// Division is only allowed by a positive integer literal so that rational
/// coefficients written by `Poly::to_string` parse back. Whitespace is
/// ignored. Throws ParseError with the offending offset.
Poly parse_poly(std::string_view text, const VarList& vars);

}  // namespace quadrica
