#pragma once

// Recursive-descent parser for the expression DSL:
//
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*     division only by nonzero constants
//   factor := atom ("^" integer)?
//   atom   := number | coord | func "(" expr ")" | "(" expr ")" | "-" atom
//   coord  := "x" positive-integer
//   func   := "sin" | "cos" | "exp"
//
// Whitespace insensitive. Errors are reported as ParseError with a
// 1-based line:column position.

#include <string_view>

#include "hadafact/errors.hpp"
#include "hadafact/expr.hpp"

namespace hadafact {

SmoothExpr parse(std::string_view text);

}  // namespace hadafact
