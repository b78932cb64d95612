#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "acm/expr.hpp"

namespace acm::sym {

/// Syntax or name-resolution failure; `position` is a 0-based byte offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses `source` against the expression grammar. Identifiers resolve to the
/// coordinate with the same name; coordinate i becomes variable index i.
///
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := base ("^" base)? | "-" factor
///   base   := NUMBER | IDENT | "(" expr ")" | FUNC "(" expr ")"
Expr parse_expr(std::string_view source, const std::vector<std::string>& coords);

}  // namespace acm::sym
