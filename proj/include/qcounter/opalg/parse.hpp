#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qcounter/opalg/expr.hpp"

namespace qcounter::opalg {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses an operator expression:
///
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := power (['*'|'/'] power)*        juxtaposition multiplies
///   power  := factor ['^' integer]
///   factor := number | 'i' | '(' expr ')' | op | call | symbol
///   op     := family ['dag'] ['(' var ')']    family in {a,b,v,v1,v2,d1,d2}
///   call   := 'delta(' var ',' var ')' | 'Phi(' var ',' var ')'
///           | 'Phic(' var ',' var ')' | 'int(' var {',' var} ')'
///
/// Numeric literals (including decimals and exponents) are exact rationals.
/// Positions in errors are 0-based byte offsets.
Expr parse_expr(std::string_view text);

}  // namespace qcounter::opalg
