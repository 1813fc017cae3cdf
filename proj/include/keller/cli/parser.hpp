#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "keller/poly.hpp"

namespace keller::cli {

/// Names the parser accepts, each bound to a variable index.
class VariableSet {
 public:
  /// x1..xn, plus x and y for x1 and x2 when n <= 2.
  static VariableSet standard(std::size_t n);
  /// Exactly the given names, in order.
  static VariableSet named(std::vector<std::string> names);

  std::size_t dim() const noexcept { return dim_; }
  /// -1 when the name is not a variable.
  long index_of(std::string_view name) const;

 private:
  std::size_t dim_ = 0;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Parses an arithmetic expression over the rationals:
///   expr    := expr ('+' | '-') expr | expr ('*' | '/') expr
///            | '-' expr | expr '^' expr | '(' expr ')' | number | name
/// with the usual precedence, '^' binding tighter than unary minus and
/// associating to the right. Division is only by a nonzero constant and an
/// exponent must be a constant integer in [0, 64]. Errors throw ParseError
/// carrying the 0-based column.
Poly parse_poly(std::string_view text, const VariableSet& vars);
Poly parse_poly(std::string_view text, std::size_t n);

}  // namespace keller::cli
