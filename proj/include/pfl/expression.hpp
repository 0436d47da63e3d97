#pragma once

#include <functional>
#include <string_view>

namespace pfl {

/// Compiles a real function of one variable `x` from a small infix grammar:
///
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*
///   unary  := ('+' | '-') unary | power
///   power  := atom ('^' unary)?
///   atom   := number | 'x' | 'pi' | func '(' expr ')' | '(' expr ')'
///   func   := sin | cos | tan | exp | log | sqrt | abs | tanh
///
/// '^' is right-associative. Throws ParameterError with the offending
/// position on malformed input.
std::function<double(double)> parse_expression(std::string_view text);

}  // namespace pfl
