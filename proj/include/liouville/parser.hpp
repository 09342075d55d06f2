#pragma once

#include <set>
#include <stdexcept>
#include <string>

#include "liouville/expr.hpp"

namespace liouville {

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(std::size_t pos, const std::string& msg)
        : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + msg),
          position(pos) {}
};

// Infix grammar: + - * / with the usual precedence, ^ for integer powers
// (right-assoc, exponent an optionally parenthesized integer), unary minus,
// exp/log/sin/cos/sqrt calls, integer/decimal/rational literals, the literal
// i, and names drawn from `known_names`. Anything else raises ParseError.
Expr parse_expression(const std::string& text, const std::set<std::string>& known_names);

} // namespace liouville
