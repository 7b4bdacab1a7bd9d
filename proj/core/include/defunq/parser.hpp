#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "defunq/ast.hpp"

namespace defunq {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::string message)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses a whole program: `declare function ...;` prolog followed by the
/// main expression. Accepts `--` line comments and nestable `(: ... :)`
/// block comments.
Program parse(std::string_view text);

/// Parses a single expression (test convenience).
ExprPtr parse_expr(std::string_view text);

bool is_valid_name(std::string_view s);

/// Parses an `ell_<k>` rendering back into a label, if it is one.
std::optional<Label> parse_label(std::string_view s);

}  // namespace defunq
