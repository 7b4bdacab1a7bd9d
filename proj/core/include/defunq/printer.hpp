#pragma once

#include <string>

#include "defunq/ast.hpp"

namespace defunq {

/// Renders a program back to concrete syntax. parse(print_program(p))
/// is structurally equal to p.
std::string print_program(const Program& p);

std::string print_expr(const ExprPtr& e);

}  // namespace defunq
