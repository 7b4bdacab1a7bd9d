#pragma once

#include <string>
#include <vector>

#include "defunq/ast.hpp"

namespace defunq {

/// Variables free in e, sorted lexicographically by name.
/// Binders: let, for, function parameters, case-branch vars, typeswitch
/// case/default vars. The context item is not a variable.
std::vector<Name> free_vars(const ExprPtr& e);

struct FoViolation {
  std::string path;  // human-readable node path
  std::string kind;  // "function literal" | "named function reference" | "dynamic call"
};

/// Empty iff p contains no FunctionLiteral, NamedFunRef, or DynamicCall.
std::vector<FoViolation> check_first_order(const Program& p);

struct Diagnostic {
  std::string message;
};

enum class ValidateMode {
  Structural,    // unbound vars, duplicate decls, call arity
  SourceStrict,  // Structural plus reserved-name checks for source input
};

std::vector<Diagnostic> validate(const Program& p,
                                 ValidateMode mode = ValidateMode::Structural);

// --- shared rewrite utilities ----------------------------------------------

/// A name based on `base` that is not in `avoid`; `base` itself if free.
Name fresh_name(const Name& base, const std::vector<Name>& avoid);

/// Capture-avoiding substitution of variables by expressions.
ExprPtr substitute(const ExprPtr& e, const std::vector<std::pair<Name, ExprPtr>>& subst);

/// Capture-avoiding single-variable rename.
ExprPtr rename_var(const ExprPtr& e, const Name& from, const Name& to);

}  // namespace defunq
