#pragma once

#include <optional>
#include <string>

#include "defunq/ast.hpp"

namespace defunq {

struct BuiltinSig {
  int min_arity = 0;
  int max_arity = 0;  // -1 for variadic
};

/// Signature of a builtin, or nullopt if `name` is not a builtin.
/// Covers the callable builtins plus the infix operator spellings.
std::optional<BuiltinSig> builtin_signature(const Name& name);

inline bool is_builtin(const Name& name) { return builtin_signature(name).has_value(); }

bool builtin_accepts_arity(const Name& name, int arity);

/// True for `+ - * mod = !=`, which print infix.
bool is_infix_builtin(const Name& name);

}  // namespace defunq
